#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "chartab.hpp"
#include "fusion.hpp"
#include "report.hpp"

namespace equifuse
{

using Json = nlohmann::ordered_json;

/// Orbit representatives are written as image tuples of elements of g.
inline Json to_json(const FusionRing &ring, const Group &g)
{
  Json j;
  j["labels"] = Json::array();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto &l = ring.labels[i];
    Json lj;
    lj["id"] = i;
    lj["orbit_rep"] = g.element(l.orbit_rep).images();
    lj["orbit_size"] = l.orbit_size;
    lj["stabilizer_order"] = l.stabilizer.order();
    lj["char_degree"] = l.degree;
    lj["dim"] = l.dim();
    j["labels"].push_back(std::move(lj));
  }
  j["unit"] = ring.unit;
  j["constants"] = Json::array();
  for (const auto &[ij, terms] : ring.constants)
    for (const auto &t : terms)
      j["constants"].push_back(Json::array({ij.first, ij.second, t.k, t.n}));
  j["checks"] = {{"associative", ring.checks.associative},
                 {"dim_hom", ring.checks.dim_hom},
                 {"matches_M_form", ring.checks.matches_M_form}};
  return j;
}

inline std::string to_csv(const FusionRing &ring)
{
  std::ostringstream out;
  out << "i,j,k,N\n";
  for (const auto &[ij, terms] : ring.constants)
    for (const auto &t : terms)
      out << ij.first << ',' << ij.second << ',' << t.k << ',' << t.n << '\n';
  return out.str();
}

inline Json to_json(const CharacterTable &table, const ModularContext &ctx)
{
  const auto &cd = *table.classes;
  const Group &g = *table.group().parent();
  Json j;
  j["order"] = table.group().order();
  j["classes"] = Json::array();
  for (std::size_t c = 0; c < cd.size(); ++c)
    j["classes"].push_back({{"rep", g.element(cd.rep(c)).images()}, {"size", cd.class_size(c)}});
  j["prime"] = ctx.prime();
  j["degrees"] = table.degrees;
  j["rows_mod_p"] = Json::array();
  for (const auto &row : table.rows)
    j["rows_mod_p"].push_back(row.values);
  return j;
}

inline Json to_json(const AxiomReport &report)
{
  Json j;
  j["axioms"] = Json::array();
  for (const auto &t : report.tallies())
    j["axioms"].push_back({{"id", t.id}, {"checked", t.checked}, {"failed", t.failed}});
  j["witnesses"] = Json::array();
  for (const auto &w : report.witnesses())
    j["witnesses"].push_back(
        {{"axiom", w.axiom}, {"subgroups", w.subgroups}, {"input", w.witness}, {"lhs", w.lhs}, {"rhs", w.rhs}});
  return j;
}

} // namespace equifuse
