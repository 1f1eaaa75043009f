#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chartab.hpp"
#include "error.hpp"
#include "fusion.hpp"
#include "io.hpp"
#include "mackey.hpp"
#include "presets.hpp"

namespace equifuse::cli
{

enum ExitCode : int
{
  Ok = 0,
  CheckFailed = 1,
  BadInput = 2,
};

inline int exit_code_for(ErrorCode c)
{
  switch (c) {
  case ErrorCode::EigenbasisFailure:
  case ErrorCode::InvariantViolation:
  case ErrorCode::InternalError:
    return CheckFailed;
  default:
    return BadInput;
  }
}

/// Subgroup of g from generators in cycle notation separated by ';'.
inline Subgroup parse_subgroup(const GroupPtr &g, const std::string &text)
{
  std::vector<Elem> gens;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string::npos)
      end = text.size();
    auto piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) {
      auto e = g->index_of(Perm::from_cycles(piece, g->degree()));
      if (!e)
        throw Error(ErrorCode::ElementNotInGroup, "'" + piece + "' is not an element of the group");
      gens.push_back(*e);
    }
    start = end + 1;
  }
  return Subgroup::generated(g, gens);
}

/// Splits "a:b:c" into tokens and takes one group spec off the front.
inline std::string take_group_spec(std::vector<std::string> &tokens)
{
  if (tokens.empty())
    throw Error(ErrorCode::InvalidInput, "missing group spec");
  static const std::vector<std::string> binary = {"sym", "alt", "cyclic", "dihedral"};
  std::string head = tokens.front();
  tokens.erase(tokens.begin());
  if (std::find(binary.begin(), binary.end(), head) != binary.end()) {
    if (tokens.empty())
      throw Error(ErrorCode::UnknownPreset, "preset '" + head + "' needs a size");
    head += ":" + tokens.front();
    tokens.erase(tokens.begin());
  }
  return head;
}

inline std::vector<std::string> split(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos)
      return out;
    start = end + 1;
  }
}

inline GroupAction parse_action(const GroupPtr &f, const GroupPtr &g, const std::string &spec, Caps caps)
{
  if (spec == "conjugation") {
    if (f->elements() != g->elements())
      throw Error(ErrorCode::InvalidInput, "conjugation action needs F = G");
    return GroupAction::conjugation(f);
  }
  if (spec == "trivial")
    return GroupAction::trivial(f, g);
  auto a = action_from_json(read_json_file(spec), caps);
  if (a.actor()->elements() != f->elements() || a.target()->elements() != g->elements())
    throw Error(ErrorCode::InvalidInput, "action file groups differ from the given F and G");
  return a;
}

struct Options
{
  std::optional<std::uint64_t> prime;
  unsigned jobs = 1;
  Caps caps;
};

inline ModularContext context_for(const Options &o, std::vector<GroupPtr> groups)
{
  if (o.prime)
    return ModularContext::with_prime(*o.prime, groups);
  return ModularContext::for_groups(groups);
}

inline std::shared_ptr<FusionEngine> make_engine(const GroupAction &a, const Options &o)
{
  auto ctx = context_for(o, {a.actor(), a.target()});
  return std::make_shared<FusionEngine>(CoherentDatum(a), ctx);
}

/// char:<group> | equiv:<F>:<G>:<action> | double:<group>
inline MackeyFamily parse_family(const std::string &spec, const Options &o)
{
  auto tokens = split(spec, ':');
  auto kind = tokens.front();
  tokens.erase(tokens.begin());
  if (kind == "char") {
    auto g = parse_group_spec(take_group_spec(tokens), o.caps);
    if (!tokens.empty())
      throw Error(ErrorCode::InvalidInput, "trailing text in family '" + spec + "'");
    return char_ring_family(g, context_for(o, {g}), o.caps);
  }
  if (kind == "double") {
    auto g = parse_group_spec(take_group_spec(tokens), o.caps);
    if (!tokens.empty())
      throw Error(ErrorCode::InvalidInput, "trailing text in family '" + spec + "'");
    return equivariant_k0_family(make_engine(GroupAction::conjugation(g), o), o.caps);
  }
  if (kind == "equiv") {
    auto f = parse_group_spec(take_group_spec(tokens), o.caps);
    auto g = parse_group_spec(take_group_spec(tokens), o.caps);
    if (tokens.size() != 1)
      throw Error(ErrorCode::InvalidInput, "family '" + spec + "' needs exactly one action");
    return equivariant_k0_family(make_engine(parse_action(f, g, tokens.front(), o.caps), o), o.caps);
  }
  throw Error(ErrorCode::InvalidInput, "unknown family kind '" + kind + "'");
}

/// The engine behind an equiv:/double: family spec (for coherent checks).
inline std::shared_ptr<FusionEngine> parse_engine(const std::string &spec, const Options &o)
{
  auto tokens = split(spec, ':');
  auto kind = tokens.front();
  tokens.erase(tokens.begin());
  if (kind == "double") {
    auto g = parse_group_spec(take_group_spec(tokens), o.caps);
    if (!tokens.empty())
      throw Error(ErrorCode::InvalidInput, "trailing text in family '" + spec + "'");
    return make_engine(GroupAction::conjugation(g), o);
  }
  if (kind == "equiv") {
    auto f = parse_group_spec(take_group_spec(tokens), o.caps);
    auto g = parse_group_spec(take_group_spec(tokens), o.caps);
    if (tokens.size() != 1)
      throw Error(ErrorCode::InvalidInput, "family '" + spec + "' needs exactly one action");
    return make_engine(parse_action(f, g, tokens.front(), o.caps), o);
  }
  throw Error(ErrorCode::InvalidInput, "coherent checks need an equiv: or double: family");
}

inline void emit(const std::string &path, const std::string &text, std::ostream &out)
{
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  f << text;
}

inline std::string render(const FusionRing &ring, const Group &g, const std::string &format)
{
  if (format == "csv")
    return to_csv(ring);
  return to_json(ring, g).dump(2) + "\n";
}

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Exact K0 computations for group actions on graded categories", "equifuse"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  std::uint64_t prime = 0;
  std::string table_path = "-", format = "json", subgroup_text;
  app.add_option("--prime-override", prime, "Use this prime instead of the automatic choice");
  app.add_option("--jobs", opts.jobs, "Worker threads (does not affect output)")->check(CLI::PositiveNumber);

  auto add_ring_flags = [&](CLI::App *sub) {
    sub->add_option("--table", table_path, "Output path, '-' for stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--subgroup", subgroup_text, "Generators of H in cycle notation, ';'-separated");
  };

  std::string group_spec;
  auto *group_cmd = app.add_subcommand("group", "Describe a permutation group");
  group_cmd->add_option("spec", group_spec, "Preset name or group JSON file")->required();

  auto *chartable_cmd = app.add_subcommand("chartable", "Character table modulo p");
  chartable_cmd->add_option("spec", group_spec, "Preset name or group JSON file")->required();
  chartable_cmd->add_option("--subgroup", subgroup_text, "Generators in cycle notation, ';'-separated");

  auto *double_cmd = app.add_subcommand("double", "Fusion ring of the Drinfeld double D(G)");
  double_cmd->add_option("spec", group_spec, "Preset name or group JSON file")->required();
  add_ring_flags(double_cmd);

  std::string f_spec, g_spec, action_spec;
  auto *fuse_cmd = app.add_subcommand("fuse", "Fusion ring of a general coherent datum");
  fuse_cmd->add_option("--F", f_spec, "Acting group")->required();
  fuse_cmd->add_option("--G", g_spec, "Grading group")->required();
  fuse_cmd->add_option("--action", action_spec, "Action JSON file, 'conjugation' or 'trivial'")->required();
  add_ring_flags(fuse_cmd);

  std::string what, family;
  auto *verify_cmd = app.add_subcommand("verify", "Check Mackey, Green or coherence axioms");
  verify_cmd->add_option("what", what, "mackey, green or coherent")
      ->required()
      ->check(CLI::IsMember({"mackey", "green", "coherent"}));
  verify_cmd->add_option("--family", family, "char:<G>, double:<G> or equiv:<F>:<G>:<action>")->required();
  verify_cmd->add_option("--subgroup", subgroup_text, "H for coherent checks, cycle notation");

  std::string listing;
  auto *scenario_cmd = app.add_subcommand("scenario", "Scenario catalog");
  scenario_cmd->add_option("action", listing, "list")->required()->check(CLI::IsMember({"list"}));

  std::size_t h_index = 0, k_index = 0, basis_index = 0;
  auto *rhs_cmd = app.add_subcommand("mackey-rhs", "Double-coset side of the Mackey formula");
  rhs_cmd->add_option("--family", family, "char:<G>, double:<G> or equiv:<F>:<G>:<action>")->required();
  rhs_cmd->add_option("--H", h_index, "Lattice index of H")->required();
  rhs_cmd->add_option("--K", k_index, "Lattice index of K")->required();
  rhs_cmd->add_option("--basis", basis_index, "Basis element of a(H)")->required();

  std::vector<const char *> argv{"equifuse"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError &e) {
    err << Json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return BadInput;
  }

  try {
    opts.caps = Caps::from_env();
    if (app.get_option("--prime-override")->count() > 0)
      opts.prime = prime;

    if (group_cmd->parsed()) {
      auto g = parse_group_spec(group_spec, opts.caps);
      Json j = group_to_json(*g);
      j["order"] = g->order();
      j["exponent"] = g->exponent();
      j["classes"] = conjugacy_classes(g).size();
      out << j.dump(2) << "\n";
      return Ok;
    }

    if (chartable_cmd->parsed()) {
      auto g = parse_group_spec(group_spec, opts.caps);
      auto h = subgroup_text.empty() ? Subgroup::whole(g) : parse_subgroup(g, subgroup_text);
      auto ctx = context_for(opts, {g});
      out << to_json(character_table(h, ctx), ctx).dump(2) << "\n";
      return Ok;
    }

    if (double_cmd->parsed() || fuse_cmd->parsed()) {
      std::shared_ptr<FusionEngine> engine;
      if (double_cmd->parsed()) {
        auto g = parse_group_spec(group_spec, opts.caps);
        engine = make_engine(GroupAction::conjugation(g), opts);
      } else {
        auto f = parse_group_spec(f_spec, opts.caps);
        auto g = parse_group_spec(g_spec, opts.caps);
        engine = make_engine(parse_action(f, g, action_spec, opts.caps), opts);
      }
      auto h = subgroup_text.empty() ? engine->whole() : parse_subgroup(engine->datum().F, subgroup_text);
      auto ring = engine->fusion_ring(h, opts.jobs);
      emit(table_path, render(ring, *engine->datum().G, format), out);
      return Ok;
    }

    if (verify_cmd->parsed()) {
      AxiomReport report;
      if (what == "coherent") {
        auto engine = parse_engine(family, opts);
        auto h = subgroup_text.empty() ? engine->whole() : parse_subgroup(engine->datum().F, subgroup_text);
        report = engine->verify_coherent_axioms(h);
      } else {
        auto fam = parse_family(family, opts);
        report = what == "mackey" ? verify_mackey_axioms(fam) : verify_green_axioms(fam);
      }
      auto text = to_json(report).dump(2) + "\n";
      if (!report.ok()) {
        err << text;
        return CheckFailed;
      }
      out << text;
      return Ok;
    }

    if (scenario_cmd->parsed()) {
      Json list = Json::array();
      for (const auto &name : scenario_catalog()) {
        auto s = scenario_preset(name, opts.caps);
        auto engine = s.engine();
        list.push_back({{"name", name},
                        {"F_order", s.datum.F->order()},
                        {"G_order", s.datum.G->order()},
                        {"prime", s.ctx.prime()},
                        {"labels", engine->simples(engine->whole()).size()}});
      }
      out << list.dump(2) << "\n";
      return Ok;
    }

    if (rhs_cmd->parsed()) {
      auto fam = parse_family(family, opts);
      if (h_index >= fam.lattice->size() || k_index >= fam.lattice->size())
        throw Error(ErrorCode::InvalidInput, "lattice index out of range");
      if (basis_index >= fam.basis_size(h_index))
        throw Error(ErrorCode::InvalidInput, "basis index out of range");
      auto v = fam.basis_vector(h_index, basis_index);
      auto rhs = mackey_rhs(fam, h_index, k_index, v);
      auto lhs = mackey_lhs(fam, h_index, k_index, v);
      Json j{{"H", h_index}, {"K", k_index}, {"input", v}, {"res_ind", lhs}, {"double_coset_sum", rhs},
             {"equal", lhs == rhs}};
      out << j.dump(2) << "\n";
      return lhs == rhs ? Ok : CheckFailed;
    }
  } catch (const Error &e) {
    err << Json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception &e) {
    err << Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return CheckFailed;
  }
  return BadInput;
}

} // namespace equifuse::cli
