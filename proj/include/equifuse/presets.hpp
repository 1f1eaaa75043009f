#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "action.hpp"
#include "error.hpp"
#include "fusion.hpp"
#include "group.hpp"
#include "modular.hpp"

namespace equifuse
{

namespace detail
{

inline std::optional<std::size_t> parse_count(std::string_view s)
{
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0)
    return std::nullopt;
  return n;
}

inline Perm cycle_perm(std::size_t degree, const std::vector<Point> &cycle)
{
  auto im = Perm::identity(degree).images();
  for (std::size_t i = 0; i < cycle.size(); ++i)
    im[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return Perm(std::move(im));
}

inline std::vector<Point> iota_points(std::size_t n)
{
  std::vector<Point> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = static_cast<Point>(i);
  return v;
}

/// Left-regular permutations of Q8 = {+-1, +-i, +-j, +-k}; point 4s + u is
/// sign s (0 = +, 1 = -) times unit u (0 = 1, 1 = i, 2 = j, 3 = k).
inline Perm quaternion_left(std::size_t unit)
{
  // unit products u*v = sign * w for u, v in {1, i, j, k}
  static constexpr int table[4][4][2] = {
      {{0, 0}, {0, 1}, {0, 2}, {0, 3}},
      {{0, 1}, {1, 0}, {0, 3}, {1, 2}},
      {{0, 2}, {1, 3}, {1, 0}, {0, 1}},
      {{0, 3}, {0, 2}, {1, 1}, {1, 0}},
  };
  std::vector<Point> im(8);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t v = 0; v < 4; ++v) {
      auto [sign, w] = table[unit][v];
      im[4 * s + v] = static_cast<Point>(4 * ((s + static_cast<std::size_t>(sign)) % 2) + static_cast<std::size_t>(w));
    }
  return Perm(std::move(im));
}

} // namespace detail

/// Named groups: sym:n and alt:n (n <= 6), cyclic:n, dihedral:n (order 2n),
/// klein4, quaternion8, trivial.
inline GroupPtr group_preset(const std::string &spec, Caps caps = {})
{
  auto unknown = [&] { return Error(ErrorCode::UnknownPreset, "unknown group preset '" + spec + "'"); };
  if (spec == "trivial")
    return Group::build(1, {}, caps);
  if (spec == "klein4")
    return Group::build(4, {Perm({1, 0, 3, 2}), Perm({2, 3, 0, 1})}, caps);
  if (spec == "quaternion8")
    return Group::build(8, {detail::quaternion_left(1), detail::quaternion_left(2)}, caps);

  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw unknown();
  std::string family = spec.substr(0, colon);
  auto count = detail::parse_count(std::string_view(spec).substr(colon + 1));
  if (!count)
    throw unknown();
  const std::size_t n = *count;

  if (family == "sym" || family == "alt") {
    if (n > 6)
      throw unknown();
    std::vector<Perm> gens;
    if (family == "sym") {
      if (n >= 2)
        gens.push_back(detail::cycle_perm(n, {0, 1}));
      if (n >= 3)
        gens.push_back(detail::cycle_perm(n, detail::iota_points(n)));
    } else {
      for (Point i = 2; i < n; ++i)
        gens.push_back(detail::cycle_perm(n, {0, 1, i}));
    }
    return Group::build(n, std::move(gens), caps);
  }
  if (family == "cyclic") {
    if (n == 1)
      return Group::build(1, {}, caps);
    return Group::build(n, {detail::cycle_perm(n, detail::iota_points(n))}, caps);
  }
  if (family == "dihedral") {
    if (n == 1)
      return Group::build(2, {Perm({1, 0})}, caps);
    if (n == 2)
      return Group::build(4, {Perm({1, 0, 3, 2}), Perm({2, 3, 0, 1})}, caps);
    std::vector<Point> refl(n);
    for (std::size_t i = 0; i < n; ++i)
      refl[i] = static_cast<Point>((n - i) % n);
    return Group::build(n, {detail::cycle_perm(n, detail::iota_points(n)), Perm(std::move(refl))}, caps);
  }
  throw unknown();
}

inline nlohmann::ordered_json group_to_json(const Group &g)
{
  nlohmann::ordered_json j;
  j["degree"] = g.degree();
  j["generators"] = nlohmann::ordered_json::array();
  for (const auto &p : g.generators())
    j["generators"].push_back(p.images());
  return j;
}

inline GroupPtr group_from_json(const nlohmann::json &j, Caps caps = {})
{
  try {
    std::size_t degree = j.at("degree").get<std::size_t>();
    std::vector<Perm> gens;
    for (const auto &g : j.at("generators"))
      gens.emplace_back(g.get<std::vector<Point>>());
    return Group::build(degree, std::move(gens), caps);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed group JSON: ") + e.what());
  }
}

inline nlohmann::json read_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::InvalidInput, "cannot parse '" + path + "': " + e.what());
  }
}

/// A preset name, or a path to a group JSON file.
inline GroupPtr parse_group_spec(const std::string &spec, Caps caps = {})
{
  std::error_code ec;
  if (spec.find(':') == std::string::npos && spec.ends_with(".json") && std::filesystem::exists(spec, ec))
    return group_from_json(read_json_file(spec), caps);
  return group_preset(spec, caps);
}

inline nlohmann::ordered_json action_to_json(const GroupAction &a)
{
  nlohmann::ordered_json j;
  j["actor"] = group_to_json(*a.actor());
  j["target"] = group_to_json(*a.target());
  nlohmann::ordered_json images = nlohmann::ordered_json::object();
  const auto &gens = a.actor()->generator_elements();
  for (std::size_t s = 0; s < gens.size(); ++s) {
    std::vector<Elem> im(a.target()->order());
    for (Elem e = 0; e < im.size(); ++e)
      im[e] = a.apply(gens[s], e);
    images[std::to_string(s)] = im;
  }
  j["images"] = images;
  return j;
}

inline GroupAction action_from_json(const nlohmann::json &j, Caps caps = {})
{
  try {
    auto f = group_from_json(j.at("actor"), caps);
    auto g = group_from_json(j.at("target"), caps);
    std::map<std::size_t, std::vector<Elem>> images;
    for (auto it = j.at("images").begin(); it != j.at("images").end(); ++it) {
      std::size_t idx = 0;
      const auto &key = it.key();
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
      if (ec != std::errc{} || ptr != key.data() + key.size())
        throw Error(ErrorCode::InvalidInput, "bad generator index '" + key + "'");
      images[idx] = it.value().get<std::vector<Elem>>();
    }
    return GroupAction::from_generator_images(f, g, images);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed action JSON: ") + e.what());
  }
}

struct Scenario
{
  std::string name;
  CoherentDatum datum;
  ModularContext ctx;
  std::string notes;

  std::shared_ptr<FusionEngine> engine() const
  { return std::make_shared<FusionEngine>(datum, ctx); }
};

inline Scenario drinfeld_double_scenario(const GroupPtr &g, std::string name = "double")
{
  auto ctx = make_context({g, g});
  return Scenario{std::move(name), CoherentDatum(GroupAction::conjugation(g)), ctx,
                  "F = G acting on itself by conjugation"};
}

inline Scenario classical_scenario(const GroupPtr &f, Caps caps = {}, std::string name = "classical")
{
  auto g = Group::build(1, {}, caps);
  auto ctx = make_context({f, g});
  return Scenario{std::move(name), CoherentDatum(GroupAction::trivial(f, g)), ctx,
                  "trivial grading group; recovers the character ring of F"};
}

/// "double:<group>" or "classical:<group>".
inline Scenario scenario_preset(const std::string &spec, Caps caps = {})
{
  if (spec.starts_with("double:"))
    return drinfeld_double_scenario(group_preset(spec.substr(7), caps), spec);
  if (spec.starts_with("classical:"))
    return classical_scenario(group_preset(spec.substr(10), caps), caps, spec);
  throw Error(ErrorCode::UnknownPreset, "unknown scenario '" + spec + "'");
}

inline const std::vector<std::string> &scenario_catalog()
{
  static const std::vector<std::string> names = {
      "double:trivial",     "double:cyclic:2",    "double:cyclic:3",   "double:cyclic:4",
      "double:klein4",      "double:sym:3",       "double:dihedral:4", "double:quaternion8",
      "double:alt:4",       "classical:sym:3",    "classical:dihedral:4", "classical:sym:4",
  };
  return names;
}

} // namespace equifuse
