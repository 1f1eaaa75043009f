#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace equifuse
{

/// Index of an element in its group's canonical element list.
using Elem = std::uint32_t;

/// Enumeration limits. Groups are fully enumerated, so these keep the
/// O(|G|^2) multiplication table and the lattice search at desk scale.
struct Caps
{
  std::size_t order = 2000;
  std::size_t lattice = 200;

  /// Defaults overridden by EQUIFUSE_CAP_ORDER / EQUIFUSE_CAP_LATTICE.
  static Caps from_env()
  {
    Caps caps;
    auto read = [](const char *name, std::size_t &slot) {
      if (const char *v = std::getenv(name)) {
        char *end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end == v || *end != '\0' || n == 0)
          throw Error(ErrorCode::InvalidInput, std::string("bad value for ") + name);
        slot = static_cast<std::size_t>(n);
      }
    };
    read("EQUIFUSE_CAP_ORDER", caps.order);
    read("EQUIFUSE_CAP_LATTICE", caps.lattice);
    return caps;
  }
};

/// A fully enumerated permutation group.
///
/// Elements are sorted lexicographically by image tuple, so the identity is
/// always element 0. The multiplication table follows Perm's composition
/// convention: mul(a, b) is "apply b, then a".
class Group
{
public:
  static std::shared_ptr<const Group> build(std::size_t degree, std::vector<Perm> generators,
                                            Caps caps = {})
  {
    if (degree == 0)
      throw Error(ErrorCode::InvalidInput, "degree must be positive");
    for (const auto &g : generators)
      if (g.degree() != degree)
        throw Error(ErrorCode::DegreeMismatch,
                    "generator of degree " + std::to_string(g.degree()) + " in a group of degree " +
                        std::to_string(degree));

    // Breadth-first closure under left multiplication by generators. The BFS
    // tree lets the full table be filled with one lookup per entry later.
    std::map<std::vector<Point>, Elem> found;
    std::vector<Perm> elems{Perm::identity(degree)};
    std::vector<std::pair<Elem, Elem>> parent{{0, 0}}; // (generator, predecessor)
    found.emplace(elems[0].images(), 0);
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (std::size_t s = 0; s < generators.size(); ++s) {
        Perm next = generators[s] * elems[head];
        if (found.count(next.images()))
          continue;
        if (elems.size() + 1 > caps.order)
          throw Error(ErrorCode::OrderCapExceeded,
                      "group order exceeds cap " + std::to_string(caps.order));
        found.emplace(next.images(), static_cast<Elem>(elems.size()));
        elems.push_back(std::move(next));
        parent.emplace_back(static_cast<Elem>(s), static_cast<Elem>(head));
      }
    }

    const std::size_t n = elems.size();
    std::vector<Elem> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return elems[a] < elems[b]; });
    std::vector<Elem> rank(n);
    for (std::size_t i = 0; i < n; ++i)
      rank[order[i]] = static_cast<Elem>(i);

    auto group = std::shared_ptr<Group>(new Group());
    group->degree_ = degree;
    group->generators_ = generators;
    group->elements_.reserve(n);
    for (Elem e : order)
      group->elements_.push_back(elems[e]);
    for (auto &[images, idx] : found)
      group->index_.emplace(images, rank[idx]);

    // left multiplication by each generator, in canonical indices
    std::vector<std::vector<Elem>> left(generators.size(), std::vector<Elem>(n));
    for (std::size_t s = 0; s < generators.size(); ++s)
      for (std::size_t a = 0; a < n; ++a)
        left[s][a] = group->index_.at((generators[s] * group->elements_[a]).images());

    // mul(w, b) = left_s(mul(pred(w), b)) where w = s * pred(w) in the BFS tree
    group->mult_.assign(n * n, 0);
    for (std::size_t b = 0; b < n; ++b)
      group->mult_[rank[0] * n + b] = static_cast<Elem>(b);
    for (std::size_t w = 1; w < n; ++w) {
      auto [s, pred] = parent[w];
      Elem rw = rank[w], rp = rank[pred];
      for (std::size_t b = 0; b < n; ++b)
        group->mult_[rw * n + b] = left[s][group->mult_[rp * n + b]];
    }

    group->inv_.resize(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (group->mult_[a * n + b] == 0) {
          group->inv_[a] = static_cast<Elem>(b);
          break;
        }

    for (const auto &g : generators)
      group->generator_elems_.push_back(group->index_.at(g.images()));
    return group;
  }

  std::size_t degree() const noexcept
  { return degree_; }

  std::size_t order() const noexcept
  { return elements_.size(); }

  const std::vector<Perm> &generators() const noexcept
  { return generators_; }

  /// Element indices of the generators, in generator order.
  const std::vector<Elem> &generator_elements() const noexcept
  { return generator_elems_; }

  const std::vector<Perm> &elements() const noexcept
  { return elements_; }

  const Perm &element(Elem e) const
  { return elements_.at(e); }

  static constexpr Elem identity() noexcept
  { return 0; }

  Elem mul(Elem a, Elem b) const
  { return mult_[static_cast<std::size_t>(a) * elements_.size() + b]; }

  Elem inv(Elem a) const
  { return inv_[a]; }

  /// x a x^-1
  Elem conj(Elem x, Elem a) const
  { return mul(mul(x, a), inv_[x]); }

  bool contains(Elem e) const noexcept
  { return e < elements_.size(); }

  void require(Elem e) const
  {
    if (!contains(e))
      throw Error(ErrorCode::ElementNotInGroup, "element index " + std::to_string(e) + " out of range");
  }

  std::optional<Elem> index_of(const Perm &p) const
  {
    auto it = index_.find(p.images());
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  std::size_t element_order(Elem e) const
  {
    std::size_t k = 1;
    for (Elem x = e; x != identity(); x = mul(e, x))
      ++k;
    return k;
  }

  std::size_t exponent() const
  {
    std::size_t e = 1;
    for (Elem a = 0; a < order(); ++a)
      e = std::lcm(e, element_order(a));
    return e;
  }

private:
  Group() = default;

  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Elem> generator_elems_;
  std::vector<Perm> elements_;
  std::map<std::vector<Point>, Elem> index_;
  std::vector<Elem> mult_;
  std::vector<Elem> inv_;
};

using GroupPtr = std::shared_ptr<const Group>;

inline GroupPtr build_group(std::size_t degree, std::vector<Perm> generators, Caps caps = {})
{
  return Group::build(degree, std::move(generators), caps);
}

/// A subgroup of a parent group, held as a membership bitmask plus the sorted
/// member list.
class Subgroup
{
public:
  using Mask = std::vector<std::uint64_t>;

  Subgroup() = default;

  static Subgroup whole(GroupPtr parent)
  {
    std::vector<Elem> all(parent->order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(std::move(parent), std::move(all));
  }

  static Subgroup trivial(GroupPtr parent)
  { return Subgroup(std::move(parent), {Group::identity()}); }

  /// Smallest subgroup containing the given elements.
  static Subgroup generated(GroupPtr parent, const std::vector<Elem> &gens)
  {
    for (Elem g : gens)
      parent->require(g);
    std::vector<bool> in(parent->order(), false);
    std::vector<Elem> members{Group::identity()};
    in[0] = true;
    for (std::size_t head = 0; head < members.size(); ++head)
      for (Elem g : gens) {
        Elem next = parent->mul(g, members[head]);
        if (!in[next]) {
          in[next] = true;
          members.push_back(next);
        }
      }
    std::sort(members.begin(), members.end());
    Subgroup h(std::move(parent), std::move(members));
    h.generators_ = gens;
    return h;
  }

  /// Validates closure; throws NotASubgroup otherwise.
  static Subgroup from_members(GroupPtr parent, std::vector<Elem> members)
  {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (Elem m : members)
      parent->require(m);
    Subgroup h(std::move(parent), std::move(members));
    if (h.members_.empty() || h.members_[0] != Group::identity())
      throw Error(ErrorCode::NotASubgroup, "member set lacks the identity");
    for (Elem a : h.members_)
      for (Elem b : h.members_)
        if (!h.contains(h.parent_->mul(a, h.parent_->inv(b))))
          throw Error(ErrorCode::NotASubgroup, "member set is not closed");
    return h;
  }

  const GroupPtr &parent() const noexcept
  { return parent_; }

  std::size_t order() const noexcept
  { return members_.size(); }

  const std::vector<Elem> &members() const noexcept
  { return members_; }

  const Mask &mask() const noexcept
  { return mask_; }

  bool contains(Elem e) const noexcept
  { return e < parent_->order() && ((mask_[e >> 6] >> (e & 63)) & 1u); }

  bool is_whole() const noexcept
  { return members_.size() == parent_->order(); }

  bool is_subgroup_of(const Subgroup &other) const
  {
    if (parent_ != other.parent_)
      return false;
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i] & ~other.mask_[i])
        return false;
    return true;
  }

  /// Generators: the ones it was built from, or a greedy generating set.
  std::vector<Elem> generators() const
  {
    if (!generators_.empty() || order() == 1)
      return generators_;
    std::vector<Elem> gens;
    std::vector<bool> covered(parent_->order(), false);
    covered[0] = true;
    std::vector<Elem> closure{Group::identity()};
    for (Elem m : members_) {
      if (covered[m])
        continue;
      gens.push_back(m);
      closure = Subgroup::generated(parent_, gens).members_;
      for (Elem c : closure)
        covered[c] = true;
    }
    return gens;
  }

  /// x H x^-1
  Subgroup conjugate(Elem x) const
  {
    parent_->require(x);
    std::vector<Elem> m;
    m.reserve(members_.size());
    for (Elem h : members_)
      m.push_back(parent_->conj(x, h));
    std::sort(m.begin(), m.end());
    return Subgroup(parent_, std::move(m));
  }

  Subgroup intersect(const Subgroup &other) const
  {
    if (parent_ != other.parent_)
      throw Error(ErrorCode::NotASubgroup, "subgroups of different groups");
    std::vector<Elem> m;
    for (Elem h : members_)
      if (other.contains(h))
        m.push_back(h);
    return Subgroup(parent_, std::move(m));
  }

  friend bool operator==(const Subgroup &a, const Subgroup &b)
  { return a.parent_ == b.parent_ && a.mask_ == b.mask_; }

  /// Lattice order: by order, then lexicographically by sorted member list.
  friend bool lattice_less(const Subgroup &a, const Subgroup &b)
  {
    if (a.order() != b.order())
      return a.order() < b.order();
    return a.members_ < b.members_;
  }

private:
  Subgroup(GroupPtr parent, std::vector<Elem> sorted_members)
  : parent_(std::move(parent)), members_(std::move(sorted_members))
  {
    mask_.assign((parent_->order() + 63) / 64, 0);
    for (Elem m : members_)
      mask_[m >> 6] |= std::uint64_t{1} << (m & 63);
  }

  GroupPtr parent_;
  std::vector<Elem> members_;
  Mask mask_;
  std::vector<Elem> generators_;
};

inline void require_same_parent(const Subgroup &a, const Subgroup &b)
{
  if (a.parent() != b.parent())
    throw Error(ErrorCode::NotASubgroup, "subgroups of different groups");
}

inline void require_subgroup(const Subgroup &sub, const Subgroup &of)
{
  if (!sub.is_subgroup_of(of))
    throw Error(ErrorCode::NotASubgroup, "not contained in the ambient subgroup");
}

struct ConjugacyClass
{
  Elem rep; ///< lex-minimal member
  std::vector<Elem> members;
};

/// Conjugacy classes of H under H-conjugation, ordered by representative;
/// the identity class is first.
inline std::vector<ConjugacyClass> conjugacy_classes(const Subgroup &h)
{
  const Group &g = *h.parent();
  std::vector<bool> seen(g.order(), false);
  std::vector<ConjugacyClass> out;
  for (Elem a : h.members()) {
    if (seen[a])
      continue;
    ConjugacyClass c{a, {}};
    for (Elem x : h.members()) {
      Elem b = g.conj(x, a);
      if (!seen[b]) {
        seen[b] = true;
        c.members.push_back(b);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ConjugacyClass> conjugacy_classes(const GroupPtr &g)
{ return conjugacy_classes(Subgroup::whole(g)); }

/// C_H(e) for e in H.
inline Subgroup centralizer(const Subgroup &h, Elem e)
{
  const Group &g = *h.parent();
  g.require(e);
  if (!h.contains(e))
    throw Error(ErrorCode::ElementNotInGroup, "element is not in the subgroup");
  std::vector<Elem> m;
  for (Elem x : h.members())
    if (g.mul(x, e) == g.mul(e, x))
      m.push_back(x);
  return Subgroup::from_members(h.parent(), std::move(m));
}

inline Subgroup centralizer(const GroupPtr &g, Elem e)
{
  g->require(e);
  return centralizer(Subgroup::whole(g), e);
}

/// Lex-minimal representatives of the left cosets xH inside `ambient`.
inline std::vector<Elem> left_coset_reps(const Subgroup &ambient, const Subgroup &h)
{
  require_subgroup(h, ambient);
  const Group &g = *ambient.parent();
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> reps;
  for (Elem x : ambient.members()) {
    if (seen[x])
      continue;
    reps.push_back(x);
    for (Elem y : h.members())
      seen[g.mul(x, y)] = true;
  }
  return reps;
}

inline std::vector<Elem> left_coset_reps(const GroupPtr &g, const Subgroup &h)
{ return left_coset_reps(Subgroup::whole(g), h); }

/// Lex-minimal representatives of the double cosets K x H inside `ambient`.
inline std::vector<Elem> double_coset_reps(const Subgroup &ambient, const Subgroup &k, const Subgroup &h)
{
  require_subgroup(k, ambient);
  require_subgroup(h, ambient);
  const Group &g = *ambient.parent();
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> reps;
  for (Elem x : ambient.members()) {
    if (seen[x])
      continue;
    reps.push_back(x);
    for (Elem a : k.members()) {
      Elem ax = g.mul(a, x);
      for (Elem b : h.members())
        seen[g.mul(ax, b)] = true;
    }
  }
  return reps;
}

inline std::vector<Elem> double_coset_reps(const GroupPtr &g, const Subgroup &k, const Subgroup &h)
{ return double_coset_reps(Subgroup::whole(g), k, h); }

/// All subgroups of a group, in lattice order, with conjugation and
/// intersection lookup.
class SubgroupLattice
{
public:
  static std::shared_ptr<const SubgroupLattice> build(const GroupPtr &g, Caps caps = {})
  {
    if (g->order() > caps.lattice)
      throw Error(ErrorCode::OrderCapExceeded,
                  "group order " + std::to_string(g->order()) + " exceeds lattice cap " +
                      std::to_string(caps.lattice));

    // cyclic-extension layering
    std::map<Subgroup::Mask, Subgroup> all;
    std::vector<Elem> cyclic_gens;
    std::vector<Subgroup> layer;
    for (Elem e = 0; e < g->order(); ++e) {
      Subgroup c = Subgroup::generated(g, {e});
      if (all.emplace(c.mask(), c).second) {
        cyclic_gens.push_back(e);
        layer.push_back(c);
      }
    }
    while (!layer.empty()) {
      std::vector<Subgroup> next;
      for (const Subgroup &s : layer) {
        auto gens = s.generators();
        for (Elem e : cyclic_gens) {
          if (s.contains(e))
            continue;
          auto ext_gens = gens;
          ext_gens.push_back(e);
          Subgroup t = Subgroup::generated(g, ext_gens);
          if (all.emplace(t.mask(), t).second)
            next.push_back(std::move(t));
        }
      }
      layer = std::move(next);
    }

    auto lat = std::shared_ptr<SubgroupLattice>(new SubgroupLattice());
    lat->group_ = g;
    for (auto &[mask, s] : all)
      lat->subgroups_.push_back(s);
    std::sort(lat->subgroups_.begin(), lat->subgroups_.end(),
              [](const Subgroup &a, const Subgroup &b) { return lattice_less(a, b); });
    for (std::size_t i = 0; i < lat->subgroups_.size(); ++i)
      lat->index_.emplace(lat->subgroups_[i].mask(), i);

    const std::size_t n = g->order();
    lat->conj_.assign(lat->subgroups_.size() * n, 0);
    for (std::size_t i = 0; i < lat->subgroups_.size(); ++i)
      for (Elem x = 0; x < n; ++x)
        lat->conj_[i * n + x] = lat->index_.at(lat->subgroups_[i].conjugate(x).mask());
    return lat;
  }

  const GroupPtr &group() const noexcept
  { return group_; }

  std::size_t size() const noexcept
  { return subgroups_.size(); }

  const Subgroup &operator[](std::size_t i) const
  { return subgroups_.at(i); }

  const std::vector<Subgroup> &subgroups() const noexcept
  { return subgroups_; }

  std::optional<std::size_t> find(const Subgroup &h) const
  {
    if (h.parent() != group_)
      return std::nullopt;
    auto it = index_.find(h.mask());
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Subgroup &h) const
  {
    auto i = find(h);
    if (!i)
      throw Error(ErrorCode::NotASubgroup, "subgroup not in lattice");
    return *i;
  }

  /// Lattice index of x H_i x^-1.
  std::size_t conjugate(std::size_t i, Elem x) const
  { return conj_[i * group_->order() + x]; }

  std::size_t intersect(std::size_t i, std::size_t j) const
  { return index_of(subgroups_[i].intersect(subgroups_[j])); }

  bool contains(std::size_t outer, std::size_t inner) const
  { return subgroups_[inner].is_subgroup_of(subgroups_[outer]); }

  std::size_t whole() const noexcept
  { return subgroups_.size() - 1; }

private:
  SubgroupLattice() = default;

  GroupPtr group_;
  std::vector<Subgroup> subgroups_;
  std::map<Subgroup::Mask, std::size_t> index_;
  std::vector<std::size_t> conj_;
};

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

inline LatticePtr subgroup_lattice(const GroupPtr &g, Caps caps = {})
{ return SubgroupLattice::build(g, caps); }

} // namespace equifuse
