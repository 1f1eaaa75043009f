#pragma once

#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace equifuse
{

/// A left action of a group F on the elements of a group G by automorphisms,
/// tabulated as one permutation of G's element indices per element of F.
class GroupAction
{
public:
  /// F = G acting on itself by x . g = x g x^-1.
  static GroupAction conjugation(const GroupPtr &g)
  {
    GroupAction a(g, g);
    const std::size_t n = g->order();
    for (Elem x = 0; x < n; ++x)
      for (Elem e = 0; e < n; ++e)
        a.table_[x * n + e] = g->conj(x, e);
    return a;
  }

  static GroupAction trivial(const GroupPtr &f, const GroupPtr &g)
  {
    GroupAction a(f, g);
    for (Elem x = 0; x < f->order(); ++x)
      for (Elem e = 0; e < g->order(); ++e)
        a.table_[x * g->order() + e] = e;
    return a;
  }

  /// Extends images of F's generators (as permutations of G's element
  /// indices) to the whole of F. Throws InvalidInput unless the assignment is
  /// a homomorphism F -> Aut(G).
  static GroupAction from_generator_images(const GroupPtr &f, const GroupPtr &g,
                                           const std::map<std::size_t, std::vector<Elem>> &images)
  {
    const std::size_t n = g->order();
    const auto &gens = f->generator_elements();
    std::vector<std::vector<Elem>> gen_maps(gens.size());
    for (std::size_t s = 0; s < gens.size(); ++s) {
      auto it = images.find(s);
      if (it == images.end())
        throw Error(ErrorCode::InvalidInput, "missing image for actor generator " + std::to_string(s));
      if (it->second.size() != n)
        throw Error(ErrorCode::InvalidInput, "generator image has wrong length");
      std::vector<bool> hit(n, false);
      for (Elem e : it->second) {
        if (e >= n || hit[e])
          throw Error(ErrorCode::InvalidInput, "generator image is not a permutation of target elements");
        hit[e] = true;
      }
      gen_maps[s] = it->second;
    }
    for (auto &[s, _] : images)
      if (s >= gens.size())
        throw Error(ErrorCode::InvalidInput, "image given for nonexistent generator " + std::to_string(s));

    GroupAction a(f, g);
    std::vector<bool> done(f->order(), false);
    for (Elem e = 0; e < n; ++e)
      a.table_[e] = e;
    done[0] = true;
    std::vector<Elem> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Elem y = queue[head];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Elem x = f->mul(gens[s], y);
        if (done[x])
          continue;
        done[x] = true;
        for (Elem e = 0; e < n; ++e)
          a.table_[x * n + e] = gen_maps[s][a.table_[y * n + e]];
        queue.push_back(x);
      }
    }
    for (Elem y = 0; y < f->order(); ++y)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        Elem x = f->mul(gens[s], y);
        for (Elem e = 0; e < n; ++e)
          if (a.table_[x * n + e] != gen_maps[s][a.table_[y * n + e]])
            throw Error(ErrorCode::InvalidInput, "generator images do not define a homomorphism");
      }
    a.require_automorphisms();
    return a;
  }

  const GroupPtr &actor() const noexcept
  { return actor_; }

  const GroupPtr &target() const noexcept
  { return target_; }

  Elem apply(Elem x, Elem p) const
  { return table_[static_cast<std::size_t>(x) * target_->order() + p]; }

  /// Throws InvalidInput if some map(x, .) is not an automorphism of G.
  void require_automorphisms() const
  {
    const Group &g = *target_;
    for (Elem x : actor_->generator_elements()) {
      if (apply(x, Group::identity()) != Group::identity())
        throw Error(ErrorCode::InvalidInput, "action does not fix the identity");
      for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
          if (apply(x, g.mul(a, b)) != g.mul(apply(x, a), apply(x, b)))
            throw Error(ErrorCode::InvalidInput, "action is not by group automorphisms");
    }
  }

private:
  GroupAction(GroupPtr f, GroupPtr g)
  : actor_(std::move(f)), target_(std::move(g)), table_(actor_->order() * target_->order())
  {}

  GroupPtr actor_;
  GroupPtr target_;
  std::vector<Elem> table_;
};

struct Orbit
{
  Elem rep; ///< lex-minimal point
  std::vector<Elem> points;
  Subgroup stabilizer;
};

/// Orbits of H <= F on the target, ordered by representative.
inline std::vector<Orbit> orbits(const GroupAction &a, const Subgroup &h)
{
  if (h.parent() != a.actor())
    throw Error(ErrorCode::NotASubgroup, "acting subgroup is not a subgroup of the actor");
  const std::size_t n = a.target()->order();
  std::vector<bool> seen(n, false);
  std::vector<Orbit> out;
  for (Elem p = 0; p < n; ++p) {
    if (seen[p])
      continue;
    std::vector<Elem> pts;
    std::vector<Elem> stab;
    for (Elem x : h.members()) {
      Elem q = a.apply(x, p);
      if (q == p)
        stab.push_back(x);
      if (!seen[q]) {
        seen[q] = true;
        pts.push_back(q);
      }
    }
    std::sort(pts.begin(), pts.end());
    out.push_back(Orbit{p, std::move(pts), Subgroup::from_members(h.parent(), std::move(stab))});
  }
  return out;
}

inline std::vector<Orbit> orbits(const GroupAction &a)
{ return orbits(a, Subgroup::whole(a.actor())); }

/// Lex-minimal x in H with x . p = q.
inline Elem transporter(const GroupAction &a, const Subgroup &h, Elem p, Elem q)
{
  a.target()->require(p);
  a.target()->require(q);
  for (Elem x : h.members())
    if (a.apply(x, p) == q)
      return x;
  throw Error(ErrorCode::NotInSameOrbit, "points lie in different orbits");
}

inline Elem transporter(const GroupAction &a, Elem p, Elem q)
{ return transporter(a, Subgroup::whole(a.actor()), p, q); }

} // namespace equifuse
