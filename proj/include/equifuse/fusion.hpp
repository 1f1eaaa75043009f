#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "action.hpp"
#include "chartab.hpp"
#include "error.hpp"
#include "group.hpp"
#include "mackey.hpp"
#include "report.hpp"

namespace equifuse
{

/// F acting on G by automorphisms; in the strict setting this is all the data
/// a coherent action on Vec_G carries.
struct CoherentDatum
{
  GroupPtr F;
  GroupPtr G;
  GroupAction action;

  explicit CoherentDatum(GroupAction a)
  : F(a.actor()), G(a.target()), action(std::move(a))
  { action.require_automorphisms(); }
};

struct LabelKey
{
  Elem orbit_rep;
  std::size_t char_index;

  friend auto operator<=>(const LabelKey &, const LabelKey &) = default;
};

/// Labels with integer multiplicities, ordered by (orbit_rep, char_index).
using LabelMultiset = std::map<LabelKey, std::int64_t>;

/// S_H(g, chi): the simple induced from the irreducible chi of the
/// stabilizer H_g, for g the canonical representative of its H-orbit.
struct SimpleLabel
{
  Subgroup subgroup;
  Elem orbit_rep = 0;
  std::size_t char_index = 0;
  std::size_t orbit_size = 1;
  Subgroup stabilizer;
  std::int64_t degree = 1;

  std::int64_t dim() const noexcept
  { return static_cast<std::int64_t>(orbit_size) * degree; }

  LabelKey key() const noexcept
  { return {orbit_rep, char_index}; }
};

/// An H-invariant element of A = (+)_g R(H_g), stored by its components at
/// the canonical orbit representatives (coordinates in Irr(H_g)).
struct InvariantVector
{
  Subgroup subgroup;
  std::map<Elem, IntVector> components;

  friend bool operator==(const InvariantVector &a, const InvariantVector &b)
  {
    if (!(a.subgroup == b.subgroup))
      return false;
    auto nonzero = [](const std::map<Elem, IntVector> &m) {
      std::map<Elem, IntVector> out;
      for (auto &[g, v] : m)
        if (std::any_of(v.begin(), v.end(), [](auto c) { return c != 0; }))
          out.emplace(g, v);
      return out;
    };
    return nonzero(a.components) == nonzero(b.components);
  }
};

/// Which point of each orbit represents it in the orbit-sum products.
enum class RepChoice
{
  LexMin,
  LexMax,
};

struct FusionTerm
{
  std::size_t k;
  std::int64_t n;
};

struct FusionChecks
{
  bool associative = false;
  bool dim_hom = false;
  bool matches_M_form = false;
};

struct FusionRing
{
  std::vector<SimpleLabel> labels;
  std::size_t unit = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<FusionTerm>> constants;
  std::vector<std::int64_t> dims;
  FusionChecks checks;

  std::size_t size() const noexcept
  { return labels.size(); }

  std::int64_t N(std::size_t i, std::size_t j, std::size_t k) const
  {
    auto it = constants.find({i, j});
    if (it == constants.end())
      return 0;
    for (const auto &t : it->second)
      if (t.k == k)
        return t.n;
    return 0;
  }

  const std::vector<FusionTerm> &product(std::size_t i, std::size_t j) const
  {
    static const std::vector<FusionTerm> empty;
    auto it = constants.find({i, j});
    return it == constants.end() ? empty : it->second;
  }

  bool commutative() const
  {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) {
        const auto &a = product(i, j);
        const auto &b = product(j, i);
        if (a.size() != b.size())
          return false;
        for (std::size_t t = 0; t < a.size(); ++t)
          if (a[t].k != b[t].k || a[t].n != b[t].n)
            return false;
      }
    return true;
  }
};

/// Orbit structure of H <= F on G: canonical representatives, the lex-minimal
/// transporter of every point to its representative, and all stabilizers.
struct OrbitData
{
  Subgroup subgroup;
  std::vector<Orbit> orbits;
  std::vector<std::size_t> orbit_of;
  std::vector<Elem> to_rep;
  std::vector<Subgroup> stabilizers;

  Elem rep_of(Elem g) const
  { return orbits[orbit_of[g]].rep; }
};

/// K_0 computations for the equivariantization of Vec_G under a coherent
/// F-action, relativized to any H <= F. Thread-safe; results are cached.
class FusionEngine
{
public:
  FusionEngine(CoherentDatum datum, ModularContext ctx)
  : datum_(std::move(datum)), cache_(ctx)
  {}

  FusionEngine(const FusionEngine &) = delete;
  FusionEngine &operator=(const FusionEngine &) = delete;

  const CoherentDatum &datum() const noexcept
  { return datum_; }

  const CharacterCache &characters() const noexcept
  { return cache_; }

  const ModularContext &context() const noexcept
  { return cache_.context(); }

  Subgroup whole() const
  { return Subgroup::whole(datum_.F); }

  const OrbitData &orbit_data(const Subgroup &h) const
  {
    require_actor_subgroup(h);
    {
      std::lock_guard lock(mutex_);
      auto it = orbit_cache_.find(h.mask());
      if (it != orbit_cache_.end())
        return *it->second;
    }
    auto od = std::make_unique<OrbitData>();
    od->subgroup = h;
    od->orbits = orbits(datum_.action, h);
    const std::size_t n = datum_.G->order();
    od->orbit_of.assign(n, 0);
    od->to_rep.assign(n, 0);
    od->stabilizers.resize(n);
    const Group &f = *datum_.F;
    for (std::size_t o = 0; o < od->orbits.size(); ++o) {
      const auto &orb = od->orbits[o];
      for (Elem p : orb.points)
        od->orbit_of[p] = o;
      std::vector<bool> have(n, false);
      std::size_t remaining = orb.points.size();
      for (Elem x : h.members()) {
        if (remaining == 0)
          break;
        // x maps p to rep  <=>  p = x^-1 . rep; first hit is the lex-min x
        Elem p = datum_.action.apply(f.inv(x), orb.rep);
        if (!have[p]) {
          have[p] = true;
          od->to_rep[p] = x;
          od->stabilizers[p] = orb.stabilizer.conjugate(f.inv(x));
          --remaining;
        }
      }
    }
    std::lock_guard lock(mutex_);
    return *orbit_cache_.emplace(h.mask(), std::move(od)).first->second;
  }

  const Subgroup &stabilizer(const Subgroup &h, Elem g) const
  {
    datum_.G->require(g);
    return orbit_data(h).stabilizers[g];
  }

  /// One label per (orbit representative, irreducible of its stabilizer).
  std::vector<SimpleLabel> simples(const Subgroup &h) const
  {
    const auto &od = orbit_data(h);
    std::vector<SimpleLabel> out;
    for (const auto &orb : od.orbits) {
      auto table = cache_.table(orb.stabilizer);
      for (std::size_t i = 0; i < table->size(); ++i)
        out.push_back(SimpleLabel{h, orb.rep, i, orb.points.size(), orb.stabilizer, table->degrees[i]});
    }
    return out;
  }

  SimpleLabel label(const Subgroup &h, LabelKey key) const
  {
    const auto &od = orbit_data(h);
    datum_.G->require(key.orbit_rep);
    if (od.rep_of(key.orbit_rep) != key.orbit_rep)
      throw Error(ErrorCode::InvalidInput, "label point is not a canonical orbit representative");
    const auto &orb = od.orbits[od.orbit_of[key.orbit_rep]];
    auto table = cache_.table(orb.stabilizer);
    if (key.char_index >= table->size())
      throw Error(ErrorCode::InvalidInput, "character index out of range");
    return SimpleLabel{h, key.orbit_rep, key.char_index, orb.points.size(), orb.stabilizer,
                       table->degrees[key.char_index]};
  }

  /// Position of a label in simples(h).
  std::size_t label_index(const Subgroup &h, LabelKey key) const
  {
    const auto &od = orbit_data(h);
    std::size_t idx = 0;
    for (const auto &orb : od.orbits) {
      auto sz = cache_.table(orb.stabilizer)->size();
      if (orb.rep == key.orbit_rep) {
        if (key.char_index >= sz)
          break;
        return idx + key.char_index;
      }
      idx += sz;
    }
    throw Error(ErrorCode::InvalidInput, "label not found");
  }

  IntVector coordinates(const Subgroup &h, const LabelMultiset &m) const
  {
    IntVector v(simples(h).size(), 0);
    for (auto &[key, n] : m)
      v[label_index(h, key)] += n;
    return v;
  }

  const ClassFunction &character(const SimpleLabel &a) const
  { return cache_.table(a.stabilizer)->rows.at(a.char_index); }

  std::int64_t dimension(const Subgroup &h, const LabelMultiset &m) const
  {
    std::int64_t d = 0;
    for (auto &[key, n] : m)
      d += n * label(h, key).dim();
    return d;
  }

  /// Transports (g, chi) to the canonical representative of g's H-orbit via
  /// the lex-minimal transporter and decomposes there.
  LabelMultiset normalize_label(const Subgroup &h, Elem g, const ClassFunction &chi) const
  {
    datum_.G->require(g);
    return normalize_label_via(h, g, chi, orbit_data(h).to_rep[g]);
  }

  /// Same, with an explicit transporter t (t . g must be the representative).
  LabelMultiset normalize_label_via(const Subgroup &h, Elem g, const ClassFunction &chi, Elem t) const
  {
    const auto &od = orbit_data(h);
    datum_.G->require(g);
    if (!(chi.group() == od.stabilizers[g]))
      throw Error(ErrorCode::NotAClassFunction, "character does not live on the stabilizer of its point");
    Elem rep = od.rep_of(g);
    if (!h.contains(t) || datum_.action.apply(t, g) != rep)
      throw Error(ErrorCode::NotInSameOrbit, "transporter does not carry the point to its representative");
    auto moved = conjugate_cf(chi, t, cache_);
    auto table = cache_.table(od.stabilizers[rep]);
    auto coeffs = decompose(moved, table, context()).coeffs;
    LabelMultiset out;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0)
        out[{rep, i}] += coeffs[i];
    return out;
  }

  /// m_{g,h}(chi, psi) = Ind_{H_g n H_h}^{H_gh}(Res chi . Res psi).
  ClassFunction m_product(const Subgroup &h, Elem g, const ClassFunction &chi, Elem k, const ClassFunction &psi) const
  {
    const auto &od = orbit_data(h);
    datum_.G->require(g);
    datum_.G->require(k);
    const Subgroup &hg = od.stabilizers[g];
    const Subgroup &hk = od.stabilizers[k];
    if (!(chi.group() == hg) || !(psi.group() == hk))
      throw Error(ErrorCode::NotAClassFunction, "characters do not live on the stabilizers");
    Subgroup meet = hg.intersect(hk);
    auto prod = pointwise_product(restrict(chi, meet, cache_), restrict(psi, meet, cache_), context());
    return induce(prod, od.stabilizers[datum_.G->mul(g, k)], cache_);
  }

  /// S(g, chi) (x) S(h, psi) = sum over x in H_h\H/H_g of
  /// S(xg h, m_{xg,h}(x chi, psi)).
  LabelMultiset fuse(const Subgroup &h, const SimpleLabel &a, const SimpleLabel &b) const
  {
    if (!(a.subgroup == h) || !(b.subgroup == h))
      throw Error(ErrorCode::SubgroupMismatch, "labels belong to a different subgroup");
    const auto &od = orbit_data(h);
    const Group &g = *datum_.G;
    const auto &chi = character(a);
    const auto &psi = character(b);
    LabelMultiset out;
    for (Elem x : double_coset_reps(h, od.stabilizers[b.orbit_rep], od.stabilizers[a.orbit_rep])) {
      Elem xg = datum_.action.apply(x, a.orbit_rep);
      auto moved = conjugate_cf(chi, x, cache_);
      auto m = m_product(h, xg, moved, b.orbit_rep, psi);
      for (auto &[key, n] : normalize_label(h, g.mul(xg, b.orbit_rep), m))
        out[key] += n;
    }
    std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
    if (dimension(h, out) != a.dim() * b.dim())
      throw Error(ErrorCode::InvariantViolation, "dimension not conserved in product of labels " +
                                                     describe(a) + " and " + describe(b));
    return out;
  }

  InvariantVector to_invariant(const SimpleLabel &a) const
  {
    InvariantVector v{a.subgroup, {}};
    IntVector e(cache_.table(a.stabilizer)->size(), 0);
    e[a.char_index] = 1;
    v.components.emplace(a.orbit_rep, std::move(e));
    return v;
  }

  /// Orbit sums of the simples, in the order of simples(h).
  std::vector<InvariantVector> invariant_basis(const Subgroup &h) const
  {
    std::vector<InvariantVector> out;
    for (const auto &a : simples(h))
      out.push_back(to_invariant(a));
    return out;
  }

  LabelMultiset to_labels(const InvariantVector &v) const
  {
    LabelMultiset out;
    for (auto &[rep, coeffs] : v.components)
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0)
          out[{rep, i}] += coeffs[i];
    return out;
  }

  /// The g-component of an invariant vector (g arbitrary), as a class
  /// function on H_g.
  ClassFunction component(const InvariantVector &v, Elem g) const
  {
    const auto &od = orbit_data(v.subgroup);
    datum_.G->require(g);
    Elem rep = od.rep_of(g);
    auto it = v.components.find(rep);
    if (it == v.components.end())
      return ClassFunction{cache_.classes(od.stabilizers[g]),
                           std::vector<Fp>(cache_.classes(od.stabilizers[g])->size(), 0)};
    auto table = cache_.table(od.stabilizers[rep]);
    auto at_rep = compose(*table, it->second, context());
    return conjugate_cf(at_rep, datum_.F->inv(od.to_rep[g]), cache_);
  }

  /// (alpha beta)_g = sum over H_g-orbit representatives (h, k), hk = g, of
  /// m_{h,k}(alpha_h, beta_k); returned in coordinates of Irr(H_g).
  IntVector m_form_component(const InvariantVector &alpha, const InvariantVector &beta, Elem g,
                             RepChoice choice = RepChoice::LexMin) const
  {
    if (!(alpha.subgroup == beta.subgroup))
      throw Error(ErrorCode::SubgroupMismatch, "invariant vectors over different subgroups");
    const Subgroup &h = alpha.subgroup;
    const auto &od = orbit_data(h);
    const Group &gg = *datum_.G;
    const Subgroup &hg = od.stabilizers[g];
    std::vector<bool> alpha_orbits(od.orbits.size(), false), beta_orbits(od.orbits.size(), false);
    for (auto &[rep, c] : alpha.components)
      alpha_orbits[od.orbit_of[rep]] = true;
    for (auto &[rep, c] : beta.components)
      beta_orbits[od.orbit_of[rep]] = true;

    ClassFunction total{cache_.classes(hg), std::vector<Fp>(cache_.classes(hg)->size(), 0)};
    std::vector<bool> seen(gg.order(), false);
    auto visit = [&](Elem first) {
      if (seen[first])
        return;
      for (Elem y : hg.members())
        seen[datum_.action.apply(y, first)] = true;
      Elem k = gg.mul(gg.inv(first), g);
      if (!alpha_orbits[od.orbit_of[first]] || !beta_orbits[od.orbit_of[k]])
        return;
      auto m = m_product(h, first, component(alpha, first), k, component(beta, k));
      total = add(total, m, context());
    };
    if (choice == RepChoice::LexMin)
      for (Elem first = 0; first < gg.order(); ++first)
        visit(first);
    else
      for (Elem first = static_cast<Elem>(gg.order()); first-- > 0;)
        visit(first);
    return decompose(total, cache_.table(hg), context()).coeffs;
  }

  /// Product of invariant vectors by the orbit-sum formula, independent of
  /// the double-coset route used by fuse().
  InvariantVector fuse_via_M(const InvariantVector &alpha, const InvariantVector &beta,
                             RepChoice choice = RepChoice::LexMin) const
  {
    const auto &od = orbit_data(alpha.subgroup);
    InvariantVector out{alpha.subgroup, {}};
    for (const auto &orb : od.orbits) {
      auto c = m_form_component(alpha, beta, orb.rep, choice);
      if (std::any_of(c.begin(), c.end(), [](auto v) { return v != 0; }))
        out.components.emplace(orb.rep, std::move(c));
    }
    return out;
  }

  /// Res^H_K S_H(g, chi) = sum over x in K\H/H_g of S_K(xg, Res (x chi)).
  LabelMultiset eq_restrict(const Subgroup &h, const Subgroup &k, const SimpleLabel &a) const
  {
    if (!(a.subgroup == h))
      throw Error(ErrorCode::SubgroupMismatch, "label belongs to a different subgroup");
    if (!k.is_subgroup_of(h))
      throw Error(ErrorCode::SubgroupMismatch, "restriction target is not a subgroup");
    const auto &chi = character(a);
    LabelMultiset out;
    for (Elem x : double_coset_reps(h, k, a.stabilizer)) {
      Elem xg = datum_.action.apply(x, a.orbit_rep);
      auto moved = conjugate_cf(chi, x, cache_);
      auto res = restrict(moved, stabilizer(k, xg), cache_);
      for (auto &[key, n] : normalize_label(k, xg, res))
        out[key] += n;
    }
    std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
    return out;
  }

  /// Ind_K^H S_K(g, chi) = S_H(g, Ind_{K_g}^{H_g} chi), renormalized.
  LabelMultiset eq_induce(const Subgroup &k, const Subgroup &h, const SimpleLabel &a) const
  {
    if (!(a.subgroup == k))
      throw Error(ErrorCode::SubgroupMismatch, "label belongs to a different subgroup");
    if (!k.is_subgroup_of(h))
      throw Error(ErrorCode::SubgroupMismatch, "induction source is not a subgroup");
    auto ind = induce(character(a), stabilizer(h, a.orbit_rep), cache_);
    auto out = normalize_label(h, a.orbit_rep, ind);
    std::erase_if(out, [](const auto &kv) { return kv.second == 0; });
    return out;
  }

  /// T^x S_H(g, chi) = S_{xHx^-1}(xg, x chi), renormalized.
  SimpleLabel eq_conjugate(const Subgroup &h, Elem x, const SimpleLabel &a) const
  {
    if (!(a.subgroup == h))
      throw Error(ErrorCode::SubgroupMismatch, "label belongs to a different subgroup");
    if (!datum_.F->contains(x))
      throw Error(ErrorCode::ElementNotInGroup, "conjugating element not in the acting group");
    Subgroup xh = h.conjugate(x);
    Elem xg = datum_.action.apply(x, a.orbit_rep);
    auto moved = conjugate_cf(character(a), x, cache_);
    auto out = normalize_label(xh, xg, moved);
    if (out.size() != 1 || out.begin()->second != 1)
      throw Error(ErrorCode::InvariantViolation, "conjugate of a simple is not simple");
    return label(xh, out.begin()->first);
  }

  AxiomReport verify_coherent_axioms(const Subgroup &h) const;

  FusionRing fusion_ring(const Subgroup &h, unsigned jobs = 1) const;

  std::string describe(const SimpleLabel &a) const
  {
    return "S(" + datum_.G->element(a.orbit_rep).to_cycles() + ", chi" + std::to_string(a.char_index) + ")";
  }

private:
  void require_actor_subgroup(const Subgroup &h) const
  {
    if (h.parent() != datum_.F)
      throw Error(ErrorCode::SubgroupMismatch, "subgroup is not a subgroup of the acting group");
  }

  CoherentDatum datum_;
  CharacterCache cache_;
  mutable std::mutex mutex_;
  mutable std::map<Subgroup::Mask, std::unique_ptr<OrbitData>> orbit_cache_;
};

namespace detail
{

template<typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn &&fn)
{
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count)
          return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error)
            error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto &th : pool)
    th.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace detail

inline FusionRing FusionEngine::fusion_ring(const Subgroup &h, unsigned jobs) const
{
  FusionRing ring;
  ring.labels = simples(h);
  const std::size_t n = ring.labels.size();
  for (const auto &l : ring.labels)
    ring.dims.push_back(l.dim());
  ring.unit = label_index(h, {Group::identity(), 0});

  std::vector<LabelMultiset> products(n * n);
  detail::parallel_for(n * n, jobs, [&](std::size_t p) {
    products[p] = fuse(h, ring.labels[p / n], ring.labels[p % n]);
  });

  auto fail = [&](const std::string &what) {
    throw Error(ErrorCode::InvariantViolation, what);
  };
  std::vector<std::int64_t> dense(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<FusionTerm> terms;
      for (auto &[key, mult] : products[i * n + j]) {
        if (mult < 0)
          fail("negative structure constant at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        std::size_t k = label_index(h, key);
        terms.push_back({k, mult});
        dense[(i * n + j) * n + k] = mult;
      }
      std::sort(terms.begin(), terms.end(), [](auto &a, auto &b) { return a.k < b.k; });
      if (!terms.empty())
        ring.constants.emplace(std::make_pair(i, j), std::move(terms));
    }
  auto N = [&](std::size_t i, std::size_t j, std::size_t k) { return dense[(i * n + j) * n + k]; };

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (N(ring.unit, j, k) != (j == k) || N(j, ring.unit, k) != (j == k))
        fail("unit law fails at (" + std::to_string(j) + "," + std::to_string(k) + ")");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k)
        s += N(i, j, k) * ring.dims[k];
      if (s != ring.dims[i] * ring.dims[j])
        fail("dimension homomorphism fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  ring.checks.dim_hom = true;

  detail::parallel_for(n, jobs, [&](std::size_t i) {
    std::vector<std::int64_t> left(n), right(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(left.begin(), left.end(), 0);
        std::fill(right.begin(), right.end(), 0);
        for (std::size_t m = 0; m < n; ++m) {
          if (auto a = N(i, j, m))
            for (std::size_t l = 0; l < n; ++l)
              left[l] += a * N(m, k, l);
          if (auto b = N(j, k, m))
            for (std::size_t l = 0; l < n; ++l)
              right[l] += b * N(i, m, l);
        }
        if (left != right)
          fail("associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(k) + ")");
      }
  });
  ring.checks.associative = true;

  auto basis = invariant_basis(h);
  detail::parallel_for(n * n, jobs, [&](std::size_t p) {
    auto via_m = to_labels(fuse_via_M(basis[p / n], basis[p % n]));
    if (via_m != products[p])
      fail("orbit-sum product differs from double-coset product at (" + std::to_string(p / n) + "," +
           std::to_string(p % n) + ")");
  });
  ring.checks.matches_M_form = true;
  return ring;
}

inline AxiomReport FusionEngine::verify_coherent_axioms(const Subgroup &h) const
{
  const auto &od = orbit_data(h);
  const Group &g = *datum_.G;
  const Group &f = *datum_.F;
  const auto &act = datum_.action;
  const std::size_t n = g.order();
  AxiomReport report({"C1", "C2", "C3", "C4", "C5", "M-reps"});

  std::vector<CharacterTablePtr> tables(n);
  for (Elem e = 0; e < n; ++e)
    tables[e] = cache_.table(od.stabilizers[e]);

  // c_{x,e}(chi_i) in coordinates of Irr(H_{xe}), memoized
  std::map<std::tuple<Elem, Elem, std::size_t>, IntVector> cmemo;
  auto c_basis = [&](Elem x, Elem e, std::size_t i) -> const IntVector & {
    auto key = std::make_tuple(x, e, i);
    auto it = cmemo.find(key);
    if (it != cmemo.end())
      return it->second;
    auto moved = conjugate_cf(tables[e]->rows[i], x, cache_);
    return cmemo[key] = decompose(moved, tables[act.apply(x, e)], context()).coeffs;
  };
  auto c_vec = [&](Elem x, Elem e, const IntVector &v) {
    IntVector out(tables[act.apply(x, e)]->size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i])
        for (std::size_t t = 0; t < out.size(); ++t)
          out[t] += v[i] * c_basis(x, e, i)[t];
    return out;
  };
  std::map<std::tuple<Elem, Elem, std::size_t, std::size_t>, IntVector> mmemo;
  auto m_basis = [&](Elem a, Elem b, std::size_t i, std::size_t j) -> const IntVector & {
    auto key = std::make_tuple(a, b, i, j);
    auto it = mmemo.find(key);
    if (it != mmemo.end())
      return it->second;
    auto m = m_product(h, a, tables[a]->rows[i], b, tables[b]->rows[j]);
    return mmemo[key] = decompose(m, tables[g.mul(a, b)], context()).coeffs;
  };
  auto m_vec = [&](Elem a, Elem b, const IntVector &v, const IntVector &w) {
    IntVector out(tables[g.mul(a, b)]->size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i])
        continue;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (!w[j])
          continue;
        const auto &p = m_basis(a, b, i, j);
        for (std::size_t t = 0; t < out.size(); ++t)
          out[t] += v[i] * w[j] * p[t];
      }
    }
    return out;
  };
  auto unit_vec = [&](Elem e, std::size_t i) {
    IntVector v(tables[e]->size(), 0);
    v[i] = 1;
    return v;
  };
  auto pt = [&](Elem e) { return g.element(e).to_cycles(); };

  std::vector<Elem> xs;
  if (h.order() <= 64) {
    xs = h.members();
  } else {
    xs = h.generators();
    std::mt19937_64 rng(20240611);
    for (int s = 0; s < 64; ++s)
      xs.push_back(h.members()[rng() % h.order()]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }

  // C1: c_1 = id, c_{xy} = c_x c_y
  for (Elem e = 0; e < n; ++e)
    for (std::size_t i = 0; i < tables[e]->size(); ++i) {
      auto ei = unit_vec(e, i);
      report.record("C1", c_basis(0, e, i) == ei, {}, "c_1 at " + pt(e), c_basis(0, e, i), ei);
      for (Elem x : xs)
        for (Elem y : xs) {
          auto two = c_vec(x, act.apply(y, e), c_basis(y, e, i));
          const auto &one = c_basis(f.mul(x, y), e, i);
          report.record("C1", two == one, {}, "c_xy at " + pt(e) + " x=" + std::to_string(x) + " y=" + std::to_string(y),
                        two, one);
        }
    }

  // C2: c_{x,e} = id for x in H_e
  for (Elem e = 0; e < n; ++e)
    for (Elem x : od.stabilizers[e].members())
      for (std::size_t i = 0; i < tables[e]->size(); ++i) {
        auto ei = unit_vec(e, i);
        report.record("C2", c_basis(x, e, i) == ei, {}, "x=" + std::to_string(x) + " in H_" + pt(e),
                      c_basis(x, e, i), ei);
      }

  // C3: c_x m_{a,b} = m_{xa,xb}(c_x x c_x)
  for (Elem x : xs)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (std::size_t i = 0; i < tables[a]->size(); ++i)
          for (std::size_t j = 0; j < tables[b]->size(); ++j) {
            auto lhs = c_vec(x, g.mul(a, b), m_basis(a, b, i, j));
            auto rhs = m_vec(act.apply(x, a), act.apply(x, b), c_basis(x, a, i), c_basis(x, b, j));
            report.record("C3", lhs == rhs, {},
                          "x=" + std::to_string(x) + " m_{" + pt(a) + "," + pt(b) + "}(chi" + std::to_string(i) +
                              ",chi" + std::to_string(j) + ")",
                          lhs, rhs);
          }

  // C4: the unit of A(1)
  {
    const Elem one = Group::identity();
    auto u = unit_vec(one, 0);
    for (Elem x : xs)
      report.record("C4", c_basis(x, one, 0) == u, {}, "c_x(1) x=" + std::to_string(x), c_basis(x, one, 0), u);
    for (Elem e = 0; e < n; ++e)
      for (std::size_t i = 0; i < tables[e]->size(); ++i) {
        auto ei = unit_vec(e, i);
        const auto &l = m_basis(one, e, 0, i);
        const auto &r = m_basis(e, one, i, 0);
        report.record("C4", l == ei && r == ei, {}, "unit at " + pt(e) + " chi" + std::to_string(i), l, r);
      }
  }

  // C5: both association orders of the orbit-sum triple product agree at
  // every orbit representative
  auto basis = simples(h);
  auto inv_basis = invariant_basis(h);
  const std::size_t nb = basis.size();
  std::vector<IntVector> prod(nb * nb);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      prod[i * nb + j] = coordinates(h, to_labels(fuse_via_M(inv_basis[i], inv_basis[j])));
  auto times = [&](const IntVector &u, const IntVector &v) {
    IntVector out(nb, 0);
    for (std::size_t i = 0; i < nb; ++i)
      if (u[i])
        for (std::size_t j = 0; j < nb; ++j)
          if (v[j])
            for (std::size_t k = 0; k < nb; ++k)
              out[k] += u[i] * v[j] * prod[i * nb + j][k];
    return out;
  };
  auto e = [&](std::size_t i) {
    IntVector v(nb, 0);
    v[i] = 1;
    return v;
  };
  auto at = [&](const IntVector &v, Elem rep) {
    IntVector out;
    for (std::size_t k = 0; k < nb; ++k)
      if (basis[k].orbit_rep == rep)
        out.push_back(v[k]);
    return out;
  };
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < nb; ++k) {
        auto left = times(prod[i * nb + j], e(k));
        auto right = times(e(i), prod[j * nb + k]);
        for (const auto &orb : od.orbits) {
          auto l = at(left, orb.rep);
          auto r = at(right, orb.rep);
          report.record("C5", l == r, {}, "g=" + pt(orb.rep) + " " + describe(basis[i]) + describe(basis[j]) + describe(basis[k]),
                        l, r);
        }
      }

  // orbit-sum products with lex-max representatives
  for (std::size_t i = 0; i < inv_basis.size(); ++i)
    for (std::size_t j = 0; j < inv_basis.size(); ++j) {
      auto hi = coordinates(h, to_labels(fuse_via_M(inv_basis[i], inv_basis[j], RepChoice::LexMax)));
      report.record("M-reps", prod[i * nb + j] == hi, {}, describe(basis[i]) + describe(basis[j]), prod[i * nb + j],
                    hi);
    }
  return report;
}

/// H -> K_0 of the H-equivariantization, over the subgroup lattice of F.
inline MackeyFamily equivariant_k0_family(std::shared_ptr<const FusionEngine> engine, Caps caps = {})
{
  auto lattice = subgroup_lattice(engine->datum().F, caps);
  auto sub = [lattice](std::size_t h) -> const Subgroup & { return (*lattice)[h]; };
  auto simple = [engine, sub](std::size_t h, std::size_t i) { return engine->simples(sub(h)).at(i); };

  MackeyFamily fam;
  fam.name = "equiv";
  fam.lattice = lattice;
  fam.basis_size = [engine, sub](std::size_t h) { return engine->simples(sub(h)).size(); };
  fam.basis_label = [engine, simple](std::size_t h, std::size_t i) { return engine->describe(simple(h, i)); };
  fam.restrict_basis = [engine, sub, simple](std::size_t h, std::size_t k, std::size_t i) {
    return engine->coordinates(sub(k), engine->eq_restrict(sub(h), sub(k), simple(h, i)));
  };
  fam.induce_basis = [engine, sub, simple](std::size_t k, std::size_t h, std::size_t i) {
    return engine->coordinates(sub(h), engine->eq_induce(sub(k), sub(h), simple(k, i)));
  };
  fam.conjugate_basis = [engine, lattice, sub, simple](std::size_t h, Elem x, std::size_t i) {
    auto img = engine->eq_conjugate(sub(h), x, simple(h, i));
    std::size_t target = lattice->conjugate(h, x);
    return engine->coordinates(sub(target), LabelMultiset{{img.key(), 1}});
  };
  fam.multiply_basis = [engine, sub, simple](std::size_t h, std::size_t i, std::size_t j) {
    return engine->coordinates(sub(h), engine->fuse(sub(h), simple(h, i), simple(h, j)));
  };
  fam.unit = [engine, sub](std::size_t h) {
    return engine->coordinates(sub(h), LabelMultiset{{LabelKey{Group::identity(), 0}, 1}});
  };
  return fam;
}

} // namespace equifuse
