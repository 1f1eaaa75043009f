#pragma once

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "chartab.hpp"
#include "error.hpp"
#include "group.hpp"
#include "report.hpp"

namespace equifuse
{

/// A family {a(H)} of free Z-modules over the subgroup lattice of G together
/// with restriction, induction and conjugation (and optionally a ring
/// structure). Maps are given on basis vectors and extended linearly.
/// Subgroups are addressed by lattice index.
struct MackeyFamily
{
  std::string name;
  LatticePtr lattice;
  std::function<std::size_t(std::size_t h)> basis_size;
  std::function<std::string(std::size_t h, std::size_t i)> basis_label;
  /// R^H_K on e_i, K <= H.
  std::function<IntVector(std::size_t h, std::size_t k, std::size_t i)> restrict_basis;
  /// I^H_K on e_i, K <= H.
  std::function<IntVector(std::size_t k, std::size_t h, std::size_t i)> induce_basis;
  /// c_{H,x}: a(H) -> a(xHx^-1) on e_i.
  std::function<IntVector(std::size_t h, Elem x, std::size_t i)> conjugate_basis;
  std::function<IntVector(std::size_t h, std::size_t i, std::size_t j)> multiply_basis;
  std::function<IntVector(std::size_t h)> unit;

  const GroupPtr &ambient() const
  { return lattice->group(); }

  bool has_ring() const noexcept
  { return static_cast<bool>(multiply_basis) && static_cast<bool>(unit); }

  IntVector restrict(std::size_t h, std::size_t k, const IntVector &v) const
  {
    require_le(k, h);
    return extend(v, basis_size(k), [&](std::size_t i) { return restrict_basis(h, k, i); });
  }

  IntVector induce(std::size_t k, std::size_t h, const IntVector &v) const
  {
    require_le(k, h);
    return extend(v, basis_size(h), [&](std::size_t i) { return induce_basis(k, h, i); });
  }

  IntVector conjugate(std::size_t h, Elem x, const IntVector &v) const
  {
    ambient()->require(x);
    return extend(v, basis_size(lattice->conjugate(h, x)), [&](std::size_t i) { return conjugate_basis(h, x, i); });
  }

  IntVector multiply(std::size_t h, const IntVector &v, const IntVector &w) const
  {
    if (!has_ring())
      throw Error(ErrorCode::NoRingStructure, "family " + name + " has no ring structure");
    IntVector out(basis_size(h), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0)
        continue;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] == 0)
          continue;
        auto p = multiply_basis(h, i, j);
        for (std::size_t t = 0; t < p.size(); ++t)
          out[t] += v[i] * w[j] * p[t];
      }
    }
    return out;
  }

  IntVector basis_vector(std::size_t h, std::size_t i) const
  {
    IntVector e(basis_size(h), 0);
    e.at(i) = 1;
    return e;
  }

private:
  void require_le(std::size_t k, std::size_t h) const
  {
    if (!lattice->contains(h, k))
      throw Error(ErrorCode::NotASubgroup, "lattice subgroup " + std::to_string(k) + " is not contained in " +
                                               std::to_string(h));
  }

  template<typename F>
  static IntVector extend(const IntVector &v, std::size_t out_dim, F &&on_basis)
  {
    IntVector out(out_dim, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0)
        continue;
      auto img = on_basis(i);
      for (std::size_t t = 0; t < img.size(); ++t)
        out[t] += v[i] * img[t];
    }
    return out;
  }
};

/// H -> R(H): virtual characters in the irreducible basis, with the classical
/// restriction, Frobenius induction, conjugation and tensor product.
inline MackeyFamily char_ring_family(const GroupPtr &g, const ModularContext &ctx, Caps caps = {})
{
  auto lattice = subgroup_lattice(g, caps);
  auto cache = std::make_shared<CharacterCache>(ctx);
  auto table = [lattice, cache](std::size_t h) { return cache->table((*lattice)[h]); };

  MackeyFamily fam;
  fam.name = "char";
  fam.lattice = lattice;
  fam.basis_size = [table](std::size_t h) { return table(h)->size(); };
  fam.basis_label = [table](std::size_t h, std::size_t i) {
    return "chi" + std::to_string(i) + "[deg " + std::to_string(table(h)->degrees.at(i)) + "]";
  };
  fam.restrict_basis = [table, lattice, cache](std::size_t h, std::size_t k, std::size_t i) {
    auto res = restrict(table(h)->rows.at(i), (*lattice)[k], *cache);
    return decompose(res, table(k), cache->context()).coeffs;
  };
  fam.induce_basis = [table, lattice, cache](std::size_t k, std::size_t h, std::size_t i) {
    auto ind = induce(table(k)->rows.at(i), (*lattice)[h], *cache);
    return decompose(ind, table(h), cache->context()).coeffs;
  };
  fam.conjugate_basis = [table, lattice, cache](std::size_t h, Elem x, std::size_t i) {
    auto cf = conjugate_cf(table(h)->rows.at(i), x, *cache);
    return decompose(cf, table(lattice->conjugate(h, x)), cache->context()).coeffs;
  };
  fam.multiply_basis = [table, cache](std::size_t h, std::size_t i, std::size_t j) {
    auto t = table(h);
    return decompose(pointwise_product(t->rows.at(i), t->rows.at(j), cache->context()), t, cache->context()).coeffs;
  };
  fam.unit = [table](std::size_t h) {
    IntVector u(table(h)->size(), 0);
    u[0] = 1;
    return u;
  };
  return fam;
}

namespace detail
{

inline std::string format_vector(const IntVector &v)
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

/// Memoized basis matrices of a family, so axiom checks call each of the
/// family's maps at most once per input.
class FamilyMaps
{
public:
  using Columns = std::vector<IntVector>;

  explicit FamilyMaps(const MackeyFamily &fam)
  : fam_(fam)
  {}

  const MackeyFamily &family() const
  { return fam_; }

  std::size_t dim(std::size_t h)
  {
    auto it = dims_.find(h);
    if (it != dims_.end())
      return it->second;
    return dims_[h] = fam_.basis_size(h);
  }

  const Columns &restriction(std::size_t h, std::size_t k)
  {
    auto key = std::make_tuple(h, k, std::size_t{0});
    auto it = r_.find(key);
    if (it != r_.end())
      return it->second;
    Columns cols;
    for (std::size_t i = 0; i < dim(h); ++i)
      cols.push_back(padded(fam_.restrict_basis(h, k, i), dim(k)));
    return r_[key] = std::move(cols);
  }

  const Columns &induction(std::size_t k, std::size_t h)
  {
    auto key = std::make_tuple(k, h, std::size_t{0});
    auto it = i_.find(key);
    if (it != i_.end())
      return it->second;
    Columns cols;
    for (std::size_t i = 0; i < dim(k); ++i)
      cols.push_back(padded(fam_.induce_basis(k, h, i), dim(h)));
    return i_[key] = std::move(cols);
  }

  const Columns &conjugation(std::size_t h, Elem x)
  {
    auto key = std::make_tuple(h, static_cast<std::size_t>(x), std::size_t{0});
    auto it = c_.find(key);
    if (it != c_.end())
      return it->second;
    std::size_t target = fam_.lattice->conjugate(h, x);
    Columns cols;
    for (std::size_t i = 0; i < dim(h); ++i)
      cols.push_back(padded(fam_.conjugate_basis(h, x, i), dim(target)));
    return c_[key] = std::move(cols);
  }

  const IntVector &product(std::size_t h, std::size_t i, std::size_t j)
  {
    auto key = std::make_tuple(h, i, j);
    auto it = m_.find(key);
    if (it != m_.end())
      return it->second;
    return m_[key] = padded(fam_.multiply_basis(h, i, j), dim(h));
  }

  const IntVector &unit(std::size_t h)
  {
    auto it = u_.find(h);
    if (it != u_.end())
      return it->second;
    return u_[h] = padded(fam_.unit(h), dim(h));
  }

  IntVector multiply(std::size_t h, const IntVector &v, const IntVector &w)
  {
    IntVector out(dim(h), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0)
        continue;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] == 0)
          continue;
        const auto &p = product(h, i, j);
        for (std::size_t t = 0; t < p.size(); ++t)
          out[t] += v[i] * w[j] * p[t];
      }
    }
    return out;
  }

  static IntVector apply(const Columns &cols, const IntVector &v, std::size_t out_dim)
  {
    IntVector out(out_dim, 0);
    for (std::size_t i = 0; i < v.size() && i < cols.size(); ++i) {
      if (v[i] == 0)
        continue;
      for (std::size_t t = 0; t < out_dim; ++t)
        out[t] += v[i] * cols[i][t];
    }
    return out;
  }

  IntVector basis(std::size_t h, std::size_t i)
  {
    IntVector e(dim(h), 0);
    e[i] = 1;
    return e;
  }

private:
  static IntVector padded(IntVector v, std::size_t n)
  {
    if (v.size() != n)
      throw Error(ErrorCode::InternalError, "family map returned a vector of the wrong length");
    return v;
  }

  const MackeyFamily &fam_;
  std::map<std::size_t, std::size_t> dims_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Columns> r_, i_, c_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, IntVector> m_;
  std::map<std::size_t, IntVector> u_;
};

inline void require_closed_lattice(const SubgroupLattice &lat)
{
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t j = 0; j < lat.size(); ++j)
      if (!lat.find(lat[i].intersect(lat[j])))
        throw Error(ErrorCode::InvalidInput, "lattice not closed under intersection");
}

/// sum over x in H\L/K of I^H_{xK n H} R^{xK}_{xK n H} c_{K,x} (v)
inline IntVector mackey_rhs(FamilyMaps &maps, std::size_t l, std::size_t h, std::size_t k, const IntVector &v)
{
  const auto &lat = *maps.family().lattice;
  IntVector out(maps.dim(h), 0);
  for (Elem x : double_coset_reps(lat[l], lat[h], lat[k])) {
    std::size_t xk = lat.conjugate(k, x);
    std::size_t j = lat.intersect(xk, h);
    auto c = FamilyMaps::apply(maps.conjugation(k, x), v, maps.dim(xk));
    auto r = FamilyMaps::apply(maps.restriction(xk, j), c, maps.dim(j));
    auto i = FamilyMaps::apply(maps.induction(j, h), r, maps.dim(h));
    for (std::size_t t = 0; t < out.size(); ++t)
      out[t] += i[t];
  }
  return out;
}

inline IntVector mackey_lhs(FamilyMaps &maps, std::size_t l, std::size_t h, std::size_t k, const IntVector &v)
{
  auto ind = FamilyMaps::apply(maps.induction(k, l), v, maps.dim(l));
  return FamilyMaps::apply(maps.restriction(l, h), ind, maps.dim(h));
}

} // namespace detail

/// Right-hand side of the Mackey formula for R^L_H I^L_K applied to v in
/// a(K); L defaults to the whole group.
inline IntVector mackey_rhs(const MackeyFamily &fam, std::size_t h, std::size_t k, const IntVector &v,
                            std::optional<std::size_t> l = std::nullopt)
{
  std::size_t top = l.value_or(fam.lattice->whole());
  if (!fam.lattice->contains(top, h) || !fam.lattice->contains(top, k))
    throw Error(ErrorCode::NotASubgroup, "H and K must lie in the overgroup");
  detail::FamilyMaps maps(fam);
  return detail::mackey_rhs(maps, top, h, k, v);
}

/// R^L_H I^L_K (v), the left-hand side of the same formula.
inline IntVector mackey_lhs(const MackeyFamily &fam, std::size_t h, std::size_t k, const IntVector &v,
                            std::optional<std::size_t> l = std::nullopt)
{
  std::size_t top = l.value_or(fam.lattice->whole());
  if (!fam.lattice->contains(top, h) || !fam.lattice->contains(top, k))
    throw Error(ErrorCode::NotASubgroup, "H and K must lie in the overgroup");
  detail::FamilyMaps maps(fam);
  return detail::mackey_lhs(maps, top, h, k, v);
}

/// Exhaustive check of M0-M4 over the family's lattice. "M4" is the Mackey
/// formula inside the whole group, "M4-rel" inside every proper common
/// overgroup.
inline AxiomReport verify_mackey_axioms(const MackeyFamily &fam)
{
  const auto &lat = *fam.lattice;
  const Group &g = *lat.group();
  detail::require_closed_lattice(lat);
  detail::FamilyMaps maps(fam);
  using detail::FamilyMaps;
  using detail::format_vector;
  AxiomReport report({"M0", "M1", "M2", "M3", "M4", "M4-rel"});
  const std::size_t n = lat.size();

  auto basis_name = [&](std::size_t h, std::size_t i) {
    return fam.basis_label ? fam.basis_label(h, i) : "e" + std::to_string(i);
  };

  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < maps.dim(h); ++i) {
      auto e = maps.basis(h, i);
      auto r = FamilyMaps::apply(maps.restriction(h, h), e, maps.dim(h));
      report.record("M0", r == e, {h}, "R^H_H " + basis_name(h, i), r, e);
      auto ind = FamilyMaps::apply(maps.induction(h, h), e, maps.dim(h));
      report.record("M0", ind == e, {h}, "I^H_H " + basis_name(h, i), ind, e);
      for (Elem x : lat[h].members()) {
        auto c = FamilyMaps::apply(maps.conjugation(h, x), e, maps.dim(h));
        report.record("M0", c == e, {h}, "c_{H,h} h=" + std::to_string(x) + " " + basis_name(h, i), c, e);
      }
    }

  // M1 / M2: J <= K <= H
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) {
      if (!lat.contains(h, k))
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!lat.contains(k, j))
          continue;
        for (std::size_t i = 0; i < maps.dim(h); ++i) {
          auto e = maps.basis(h, i);
          auto two = FamilyMaps::apply(maps.restriction(k, j),
                                       FamilyMaps::apply(maps.restriction(h, k), e, maps.dim(k)), maps.dim(j));
          auto one = FamilyMaps::apply(maps.restriction(h, j), e, maps.dim(j));
          report.record("M1", two == one, {j, k, h}, "R^K_J R^H_K " + basis_name(h, i), two, one);
        }
        for (std::size_t i = 0; i < maps.dim(j); ++i) {
          auto e = maps.basis(j, i);
          auto two = FamilyMaps::apply(maps.induction(k, h),
                                       FamilyMaps::apply(maps.induction(j, k), e, maps.dim(k)), maps.dim(h));
          auto one = FamilyMaps::apply(maps.induction(j, h), e, maps.dim(h));
          report.record("M2", two == one, {j, k, h}, "I^H_K I^K_J " + basis_name(j, i), two, one);
        }
      }
    }

  // M3: c_{hH,g} c_{H,h} = c_{H,gh}
  for (std::size_t h = 0; h < n; ++h)
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b) {
        std::size_t hb = lat.conjugate(h, b);
        std::size_t target = lat.conjugate(h, g.mul(a, b));
        for (std::size_t i = 0; i < maps.dim(h); ++i) {
          auto e = maps.basis(h, i);
          auto two = FamilyMaps::apply(maps.conjugation(hb, a),
                                       FamilyMaps::apply(maps.conjugation(h, b), e, maps.dim(hb)), maps.dim(target));
          auto one = FamilyMaps::apply(maps.conjugation(h, g.mul(a, b)), e, maps.dim(target));
          report.record("M3", two == one, {h},
                        "x=" + std::to_string(a) + " y=" + std::to_string(b) + " " + basis_name(h, i), two, one);
        }
      }

  // M4 inside every overgroup L of H and K
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t h = 0; h < n; ++h) {
      if (!lat.contains(l, h))
        continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!lat.contains(l, k))
          continue;
        const std::string id = l == lat.whole() ? "M4" : "M4-rel";
        for (std::size_t i = 0; i < maps.dim(k); ++i) {
          auto e = maps.basis(k, i);
          auto lhs = detail::mackey_lhs(maps, l, h, k, e);
          auto rhs = detail::mackey_rhs(maps, l, h, k, e);
          report.record(id, lhs == rhs, {h, k, l}, "R^L_H I^L_K " + basis_name(k, i), lhs, rhs);
        }
      }
    }
  return report;
}

/// Exhaustive check of the ring axioms: each a(H) associative and unital
/// ("RING"), R and c unital ring maps (G1), and both projection formulas
/// (G2, G3).
inline AxiomReport verify_green_axioms(const MackeyFamily &fam)
{
  if (!fam.has_ring())
    throw Error(ErrorCode::NoRingStructure, "family " + fam.name + " has no ring structure");
  const auto &lat = *fam.lattice;
  const Group &g = *lat.group();
  detail::require_closed_lattice(lat);
  detail::FamilyMaps maps(fam);
  using detail::FamilyMaps;
  AxiomReport report({"RING", "G1", "G2", "G3"});
  const std::size_t n = lat.size();
  auto tag = [](std::size_t i, std::size_t j) { return "e" + std::to_string(i) + ",e" + std::to_string(j); };

  for (std::size_t h = 0; h < n; ++h) {
    const std::size_t d = maps.dim(h);
    const auto &u = maps.unit(h);
    for (std::size_t i = 0; i < d; ++i) {
      auto e = maps.basis(h, i);
      auto l = maps.multiply(h, u, e);
      auto r = maps.multiply(h, e, u);
      report.record("RING", l == e && r == e, {h}, "unit law e" + std::to_string(i), l, r);
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          auto left = maps.multiply(h, maps.product(h, i, j), maps.basis(h, k));
          auto right = maps.multiply(h, maps.basis(h, i), maps.product(h, j, k));
          report.record("RING", left == right, {h}, "assoc " + tag(i, j) + ",e" + std::to_string(k), left, right);
        }
  }

  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) {
      if (!lat.contains(h, k))
        continue;
      const auto &res = maps.restriction(h, k);
      auto ru = FamilyMaps::apply(res, maps.unit(h), maps.dim(k));
      report.record("G1", ru == maps.unit(k), {h, k}, "R(1) = 1", ru, maps.unit(k));
      for (std::size_t i = 0; i < maps.dim(h); ++i)
        for (std::size_t j = 0; j < maps.dim(h); ++j) {
          auto lhs = FamilyMaps::apply(res, maps.product(h, i, j), maps.dim(k));
          auto rhs = maps.multiply(k, res[i], res[j]);
          report.record("G1", lhs == rhs, {h, k}, "R(ab) " + tag(i, j), lhs, rhs);
        }
    }

  for (std::size_t h = 0; h < n; ++h)
    for (Elem x = 0; x < g.order(); ++x) {
      std::size_t xh = lat.conjugate(h, x);
      const auto &c = maps.conjugation(h, x);
      auto cu = FamilyMaps::apply(c, maps.unit(h), maps.dim(xh));
      report.record("G1", cu == maps.unit(xh), {h, xh}, "c(1) = 1, x=" + std::to_string(x), cu, maps.unit(xh));
      for (std::size_t i = 0; i < maps.dim(h); ++i)
        for (std::size_t j = 0; j < maps.dim(h); ++j) {
          auto lhs = FamilyMaps::apply(c, maps.product(h, i, j), maps.dim(xh));
          auto rhs = maps.multiply(xh, c[i], c[j]);
          report.record("G1", lhs == rhs, {h, xh}, "c(ab) x=" + std::to_string(x) + " " + tag(i, j), lhs, rhs);
        }
    }

  // K <= H, a in a(K), b in a(H)
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) {
      if (!lat.contains(h, k))
        continue;
      const auto &res = maps.restriction(h, k);
      const auto &ind = maps.induction(k, h);
      for (std::size_t i = 0; i < maps.dim(k); ++i)
        for (std::size_t j = 0; j < maps.dim(h); ++j) {
          auto a = maps.basis(k, i);
          auto b = maps.basis(h, j);
          auto lhs2 = FamilyMaps::apply(ind, maps.multiply(k, a, res[j]), maps.dim(h));
          auto rhs2 = maps.multiply(h, ind[i], b);
          report.record("G2", lhs2 == rhs2, {k, h}, "I(a R(b)) " + tag(i, j), lhs2, rhs2);
          auto lhs3 = FamilyMaps::apply(ind, maps.multiply(k, res[j], a), maps.dim(h));
          auto rhs3 = maps.multiply(h, b, ind[i]);
          report.record("G3", lhs3 == rhs3, {k, h}, "I(R(b) a) " + tag(i, j), lhs3, rhs3);
        }
    }
  return report;
}

} // namespace equifuse
