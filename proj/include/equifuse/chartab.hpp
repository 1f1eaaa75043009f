#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "modular.hpp"

namespace equifuse
{

/// Conjugacy-class structure of a subgroup (classes under conjugation by the
/// subgroup itself).
class ClassData
{
public:
  explicit ClassData(Subgroup h)
  : group_(std::move(h)), classes_(conjugacy_classes(group_))
  {
    const Group &g = *group_.parent();
    class_of_.assign(g.order(), -1);
    for (std::size_t c = 0; c < classes_.size(); ++c)
      for (Elem e : classes_[c].members)
        class_of_[e] = static_cast<int>(c);
    inverse_class_.resize(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c)
      inverse_class_[c] = static_cast<std::size_t>(class_of_[g.inv(classes_[c].rep)]);
  }

  const Subgroup &group() const noexcept
  { return group_; }

  std::size_t size() const noexcept
  { return classes_.size(); }

  const std::vector<ConjugacyClass> &classes() const noexcept
  { return classes_; }

  std::size_t class_size(std::size_t c) const
  { return classes_[c].members.size(); }

  Elem rep(std::size_t c) const
  { return classes_[c].rep; }

  /// Class index of a member of the subgroup.
  std::size_t class_of(Elem e) const
  {
    if (e >= class_of_.size() || class_of_[e] < 0)
      throw Error(ErrorCode::ElementNotInGroup, "element not in subgroup");
    return static_cast<std::size_t>(class_of_[e]);
  }

  std::size_t inverse_class(std::size_t c) const
  { return inverse_class_[c]; }

private:
  Subgroup group_;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> class_of_;
  std::vector<std::size_t> inverse_class_;
};

using ClassDataPtr = std::shared_ptr<const ClassData>;

/// A class function with values in F_p, indexed by conjugacy class.
struct ClassFunction
{
  ClassDataPtr classes;
  std::vector<Fp> values;

  const Subgroup &group() const
  { return classes->group(); }

  Fp at(Elem e) const
  { return values[classes->class_of(e)]; }

  friend bool operator==(const ClassFunction &a, const ClassFunction &b)
  { return a.classes->group() == b.classes->group() && a.values == b.values; }
};

struct CharacterTable
{
  ClassDataPtr classes;
  std::vector<ClassFunction> rows; ///< irreducibles, trivial first
  std::vector<std::int64_t> degrees;

  const Subgroup &group() const
  { return classes->group(); }

  std::size_t size() const noexcept
  { return rows.size(); }
};

using CharacterTablePtr = std::shared_ptr<const CharacterTable>;

/// Integer coordinates in the irreducible basis of a character table.
struct VirtualCharacter
{
  CharacterTablePtr table;
  std::vector<std::int64_t> coeffs;
};

namespace detail
{

// a_{jkl} = #{x in C_j : x^-1 z_l in C_k} for fixed z_l in C_l
inline Matrix class_matrix(const ClassData &cd, std::size_t j, const ModularContext &f)
{
  const Group &g = *cd.group().parent();
  const std::size_t k = cd.size();
  Matrix m(k, std::vector<Fp>(k, 0));
  for (std::size_t l = 0; l < k; ++l) {
    Elem z = cd.rep(l);
    for (Elem x : cd.classes()[j].members) {
      std::size_t c = cd.class_of(g.mul(g.inv(x), z));
      m[c][l] = f.add(m[c][l], 1);
    }
  }
  return m;
}

} // namespace detail

inline Fp inner_product_fp(const ClassFunction &a, const ClassFunction &b, const ModularContext &f)
{
  if (!(a.group() == b.group()))
    throw Error(ErrorCode::GroupMismatch, "inner product of class functions on different groups");
  const ClassData &cd = *a.classes;
  Fp s = 0;
  for (std::size_t c = 0; c < cd.size(); ++c)
    s = f.add(s, f.mul(f.mul(cd.class_size(c) % f.prime(), a.values[c]), b.values[cd.inverse_class(c)]));
  return f.mul(s, f.inv(cd.group().order() % f.prime()));
}

/// <a, b> = (1/|H|) sum_h a(h) b(h^-1), lifted symmetrically to an integer.
inline std::int64_t inner_product(const ClassFunction &a, const ClassFunction &b, const ModularContext &f)
{ return f.lift_symmetric(inner_product_fp(a, b, f)); }

/// Irreducible characters over F_p by simultaneous diagonalization of the
/// class matrices (Burnside-Dixon).
inline CharacterTable character_table(ClassDataPtr cd, const ModularContext &f)
{
  const std::size_t k = cd->size();
  const std::size_t order = cd->group().order();
  std::size_t exponent = 1;
  for (Elem e : cd->group().members())
    exponent = std::lcm(exponent, cd->group().parent()->element_order(e));
  if (order % f.prime() == 0 || (f.prime() - 1) % exponent != 0)
    throw Error(ErrorCode::EigenbasisFailure, "prime unsuitable for this group");

  using detail::Matrix;
  // each entry: a subspace in RREF (rows) with its pivot columns
  std::vector<Matrix> spaces;
  {
    Matrix id(k, std::vector<Fp>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      id[i][i] = 1;
    spaces.push_back(std::move(id));
  }
  for (std::size_t j = 1; j < k; ++j) {
    bool all_lines = true;
    for (auto &s : spaces)
      all_lines = all_lines && s.size() == 1;
    if (all_lines)
      break;
    Matrix m = detail::class_matrix(*cd, j, f);
    std::vector<Matrix> next;
    for (auto &space : spaces) {
      if (space.size() == 1) {
        next.push_back(std::move(space));
        continue;
      }
      Matrix basis = space;
      auto pivots = detail::rref(basis, f);
      const std::size_t dim = basis.size();
      // restricted operator in the coordinates of `basis`
      Matrix a(dim, std::vector<Fp>(dim, 0));
      for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Fp> img(k, 0);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c)
            img[r] = f.add(img[r], f.mul(m[r][c], basis[i][c]));
        std::vector<Fp> check(k, 0);
        for (std::size_t t = 0; t < dim; ++t) {
          a[t][i] = img[pivots[t]];
          for (std::size_t c = 0; c < k; ++c)
            check[c] = f.add(check[c], f.mul(a[t][i], basis[t][c]));
        }
        if (check != img)
          throw Error(ErrorCode::EigenbasisFailure, "class matrix does not preserve eigenspace");
      }
      auto roots = detail::distinct_roots(detail::charpoly(a, f), f);
      std::size_t covered = 0;
      for (Fp lambda : roots) {
        Matrix shifted = a;
        for (std::size_t i = 0; i < dim; ++i)
          shifted[i][i] = f.sub(shifted[i][i], lambda);
        Matrix ns = detail::nullspace(shifted, dim, f);
        Matrix sub;
        for (auto &coord : ns) {
          std::vector<Fp> v(k, 0);
          for (std::size_t t = 0; t < dim; ++t)
            for (std::size_t c = 0; c < k; ++c)
              v[c] = f.add(v[c], f.mul(coord[t], basis[t][c]));
          sub.push_back(std::move(v));
        }
        covered += sub.size();
        detail::rref(sub, f);
        next.push_back(std::move(sub));
      }
      if (covered != dim)
        throw Error(ErrorCode::EigenbasisFailure, "class matrix not diagonalizable over F_p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k)
    throw Error(ErrorCode::EigenbasisFailure, "common eigenspaces are not one-dimensional");

  CharacterTable table;
  table.classes = cd;
  for (auto &space : spaces) {
    std::vector<Fp> omega = space[0];
    if (omega[0] == 0)
      throw Error(ErrorCode::EigenbasisFailure, "central character vanishes at identity");
    Fp scale = f.inv(omega[0]);
    for (auto &v : omega)
      v = f.mul(v, scale);
    // d^2 = |H| / sum_l omega_l omega_{l*} / |C_l|
    Fp denom = 0;
    for (std::size_t l = 0; l < k; ++l)
      denom = f.add(denom, f.mul(f.mul(omega[l], omega[cd->inverse_class(l)]), f.inv(cd->class_size(l) % f.prime())));
    Fp d2 = f.mul(order % f.prime(), f.inv(denom));
    std::int64_t degree = 0;
    for (std::int64_t d = 1; static_cast<std::size_t>(d * d) <= order; ++d)
      if (f.from_int(d * d) == d2) {
        degree = d;
        break;
      }
    if (degree == 0)
      throw Error(ErrorCode::EigenbasisFailure, "no integral degree for a central character");
    ClassFunction row{cd, std::vector<Fp>(k)};
    for (std::size_t l = 0; l < k; ++l)
      row.values[l] = f.mul(f.mul(omega[l], f.from_int(degree)), f.inv(cd->class_size(l) % f.prime()));
    table.rows.push_back(std::move(row));
    table.degrees.push_back(degree);
  }

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (table.degrees[a] != table.degrees[b])
      return table.degrees[a] < table.degrees[b];
    return table.rows[a].values < table.rows[b].values;
  });
  CharacterTable sorted;
  sorted.classes = cd;
  for (auto i : perm) {
    sorted.rows.push_back(table.rows[i]);
    sorted.degrees.push_back(table.degrees[i]);
  }

  std::int64_t sum_sq = 0;
  for (auto d : sorted.degrees)
    sum_sq += d * d;
  if (static_cast<std::size_t>(sum_sq) != order)
    throw Error(ErrorCode::EigenbasisFailure, "sum of squared degrees differs from group order");
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (inner_product_fp(sorted.rows[a], sorted.rows[b], f) != (a == b ? 1u : 0u))
        throw Error(ErrorCode::EigenbasisFailure, "row orthogonality fails");
  return sorted;
}

/// Memoizes class data and character tables per subgroup for one modulus.
/// Safe for concurrent use.
class CharacterCache
{
public:
  explicit CharacterCache(ModularContext ctx)
  : ctx_(ctx)
  {}

  const ModularContext &context() const noexcept
  { return ctx_; }

  ClassDataPtr classes(const Subgroup &h) const
  {
    Key key{h.parent().get(), h.mask()};
    {
      std::lock_guard lock(mutex_);
      auto it = classes_.find(key);
      if (it != classes_.end())
        return it->second;
    }
    auto cd = std::make_shared<const ClassData>(h);
    std::lock_guard lock(mutex_);
    return classes_.emplace(std::move(key), cd).first->second;
  }

  CharacterTablePtr table(const Subgroup &h) const
  {
    Key key{h.parent().get(), h.mask()};
    {
      std::lock_guard lock(mutex_);
      auto it = tables_.find(key);
      if (it != tables_.end())
        return it->second;
    }
    auto t = std::make_shared<const CharacterTable>(character_table(classes(h), ctx_));
    std::lock_guard lock(mutex_);
    return tables_.emplace(std::move(key), t).first->second;
  }

private:
  using Key = std::pair<const Group *, Subgroup::Mask>;

  ModularContext ctx_;
  mutable std::mutex mutex_;
  mutable std::map<Key, ClassDataPtr> classes_;
  mutable std::map<Key, CharacterTablePtr> tables_;
};

inline CharacterTable character_table(const Subgroup &h, const ModularContext &f)
{ return character_table(std::make_shared<const ClassData>(h), f); }

inline CharacterTable character_table(const GroupPtr &g, const ModularContext &f)
{ return character_table(Subgroup::whole(g), f); }

// ---------------------------------------------------------------------------
// class-function calculus

inline ClassFunction trivial_character(ClassDataPtr cd)
{ return ClassFunction{cd, std::vector<Fp>(cd->size(), 1)}; }

/// Character of the regular representation: |H| at the identity, 0 elsewhere.
inline ClassFunction regular_character(ClassDataPtr cd, const ModularContext &f)
{
  ClassFunction r{cd, std::vector<Fp>(cd->size(), 0)};
  r.values[0] = cd->group().order() % f.prime();
  return r;
}

inline ClassFunction pointwise_product(const ClassFunction &a, const ClassFunction &b, const ModularContext &f)
{
  if (!(a.group() == b.group()))
    throw Error(ErrorCode::GroupMismatch, "product of class functions on different groups");
  ClassFunction r{a.classes, a.values};
  for (std::size_t c = 0; c < r.values.size(); ++c)
    r.values[c] = f.mul(a.values[c], b.values[c]);
  return r;
}

inline ClassFunction add(const ClassFunction &a, const ClassFunction &b, const ModularContext &f)
{
  if (!(a.group() == b.group()))
    throw Error(ErrorCode::GroupMismatch, "sum of class functions on different groups");
  ClassFunction r{a.classes, a.values};
  for (std::size_t c = 0; c < r.values.size(); ++c)
    r.values[c] = f.add(a.values[c], b.values[c]);
  return r;
}

inline ClassFunction scale(const ClassFunction &a, std::int64_t s, const ModularContext &f)
{
  ClassFunction r{a.classes, a.values};
  Fp m = f.from_int(s);
  for (auto &v : r.values)
    v = f.mul(v, m);
  return r;
}

/// Value at the identity, lifted symmetrically.
inline std::int64_t degree(const ClassFunction &a, const ModularContext &f)
{ return f.lift_symmetric(a.values[0]); }

/// Res^H_K.
inline ClassFunction restrict(const ClassFunction &chi, const Subgroup &k, const CharacterCache &cache)
{
  require_subgroup(k, chi.group());
  auto cd = cache.classes(k);
  ClassFunction r{cd, std::vector<Fp>(cd->size())};
  for (std::size_t c = 0; c < cd->size(); ++c)
    r.values[c] = chi.at(cd->rep(c));
  return r;
}

/// Ind_K^H via (Ind chi)(h) = |C_H(h)|/|K| * sum over K-classes c inside the
/// H-class of h of |c| chi(c), which regroups the Frobenius formula.
inline ClassFunction induce(const ClassFunction &chi, const Subgroup &h, const CharacterCache &cache)
{
  require_subgroup(chi.group(), h);
  const ModularContext &f = cache.context();
  auto cd = cache.classes(h);
  const ClassData &kc = *chi.classes;
  std::vector<Fp> acc(cd->size(), 0);
  for (std::size_t c = 0; c < kc.size(); ++c) {
    std::size_t hc = cd->class_of(kc.rep(c));
    acc[hc] = f.add(acc[hc], f.mul(kc.class_size(c) % f.prime(), chi.values[c]));
  }
  ClassFunction r{cd, std::vector<Fp>(cd->size())};
  Fp hk = f.inv(kc.group().order() % f.prime());
  for (std::size_t c = 0; c < cd->size(); ++c) {
    Fp centralizer_order = f.mul(h.order() % f.prime(), f.inv(cd->class_size(c) % f.prime()));
    r.values[c] = f.mul(f.mul(acc[c], centralizer_order), hk);
  }
  return r;
}

/// (x chi)(y) = chi(x^-1 y x), a class function on x H x^-1.
inline ClassFunction conjugate_cf(const ClassFunction &chi, Elem x, const CharacterCache &cache)
{
  const Subgroup &h = chi.group();
  const Group &g = *h.parent();
  g.require(x);
  auto cd = cache.classes(h.conjugate(x));
  ClassFunction r{cd, std::vector<Fp>(cd->size())};
  Elem xi = g.inv(x);
  for (std::size_t c = 0; c < cd->size(); ++c)
    r.values[c] = chi.at(g.conj(xi, cd->rep(c)));
  return r;
}

/// Coordinates in the irreducible basis; throws NotInSpan if they do not
/// reproduce f exactly.
inline VirtualCharacter decompose(const ClassFunction &fn, const CharacterTablePtr &table, const ModularContext &f)
{
  if (!(fn.group() == table->group()))
    throw Error(ErrorCode::GroupMismatch, "decomposing against the table of another group");
  VirtualCharacter v{table, std::vector<std::int64_t>(table->size())};
  std::vector<Fp> rebuilt(fn.values.size(), 0);
  for (std::size_t i = 0; i < table->size(); ++i) {
    Fp c = inner_product_fp(fn, table->rows[i], f);
    v.coeffs[i] = f.lift_symmetric(c);
    for (std::size_t k = 0; k < rebuilt.size(); ++k)
      rebuilt[k] = f.add(rebuilt[k], f.mul(c, table->rows[i].values[k]));
  }
  if (rebuilt != fn.values)
    throw Error(ErrorCode::NotInSpan, "class function is not reproduced by its decomposition");
  return v;
}

/// sum_i coeffs[i] chi_i.
inline ClassFunction compose(const CharacterTable &table, std::span<const std::int64_t> coeffs, const ModularContext &f)
{
  ClassFunction r{table.classes, std::vector<Fp>(table.classes->size(), 0)};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0)
      continue;
    Fp c = f.from_int(coeffs[i]);
    for (std::size_t k = 0; k < r.values.size(); ++k)
      r.values[k] = f.add(r.values[k], f.mul(c, table.rows[i].values[k]));
  }
  return r;
}

/// Display helper: multiplicities m_k of zeta^k (zeta = ctx.root_of_unity(n),
/// n = order of the class representative) among the eigenvalues of a
/// representation with character `chi` at that class. chi(rep) is then
/// sum_k m_k zeta^k over the cyclotomic integers.
inline std::vector<std::int64_t> eigenvalue_multiplicities(const ClassFunction &chi, std::size_t cls,
                                                           const ModularContext &f)
{
  const ClassData &cd = *chi.classes;
  const Group &g = *cd.group().parent();
  Elem x = cd.rep(cls);
  const std::size_t n = g.element_order(x);
  Fp zeta = f.root_of_unity(n);
  std::vector<Fp> powers(n);
  Elem y = Group::identity();
  for (std::size_t j = 0; j < n; ++j) {
    powers[j] = chi.at(y);
    y = g.mul(x, y);
  }
  std::vector<std::int64_t> m(n);
  Fp ninv = f.inv(n % f.prime());
  for (std::size_t k = 0; k < n; ++k) {
    Fp s = 0;
    for (std::size_t j = 0; j < n; ++j)
      s = f.add(s, f.mul(powers[j], f.pow(zeta, (n - (j * k) % n) % n)));
    m[k] = f.lift_symmetric(f.mul(s, ninv));
  }
  return m;
}

} // namespace equifuse
