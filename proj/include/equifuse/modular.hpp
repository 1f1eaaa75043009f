#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace equifuse
{

using Fp = std::uint64_t;

namespace detail
{

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{ return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m); }

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0)
      return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
      continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite)
      return false;
  }
  return true;
}

} // namespace detail

/// Arithmetic in F_p for a prime chosen so that every group in a scenario
/// splits over F_p and every nonnegative integer below the bound lifts
/// uniquely.
class ModularContext
{
public:
  static constexpr std::uint64_t search_limit = std::uint64_t{1} << 62;

  /// Smallest prime p with p = 1 (mod lcm of exponents) and p > max order^3.
  static ModularContext for_groups(std::span<const GroupPtr> groups)
  {
    auto [lcm, bound] = requirements(groups);
    std::uint64_t start = bound + 1;
    std::uint64_t c = start + (lcm - (start - 1) % lcm) % lcm;
    for (; c < search_limit; c += lcm)
      if (detail::is_prime(c))
        return ModularContext(c, lcm, bound);
    throw Error(ErrorCode::InternalError, "prime search exceeded 2^62");
  }

  /// Uses an explicit prime; throws InvalidInput unless it satisfies the
  /// same requirements as the automatic choice.
  static ModularContext with_prime(std::uint64_t p, std::span<const GroupPtr> groups)
  {
    auto [lcm, bound] = requirements(groups);
    if (p >= search_limit || !detail::is_prime(p))
      throw Error(ErrorCode::InvalidInput, std::to_string(p) + " is not a prime below 2^62");
    if (p % lcm != 1 % lcm)
      throw Error(ErrorCode::InvalidInput,
                  "prime " + std::to_string(p) + " is not 1 mod exponent lcm " + std::to_string(lcm));
    if (p <= bound)
      throw Error(ErrorCode::InvalidInput,
                  "prime " + std::to_string(p) + " does not exceed bound " + std::to_string(bound));
    return ModularContext(p, lcm, bound);
  }

  std::uint64_t prime() const noexcept
  { return p_; }

  std::uint64_t exponent_lcm() const noexcept
  { return lcm_; }

  std::uint64_t bound() const noexcept
  { return bound_; }

  Fp add(Fp a, Fp b) const noexcept
  {
    Fp s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  Fp sub(Fp a, Fp b) const noexcept
  { return a >= b ? a - b : a + p_ - b; }

  Fp neg(Fp a) const noexcept
  { return a == 0 ? 0 : p_ - a; }

  Fp mul(Fp a, Fp b) const noexcept
  { return detail::mulmod(a, b, p_); }

  Fp pow(Fp a, std::uint64_t e) const noexcept
  { return detail::powmod(a, e, p_); }

  Fp inv(Fp a) const
  {
    if (a % p_ == 0)
      throw Error(ErrorCode::InternalError, "inverse of zero mod p");
    return pow(a, p_ - 2);
  }

  Fp from_int(std::int64_t v) const noexcept
  {
    auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    return static_cast<Fp>(r < 0 ? r + m : r);
  }

  /// Representative in (-p/2, p/2].
  std::int64_t lift_symmetric(Fp a) const noexcept
  { return a > p_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_) : static_cast<std::int64_t>(a); }

  /// A fixed primitive n-th root of unity (n must divide p-1): g^((p-1)/n)
  /// for the smallest primitive root g.
  Fp root_of_unity(std::uint64_t n) const
  {
    if (n == 0 || (p_ - 1) % n != 0)
      throw Error(ErrorCode::InvalidInput, "no primitive root of unity of order " + std::to_string(n));
    return pow(primitive_root(), (p_ - 1) / n);
  }

  Fp primitive_root() const
  {
    std::vector<std::uint64_t> factors;
    std::uint64_t m = p_ - 1;
    for (std::uint64_t q = 2; q * q <= m; ++q)
      if (m % q == 0) {
        factors.push_back(q);
        while (m % q == 0)
          m /= q;
      }
    if (m > 1)
      factors.push_back(m);
    for (Fp g = 1; g < p_; ++g) {
      bool ok = true;
      for (auto q : factors)
        if (pow(g, (p_ - 1) / q) == 1) {
          ok = false;
          break;
        }
      if (ok)
        return g;
    }
    throw Error(ErrorCode::InternalError, "no primitive root");
  }

private:
  ModularContext(std::uint64_t p, std::uint64_t lcm, std::uint64_t bound)
  : p_(p), lcm_(lcm), bound_(bound)
  {}

  static std::pair<std::uint64_t, std::uint64_t> requirements(std::span<const GroupPtr> groups)
  {
    std::uint64_t lcm = 1, order = 1;
    for (const auto &g : groups) {
      lcm = std::lcm(lcm, static_cast<std::uint64_t>(g->exponent()));
      order = std::max<std::uint64_t>(order, g->order());
    }
    return {lcm, order * order * order};
  }

  std::uint64_t p_ = 2;
  std::uint64_t lcm_ = 1;
  std::uint64_t bound_ = 1;
};

inline ModularContext make_context(std::initializer_list<GroupPtr> groups)
{
  std::vector<GroupPtr> v(groups);
  return ModularContext::for_groups(v);
}

namespace detail
{

using Poly = std::vector<Fp>; // coefficients, lowest degree first
using Matrix = std::vector<std::vector<Fp>>;

inline void trim(Poly &a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly &m, const ModularContext &f)
{
  trim(a);
  Fp lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    Fp c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  return a;
}

inline Poly poly_divide(Poly a, const Poly &m, const ModularContext &f)
{
  trim(a);
  if (a.size() < m.size())
    return {};
  Poly q(a.size() - m.size() + 1, 0);
  Fp lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    Fp c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - m.size();
    q[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  return q;
}

inline Poly poly_mulmod(const Poly &a, const Poly &b, const Poly &m, const ModularContext &f)
{
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  return poly_mod(std::move(r), m, f);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly &m, const ModularContext &f)
{
  Poly r = poly_mod(Poly{1}, m, f);
  base = poly_mod(std::move(base), m, f);
  while (e) {
    if (e & 1)
      r = poly_mulmod(r, base, m, f);
    base = poly_mulmod(base, base, m, f);
    e >>= 1;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, const ModularContext &f)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Fp li = f.inv(a.back());
    for (auto &c : a)
      c = f.mul(c, li);
  }
  return a;
}

inline Fp poly_eval(const Poly &a, Fp x, const ModularContext &f)
{
  Fp r = 0;
  for (std::size_t i = a.size(); i-- > 0;)
    r = f.add(f.mul(r, x), a[i]);
  return r;
}

/// Distinct roots in F_p of a polynomial, in ascending order.
inline std::vector<Fp> distinct_roots(Poly poly, const ModularContext &f)
{
  trim(poly);
  std::vector<Fp> roots;
  if (poly.size() <= 1)
    return roots;
  const Fp p = f.prime();
  if (p < 4096) {
    for (Fp x = 0; x < p; ++x)
      if (poly_eval(poly, x, f) == 0)
        roots.push_back(x);
    return roots;
  }
  // product of the distinct linear factors: gcd(poly, x^p - x)
  Poly xp = poly_powmod(Poly{0, 1}, p, poly, f);
  if (xp.size() < 2)
    xp.resize(2, 0);
  xp[1] = f.sub(xp[1], 1);
  Poly split = poly_gcd(poly, xp, f);

  std::mt19937_64 rng(0x5eed);
  std::vector<Poly> work{split};
  while (!work.empty()) {
    Poly g = std::move(work.back());
    work.pop_back();
    if (g.size() <= 1)
      continue;
    if (g.size() == 2) {
      roots.push_back(f.mul(f.neg(g[0]), f.inv(g[1])));
      continue;
    }
    for (;;) {
      Fp a = rng() % p;
      Poly h = poly_powmod(Poly{a, 1}, (p - 1) / 2, g, f);
      if (h.empty())
        h.push_back(0);
      h[0] = f.sub(h[0], 1);
      Poly d = poly_gcd(g, h, f);
      if (d.size() > 1 && d.size() < g.size()) {
        work.push_back(poly_divide(g, d, f));
        work.push_back(std::move(d));
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
inline Poly charpoly(Matrix a, const ModularContext &f)
{
  const std::size_t n = a.size();
  for (std::size_t j = 0; j + 2 <= n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && a[piv][j] == 0)
      ++piv;
    if (piv == n)
      continue;
    if (piv != j + 1) {
      std::swap(a[piv], a[j + 1]);
      for (std::size_t r = 0; r < n; ++r)
        std::swap(a[r][piv], a[r][j + 1]);
    }
    Fp pinv = f.inv(a[j + 1][j]);
    for (std::size_t k = j + 2; k < n; ++k) {
      Fp u = f.mul(a[k][j], pinv);
      if (u == 0)
        continue;
      for (std::size_t c = 0; c < n; ++c)
        a[k][c] = f.sub(a[k][c], f.mul(u, a[j + 1][c]));
      for (std::size_t r = 0; r < n; ++r)
        a[r][j + 1] = f.add(a[r][j + 1], f.mul(u, a[r][k]));
    }
  }
  std::vector<Poly> p(n + 1);
  p[0] = Poly{1};
  for (std::size_t k = 1; k <= n; ++k) {
    // (x - h_kk) p_{k-1}
    Poly next(k + 1, 0);
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      next[i + 1] = f.add(next[i + 1], p[k - 1][i]);
      next[i] = f.sub(next[i], f.mul(a[k - 1][k - 1], p[k - 1][i]));
    }
    Fp t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = f.mul(t, a[k - i][k - i - 1]);
      Fp c = f.mul(t, a[k - i - 1][k - 1]);
      for (std::size_t d = 0; d < p[k - i - 1].size(); ++d)
        next[d] = f.sub(next[d], f.mul(c, p[k - i - 1][d]));
    }
    p[k] = std::move(next);
  }
  return p[n];
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix &rows, const ModularContext &f)
{
  std::vector<std::size_t> pivots;
  if (rows.empty())
    return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0)
      ++piv;
    if (piv == rows.size())
      continue;
    std::swap(rows[piv], rows[r]);
    Fp inv = f.inv(rows[r][c]);
    for (auto &v : rows[r])
      v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0)
        continue;
      Fp u = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k)
        rows[i][k] = f.sub(rows[i][k], f.mul(u, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Basis of { v : a v = 0 }.
inline Matrix nullspace(Matrix a, std::size_t cols, const ModularContext &f)
{
  auto pivots = rref(a, f);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots)
    is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free])
      continue;
    std::vector<Fp> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = f.neg(a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace detail

} // namespace equifuse
