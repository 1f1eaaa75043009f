#include <gtest/gtest.h>

#include <equifuse/modular.hpp>

using namespace equifuse;

namespace
{

GroupPtr s3()
{ return build_group(3, {Perm({1, 0, 2}), Perm({1, 2, 0})}); }

GroupPtr z4()
{ return build_group(4, {Perm({1, 2, 3, 0})}); }

bool naive_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// Direct search: smallest prime p = 1 mod lcm with p > bound.
std::uint64_t naive_search(std::uint64_t lcm, std::uint64_t bound)
{
  for (std::uint64_t p = bound + 1;; ++p)
    if (p % lcm == 1 % lcm && naive_prime(p))
      return p;
}

} // namespace

TEST(Modular, PrimalityAgreesWithTrialDivision)
{
  for (std::uint64_t n = 0; n < 5000; ++n)
    EXPECT_EQ(detail::is_prime(n), naive_prime(n)) << n;
  EXPECT_TRUE(detail::is_prime(2305843009213693951ull)); // 2^61 - 1
  EXPECT_FALSE(detail::is_prime(3215031751ull));          // strong pseudoprime to 2, 3, 5, 7
}

TEST(Modular, PrimeChoice)
{
  EXPECT_EQ(make_context({build_group(1, {})}).prime(), 2u);
  EXPECT_EQ(make_context({s3()}).prime(), naive_search(6, 216));
  EXPECT_EQ(make_context({s3()}).prime(), 223u);
  EXPECT_EQ(make_context({z4()}).prime(), naive_search(4, 64));
  EXPECT_EQ(make_context({z4()}).prime(), 73u);
  // covers every group in the scenario
  auto ctx = make_context({s3(), z4()});
  EXPECT_EQ(ctx.exponent_lcm(), 12u);
  EXPECT_EQ(ctx.prime(), naive_search(12, 216));
}

TEST(Modular, ExplicitPrime)
{
  std::vector<GroupPtr> gs{s3()};
  EXPECT_EQ(ModularContext::with_prime(229, gs).prime(), 229u);
  EXPECT_THROW(ModularContext::with_prime(221, gs), Error); // 13 * 17
  EXPECT_THROW(ModularContext::with_prime(211, gs), Error); // below the bound
  EXPECT_THROW(ModularContext::with_prime(227, gs), Error); // 227 = 5 mod 6
}

TEST(Modular, Arithmetic)
{
  auto f = make_context({s3()});
  const Fp p = f.prime();
  for (Fp a = 1; a < p; ++a)
    EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.from_int(-1), p - 1);
  EXPECT_EQ(f.lift_symmetric(p - 3), -3);
  EXPECT_EQ(f.lift_symmetric(5), 5);
  for (std::uint64_t n : {1u, 2u, 3u, 6u}) {
    Fp w = f.root_of_unity(n);
    EXPECT_EQ(f.pow(w, n), 1u);
    for (std::uint64_t d = 1; d < n; ++d)
      EXPECT_NE(f.pow(w, d), 1u);
  }
  EXPECT_THROW(f.root_of_unity(5), Error);
}

TEST(Modular, LargePrimeProducts)
{
  auto f = ModularContext::with_prime(2305843009213693951ull, std::vector<GroupPtr>{build_group(1, {})});
  Fp a = f.prime() - 2;
  EXPECT_EQ(f.mul(a, a), 4u);
}

TEST(Modular, Roots)
{
  auto f = make_context({s3()});
  // (x - 3)(x - 5)^2 (x^2 + 1) with 223 = 3 mod 4, so x^2 + 1 has no roots
  detail::Poly p = {1};
  auto times = [&](detail::Poly q) {
    detail::Poly r(p.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j)
        r[i + j] = f.add(r[i + j], f.mul(p[i], q[j]));
    p = r;
  };
  times({f.neg(3), 1});
  times({f.neg(5), 1});
  times({f.neg(5), 1});
  times({1, 0, 1});
  EXPECT_EQ(detail::distinct_roots(p, f), (std::vector<Fp>{3, 5}));
}

TEST(Modular, CharpolyAndNullspace)
{
  auto f = make_context({s3()});
  detail::Matrix a = {{2, 1}, {0, 3}};
  auto cp = detail::charpoly(a, f);
  // (x - 2)(x - 3) = x^2 - 5x + 6
  EXPECT_EQ(cp, (detail::Poly{6, f.neg(5), 1}));
  detail::Matrix b = {{1, 2, 3}, {2, 4, 6}};
  auto ns = detail::nullspace(b, 3, f);
  ASSERT_EQ(ns.size(), 2u);
  for (auto &v : ns)
    EXPECT_EQ(f.add(f.add(v[0], f.mul(2, v[1])), f.mul(3, v[2])), 0u);
}
