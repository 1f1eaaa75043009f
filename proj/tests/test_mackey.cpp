#include <gtest/gtest.h>

#include <random>

#include <equifuse/fusion.hpp>
#include <equifuse/mackey.hpp>
#include <equifuse/presets.hpp>

using namespace equifuse;

namespace
{

Elem idx(const GroupPtr &g, std::vector<Point> im)
{ return *g->index_of(Perm(std::move(im))); }

std::size_t lattice_index(const MackeyFamily &fam, const std::vector<Elem> &gens)
{ return fam.lattice->index_of(Subgroup::generated(fam.ambient(), gens)); }

MackeyFamily char_family(const std::string &spec)
{
  auto g = group_preset(spec);
  return char_ring_family(g, make_context({g}));
}

void expect_clean(const AxiomReport &r)
{
  for (const auto &t : r.tallies()) {
    EXPECT_GT(t.checked, 0u) << t.id;
    EXPECT_EQ(t.failed, 0u) << t.id;
  }
  for (const auto &w : r.witnesses())
    ADD_FAILURE() << w.axiom << ": " << w.witness;
}

} // namespace

TEST(CharFamily, BasisSizes)
{
  auto fam = char_family("sym:3");
  ASSERT_EQ(fam.lattice->size(), 6u);
  std::vector<std::size_t> sizes;
  for (std::size_t h = 0; h < 6; ++h)
    sizes.push_back(fam.basis_size(h));
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 2, 2, 3, 3}));
  EXPECT_EQ(fam.induce(0, 5, fam.basis_vector(0, 0)), (IntVector{1, 1, 2}));
  EXPECT_EQ(fam.restrict(5, 4, fam.unit(5)), fam.unit(4));
}

TEST(CharFamily, PinnedMackeyVector)
{
  auto fam = char_family("sym:3");
  const auto &g = fam.ambient();
  std::size_t h = lattice_index(fam, {idx(g, {1, 0, 2})});
  std::size_t top = fam.lattice->whole();
  auto triv = fam.basis_vector(h, 0);

  auto lhs = fam.restrict(top, h, fam.induce(h, top, triv));
  EXPECT_EQ(lhs, (IntVector{2, 1}));

  // the double-coset terms, one by one
  auto reps = double_coset_reps(g, (*fam.lattice)[h], (*fam.lattice)[h]);
  ASSERT_EQ(reps.size(), 2u);
  std::vector<IntVector> terms;
  for (Elem x : reps) {
    std::size_t xk = fam.lattice->conjugate(h, x);
    std::size_t j = fam.lattice->intersect(xk, h);
    terms.push_back(fam.induce(j, h, fam.restrict(xk, j, fam.conjugate(h, x, triv))));
  }
  EXPECT_EQ(reps[0], Group::identity());
  EXPECT_EQ(terms[0], (IntVector{1, 0}));
  EXPECT_EQ(terms[1], (IntVector{1, 1}));
  EXPECT_EQ(mackey_rhs(fam, h, h, triv), lhs);
}

TEST(CharFamily, TrivialSubgroupMackey)
{
  for (std::string spec : {"sym:3", "dihedral:4", "sym:4"}) {
    auto fam = char_family(spec);
    auto v = fam.basis_vector(0, 0);
    auto n = static_cast<std::int64_t>(fam.ambient()->order());
    EXPECT_EQ(mackey_rhs(fam, 0, 0, v), (IntVector{n}));
    EXPECT_EQ(mackey_lhs(fam, 0, 0, v), (IntVector{n}));
  }
}

TEST(CharFamily, WholeGroupSingleDoubleCoset)
{
  auto fam = char_family("sym:4");
  std::size_t top = fam.lattice->whole();
  for (std::size_t i = 0; i < fam.basis_size(top); ++i) {
    auto v = fam.basis_vector(top, i);
    EXPECT_EQ(mackey_rhs(fam, top, top, v), v);
  }
}

TEST(CharFamily, MapsAreLinear)
{
  auto fam = char_family("sym:4");
  std::mt19937 rng(11);
  const auto &lat = *fam.lattice;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t h = rng() % lat.size(), k = rng() % lat.size();
    if (!lat.contains(h, k))
      std::swap(h, k);
    if (!lat.contains(h, k))
      continue;
    IntVector u(fam.basis_size(h)), w(fam.basis_size(h)), sum(fam.basis_size(h));
    std::int64_t a = static_cast<std::int64_t>(rng() % 7) - 3, b = static_cast<std::int64_t>(rng() % 7) - 3;
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = static_cast<std::int64_t>(rng() % 5) - 2;
      w[i] = static_cast<std::int64_t>(rng() % 5) - 2;
      sum[i] = a * u[i] + b * w[i];
    }
    auto ru = fam.restrict(h, k, u), rw = fam.restrict(h, k, w), rs = fam.restrict(h, k, sum);
    for (std::size_t i = 0; i < rs.size(); ++i)
      EXPECT_EQ(rs[i], a * ru[i] + b * rw[i]);
    Elem x = static_cast<Elem>(rng() % fam.ambient()->order());
    auto cu = fam.conjugate(h, x, u), cw = fam.conjugate(h, x, w), cs = fam.conjugate(h, x, sum);
    for (std::size_t i = 0; i < cs.size(); ++i)
      EXPECT_EQ(cs[i], a * cu[i] + b * cw[i]);
    IntVector v(fam.basis_size(k)), vw(fam.basis_size(k)), vs(fam.basis_size(k));
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = static_cast<std::int64_t>(rng() % 5) - 2;
      vw[i] = static_cast<std::int64_t>(rng() % 5) - 2;
      vs[i] = a * v[i] + b * vw[i];
    }
    auto iv = fam.induce(k, h, v), iw = fam.induce(k, h, vw), is = fam.induce(k, h, vs);
    for (std::size_t i = 0; i < is.size(); ++i)
      EXPECT_EQ(is[i], a * iv[i] + b * iw[i]);
  }
}

TEST(CharFamily, ConjugationPermutesBases)
{
  auto fam = char_family("sym:4");
  for (std::size_t h = 0; h < fam.lattice->size(); ++h)
    for (Elem x = 0; x < fam.ambient()->order(); ++x) {
      std::vector<int> hit(fam.basis_size(fam.lattice->conjugate(h, x)), 0);
      for (std::size_t i = 0; i < fam.basis_size(h); ++i) {
        auto img = fam.conjugate_basis(h, x, i);
        std::size_t ones = 0;
        for (std::size_t t = 0; t < img.size(); ++t) {
          EXPECT_TRUE(img[t] == 0 || img[t] == 1);
          if (img[t] == 1) {
            ++ones;
            ++hit[t];
          }
        }
        EXPECT_EQ(ones, 1u);
      }
      for (int c : hit)
        EXPECT_EQ(c, 1);
    }
}

TEST(CharFamily, GreenFrobeniusExample)
{
  auto fam = char_family("sym:3");
  const auto &g = fam.ambient();
  std::size_t a3 = lattice_index(fam, {idx(g, {1, 2, 0})});
  std::size_t top = fam.lattice->whole();
  auto a = fam.basis_vector(a3, 1);
  auto b = fam.basis_vector(top, 2);
  auto left = fam.induce(a3, top, fam.multiply(a3, a, fam.restrict(top, a3, b)));
  auto right = fam.multiply(top, fam.induce(a3, top, a), b);
  EXPECT_EQ(left, right);
  // Ind(w) = chi2, chi2 * chi2 = 1 + sgn + chi2
  EXPECT_EQ(right, (IntVector{1, 1, 1}));
}

TEST(CharFamily, AxiomsHold)
{
  for (std::string spec : {"sym:3", "dihedral:4", "sym:4", "quaternion8"}) {
    SCOPED_TRACE(spec);
    auto fam = char_family(spec);
    expect_clean(verify_mackey_axioms(fam));
    expect_clean(verify_green_axioms(fam));
  }
}

TEST(Verifier, CatchesBrokenConjugation)
{
  auto fam = char_family("sym:3");
  auto good = fam.conjugate_basis;
  // swap trivial and sign on the order-2 subgroups under one element
  fam.conjugate_basis = [good](std::size_t h, Elem x, std::size_t i) {
    auto v = good(h, x, i);
    if (x == 3 && v.size() == 2)
      std::swap(v[0], v[1]);
    return v;
  };
  auto r = verify_mackey_axioms(fam);
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.witnesses().empty());
  EXPECT_NE(r.witnesses().front().lhs, r.witnesses().front().rhs);
}

TEST(Verifier, CatchesBrokenInduction)
{
  auto fam = char_family("sym:3");
  auto good = fam.induce_basis;
  fam.induce_basis = [good](std::size_t k, std::size_t h, std::size_t i) {
    auto v = good(k, h, i);
    if (k == 0 && h == 5)
      v[0] += 1;
    return v;
  };
  auto r = verify_mackey_axioms(fam);
  EXPECT_GT(r.find("M2")->failed + r.find("M4")->failed, 0u);
}

TEST(Verifier, NeedsRing)
{
  auto fam = char_family("sym:3");
  fam.multiply_basis = nullptr;
  try {
    verify_green_axioms(fam);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NoRingStructure);
  }
}

TEST(EquivariantFamily, DoubleOfS3)
{
  auto sc = drinfeld_double_scenario(group_preset("sym:3"));
  auto fam = equivariant_k0_family(sc.engine());
  EXPECT_EQ(fam.basis_size(fam.lattice->whole()), 8u);
  EXPECT_EQ(fam.basis_size(0), 6u);
  expect_clean(verify_mackey_axioms(fam));
  expect_clean(verify_green_axioms(fam));

  // H = K = A3 inside S3: both sides of the Mackey formula agree on every label
  const auto &g = fam.ambient();
  std::size_t a3 = lattice_index(fam, {idx(g, {1, 2, 0})});
  for (std::size_t i = 0; i < fam.basis_size(a3); ++i) {
    auto v = fam.basis_vector(a3, i);
    EXPECT_EQ(mackey_rhs(fam, a3, a3, v), mackey_lhs(fam, a3, a3, v));
  }
}

TEST(EquivariantFamily, ClassicalCollapse)
{
  for (std::string spec : {"sym:3", "dihedral:4"}) {
    SCOPED_TRACE(spec);
    auto f = group_preset(spec);
    auto sc = classical_scenario(f);
    auto eq = equivariant_k0_family(sc.engine());
    auto ch = char_ring_family(f, sc.ctx);
    const auto &lat = *ch.lattice;
    ASSERT_EQ(eq.lattice->size(), lat.size());
    for (std::size_t h = 0; h < lat.size(); ++h) {
      ASSERT_EQ(eq.basis_size(h), ch.basis_size(h));
      for (std::size_t i = 0; i < ch.basis_size(h); ++i) {
        for (std::size_t k = 0; k < lat.size(); ++k) {
          if (lat.contains(h, k))
            EXPECT_EQ(eq.restrict_basis(h, k, i), ch.restrict_basis(h, k, i));
          if (lat.contains(k, h))
            EXPECT_EQ(eq.induce_basis(h, k, i), ch.induce_basis(h, k, i));
        }
        for (Elem x = 0; x < f->order(); ++x)
          EXPECT_EQ(eq.conjugate_basis(h, x, i), ch.conjugate_basis(h, x, i));
        for (std::size_t j = 0; j < ch.basis_size(h); ++j)
          EXPECT_EQ(eq.multiply_basis(h, i, j), ch.multiply_basis(h, i, j));
      }
      EXPECT_EQ(eq.unit(h), ch.unit(h));
    }
  }
}
