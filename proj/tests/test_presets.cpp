#include <gtest/gtest.h>

#include <equifuse/io.hpp>
#include <equifuse/presets.hpp>

using namespace equifuse;

namespace
{

std::size_t count_of_order(const Group &g, std::size_t n)
{
  std::size_t c = 0;
  for (Elem e = 0; e < g.order(); ++e)
    c += g.element_order(e) == n;
  return c;
}

const std::vector<std::string> all_presets = {"trivial",    "cyclic:1",   "cyclic:5",   "sym:1",    "sym:2",
                                              "sym:3",      "sym:4",      "alt:3",      "alt:4",    "alt:5",
                                              "dihedral:1", "dihedral:2", "dihedral:4", "dihedral:5", "klein4",
                                              "quaternion8"};

} // namespace

TEST(GroupPreset, Orders)
{
  EXPECT_EQ(group_preset("cyclic:1")->order(), 1u);
  EXPECT_EQ(group_preset("trivial")->order(), 1u);
  EXPECT_EQ(group_preset("sym:3")->order(), 6u);
  EXPECT_EQ(group_preset("sym:5")->order(), 120u);
  EXPECT_EQ(group_preset("alt:4")->order(), 12u);
  EXPECT_EQ(group_preset("alt:5")->order(), 60u);
  EXPECT_EQ(group_preset("cyclic:7")->order(), 7u);
  EXPECT_EQ(group_preset("dihedral:4")->order(), 8u);
  EXPECT_EQ(group_preset("dihedral:5")->order(), 10u);
  EXPECT_EQ(group_preset("klein4")->order(), 4u);
}

TEST(GroupPreset, OrderCensus)
{
  auto q = group_preset("quaternion8");
  EXPECT_EQ(q->order(), 8u);
  EXPECT_EQ(q->degree(), 8u);
  EXPECT_EQ(count_of_order(*q, 2), 1u);
  EXPECT_EQ(count_of_order(*q, 4), 6u);

  auto d4 = group_preset("dihedral:4");
  EXPECT_EQ(count_of_order(*d4, 2), 5u);
  EXPECT_EQ(count_of_order(*d4, 4), 2u);
  auto v = group_preset("klein4");
  EXPECT_EQ(count_of_order(*v, 2), 3u);
  EXPECT_EQ(group_preset("cyclic:4")->exponent(), 4u);
  EXPECT_EQ(group_preset("klein4")->exponent(), 2u);
}

TEST(GroupPreset, Unknown)
{
  for (std::string bad : {"sym:7", "alt:9", "foo", "cyclic:0", "cyclic:", "cyclic:x", "dihedral:-1", "sym3", ""}) {
    try {
      group_preset(bad);
      FAIL() << bad;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::UnknownPreset) << bad;
    }
  }
}

TEST(GroupPreset, OrderCap)
{
  Caps caps;
  caps.order = 100;
  try {
    group_preset("sym:5", caps);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderCapExceeded);
  }
}

TEST(GroupPreset, JsonRoundTrip)
{
  for (auto &name : all_presets) {
    SCOPED_TRACE(name);
    auto g = group_preset(name);
    auto text = group_to_json(*g).dump();
    auto back = group_from_json(nlohmann::json::parse(text));
    ASSERT_EQ(back->order(), g->order());
    for (Elem e = 0; e < g->order(); ++e)
      EXPECT_EQ(back->element(e), g->element(e));
    EXPECT_EQ(group_to_json(*back).dump(), text);
  }
}

TEST(GroupPreset, JsonErrors)
{
  for (std::string bad : {R"({"generators": []})", R"({"degree": 3, "generators": [[0, 0, 1]]})",
                          R"({"degree": 3, "generators": [[0, 1]]})", R"({"degree": "x", "generators": []})"}) {
    EXPECT_THROW(group_from_json(nlohmann::json::parse(bad)), Error) << bad;
  }
}

TEST(ActionJson, RoundTrip)
{
  auto g = group_preset("sym:3");
  auto a = GroupAction::conjugation(g);
  auto text = action_to_json(a).dump();
  auto b = action_from_json(nlohmann::json::parse(text));
  for (Elem x = 0; x < 6; ++x)
    for (Elem y = 0; y < 6; ++y)
      EXPECT_EQ(b.apply(x, y), a.apply(x, y));
  EXPECT_EQ(action_to_json(b).dump(), text);
}

TEST(ActionJson, RejectsNonHomomorphism)
{
  auto j = action_to_json(GroupAction::conjugation(group_preset("cyclic:3")));
  j["images"]["0"] = {0, 2, 1};
  EXPECT_THROW(action_from_json(nlohmann::json::parse(j.dump())), Error);
}

TEST(Scenario, TrivialDoubleIsZ)
{
  auto s = drinfeld_double_scenario(group_preset("trivial"));
  auto e = s.engine();
  auto r = e->fusion_ring(e->whole());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.N(0, 0, 0), 1);
  EXPECT_EQ(r.dims, (std::vector<std::int64_t>{1}));
}

TEST(Scenario, DoubleOfZ2)
{
  auto e = drinfeld_double_scenario(group_preset("cyclic:2")).engine();
  auto r = e->fusion_ring(e->whole());
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(r.constants.size(), 16u);
}

TEST(Scenario, ContextCoversBothGroups)
{
  for (auto &name : scenario_catalog()) {
    auto s = scenario_preset(name);
    for (auto &g : {s.datum.F, s.datum.G}) {
      EXPECT_EQ((s.ctx.prime() - 1) % g->exponent(), 0u) << name;
      auto n = g->order();
      EXPECT_GT(s.ctx.prime(), n * n * n) << name;
    }
  }
  EXPECT_EQ(scenario_preset("double:sym:3").ctx.prime(), 223u);
}

TEST(Scenario, ClassicalMatchesCharacterRing)
{
  for (std::string spec : {"trivial", "sym:3", "dihedral:4"}) {
    SCOPED_TRACE(spec);
    auto s = classical_scenario(group_preset(spec));
    EXPECT_EQ(s.datum.G->order(), 1u);
    auto eq = equivariant_k0_family(s.engine());
    auto ch = char_ring_family(s.datum.F, s.ctx);
    ASSERT_EQ(eq.lattice->size(), ch.lattice->size());
    for (std::size_t h = 0; h < eq.lattice->size(); ++h) {
      ASSERT_EQ(eq.basis_size(h), ch.basis_size(h));
      for (std::size_t i = 0; i < eq.basis_size(h); ++i)
        for (std::size_t j = 0; j < eq.basis_size(h); ++j)
          EXPECT_EQ(eq.multiply_basis(h, i, j), ch.multiply_basis(h, i, j));
    }
  }
}

TEST(Scenario, DoubleLabelCounts)
{
  for (auto &name : scenario_catalog()) {
    if (!name.starts_with("double:"))
      continue;
    SCOPED_TRACE(name);
    auto s = scenario_preset(name);
    const auto &g = s.datum.G;
    std::size_t expect = 0;
    for (auto &c : conjugacy_classes(g))
      expect += conjugacy_classes(centralizer(g, c.rep)).size();
    auto e = s.engine();
    auto ls = e->simples(e->whole());
    EXPECT_EQ(ls.size(), expect);
    std::int64_t sq = 0;
    for (auto &l : ls)
      sq += l.dim() * l.dim();
    EXPECT_EQ(sq, static_cast<std::int64_t>(g->order() * g->order()));
  }
}

TEST(Scenario, Unknown)
{
  EXPECT_THROW(scenario_preset("triple:sym:3"), Error);
  EXPECT_THROW(scenario_preset("double:sym:9"), Error);
}
