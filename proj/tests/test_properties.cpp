// Cross-module checks on small corpora, smaller than the acceptance runs.

#include <gtest/gtest.h>

#include "generators.hpp"
#include "qflag/suites.hpp"

using namespace qflag;

TEST(SuiteProperty, ModqOnOtherOrientations)
{
  for (auto const &q : {fixture_quiver("d4"), gen::a3_source_middle(), gen::a2_reversed()}) {
    HallContext ctx(q);
    ModqSuiteResult r = verify_modq_equivalence(ctx, 3, {2, 3});
    EXPECT_TRUE(r.equivalence.ok) << r.equivalence.failure;
    EXPECT_TRUE(r.preprojective.ok) << r.preprojective.failure;
    EXPECT_GT(r.preprojective.checked, 0u);
  }
}

TEST(SuiteProperty, FiberFormulaSmall)
{
  SuiteResult r = verify_fiber_formula({2}, 1, 2);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_GT(r.checked, 0u);
}

TEST(SuiteProperty, EulerIdentity)
{
  SuiteResult r = verify_euler_identity(gen::dynkin_quivers(), 60, 7, 3);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(r.checked, 60u);
}

// cokernel Ext against the Euler-form Ext on non-Dynkin quivers too
TEST(ExtProperty, CokernelAgainstEulerForm)
{
  auto r = gen::rng(100);
  QuiverPtr kronecker = make_quiver(Quiver({1, 2}, {{"a", 1, 2}, {"b", 1, 2}}));
  for (int t = 0; t < 60; ++t) {
    Representation m = gen::rep(r, kronecker, 2, 2), n = gen::rep(r, kronecker, 2, 2);
    EXPECT_EQ(ext_dim_by_cokernel(m, n), ext_dim(m, n));
  }
}

// the decomposition at a sink on random representations and filtrations,
// including non-strict ones
TEST(DecompositionProperty, RandomInputs)
{
  auto r = gen::rng(101);
  for (auto const &q : {fixture_quiver("a2"), fixture_quiver("a3"), gen::a3_source_middle()})
    for (int t = 0; t < 25; ++t) {
      const Elem p = t % 2 ? 3 : 2;
      Representation m = gen::rep(r, q, p, 2);
      if (m.dim().total() == 0 || m.dim().total() > 5)
        continue;
      Filtration f = gen::filtration(r, m.dim(), static_cast<std::size_t>(gen::uniform(r, 1, 3)));
      for (std::size_t a = 0; a < q->vertex_count(); ++a)
        if (q->is_sink(a)) {
          SuiteResult res = verify_decomposition(m, f, a);
          EXPECT_TRUE(res.ok) << res.failure;
        }
    }
}

TEST(SuiteProperty, CodimSmall)
{
  for (auto const &q : {fixture_quiver("a2"), gen::a3_source_middle()}) {
    HallContext ctx(q);
    SuiteResult r = verify_codim_suite(ctx, 3, 2);
    EXPECT_TRUE(r.ok) << r.failure;
  }
}

// flags of type f in M and of the reversed complementary type in the dual
// are in bijection (U -> annihilator of U)
TEST(DualityProperty, FlagCounts)
{
  auto r = gen::rng(102);
  for (auto const &q : {fixture_quiver("a2"), fixture_quiver("a3"), fixture_quiver("d4")})
    for (int t = 0; t < 20; ++t) {
      const Elem p = t % 2 ? 3 : 2;
      Representation m = gen::rep(r, q, p, 2);
      if (m.dim().total() == 0 || m.dim().total() > 6)
        continue;
      Filtration f = gen::filtration(r, m.dim(), static_cast<std::size_t>(gen::uniform(r, 1, 3)));
      EXPECT_EQ(count_flag_bruteforce(m, f), count_flag_bruteforce(dualize(m), f.complement_reversed()));
    }
}
