#include <map>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "qflag/flag.hpp"

using namespace qflag;

namespace {

QuiverPtr a2() { return fixture_quiver("a2"); }
Representation rep(const std::string &name, Elem p = 2) { return *fixture_representation(name, a2(), p); }
Filtration G() { return Filtration({DimVector{0, 0}, DimVector{1, 1}, DimVector{2, 2}}); }

} // namespace

TEST(CountFlag, M22Examples)
{
  EXPECT_EQ(count_flag_bruteforce(rep("m22", 2), G()), 5);
  EXPECT_EQ(count_flag_bruteforce(rep("m22", 3), G()), 7);
  EXPECT_EQ(count_flag_bruteforce(rep("m22", 5), G()), 11);
  for (Elem p : {2u, 3u, 5u}) {
    EXPECT_EQ(count_flag_bruteforce(rep("m22", p), G(), Stratum{1, {0, 1, 1}}), p + 1);
    EXPECT_EQ(count_flag_bruteforce(rep("m22", p), G(), Stratum{1, {0, 0, 1}}), p);
    EXPECT_EQ(count_flag_bruteforce(rep("m22", p), G(), Stratum{1, {0, 1, 0}}), 0);
  }
  // pp: U^1 is the graph of the identity on a line, one per line
  EXPECT_EQ(count_flag_bruteforce(rep("pp", 3), G()), 4);
}

TEST(CountFlag, WordExamples)
{
  QuiverPtr qp = a2();
  const Quiver &q = *qp;
  // P has S2 as its only proper subrepresentation
  EXPECT_EQ(count_flag_bruteforce(rep("p"), word_to_filtration(q, {1, 0})), 0);
  EXPECT_EQ(count_flag_bruteforce(rep("p"), word_to_filtration(q, {0, 1})), 1);
  EXPECT_EQ(count_flag_bruteforce(direct_sum({rep("s1"), rep("s2")}), word_to_filtration(q, {1, 0})), 1);
  // trivial filtration: one flag
  EXPECT_EQ(count_flag_bruteforce(rep("m22"), Filtration({DimVector{0, 0}, DimVector{2, 2}})), 1);
}

TEST(CountFlag, BadInput)
{
  EXPECT_THROW(count_flag_bruteforce(rep("p"), G()), Error);
  EXPECT_THROW(count_flag_bruteforce(rep("m22"), G(), Stratum{1, {0, 1}}), Error);
  EXPECT_THROW(count_flag_bruteforce(rep("m22"), G(), Stratum{5, {0, 1, 1}}), Error);
}

TEST(CountFlagModq, Examples)
{
  for (Elem p : {2u, 3u}) {
    ModQCount c = count_flag_modq(rep("m22", p), G());
    EXPECT_EQ(c.residue, 1u);
    EXPECT_TRUE(c.nonempty);
  }
  ModQCount z = count_flag_modq(rep("p"), word_to_filtration(*a2(), {1, 0}));
  EXPECT_EQ(z.residue, 0u);
  EXPECT_FALSE(z.nonempty);
  ModQCount t = count_flag_modq(rep("m22"), Filtration({DimVector{0, 0}, DimVector{2, 2}}));
  EXPECT_EQ(t.residue, 1u);
  EXPECT_THROW(count_flag_modq(rep("p"), G()), Error);
}

TEST(FlagNonempty, Examples)
{
  RootSystem rs(a2());
  Classifier cl(rs, 2);
  QuiverPtr qp = a2();
  const Quiver &q = *qp;
  IsoClass p = rs.single(2), split = rs.single(0) + rs.single(1);
  EXPECT_TRUE(flag_nonempty(cl, p, word_to_filtration(q, {0, 1})));
  EXPECT_FALSE(flag_nonempty(cl, p, word_to_filtration(q, {1, 0})));
  EXPECT_TRUE(flag_nonempty(cl, split, word_to_filtration(q, {1, 0})));
  EXPECT_TRUE(flag_nonempty(cl, split, word_to_filtration(q, {0, 1})));
}

TEST(FiberFormula, Examples)
{
  EXPECT_EQ(count_fiber_formula({1, 0}, {1, 1}), QPolynomial::constant(1));
  QPolynomial one_plus_q = qbinom(2, 1);
  QPolynomial f = count_fiber_formula({1, 1}, {1, 2});
  EXPECT_EQ(f, one_plus_q * one_plus_q);
  EXPECT_EQ(f.eval(2), 9);
  EXPECT_EQ(count_subreps(fiber_representation({1, 1}, {1, 2}, 2), DimVector{1, 1}), 9);
  // e decreasing, or e^0 < 0: zero
  EXPECT_TRUE(count_fiber_formula({2, 0}, {1, 0}).is_zero());
  EXPECT_EQ(count_subreps(fiber_representation({2, 0}, {1, 0}, 3), DimVector{2, 0}), 0);
  EXPECT_TRUE(count_fiber_formula({0, 1}, {-1, 0}).is_zero());
  EXPECT_THROW(count_fiber_formula({1, 1}, {2, 1}), Error);
  EXPECT_THROW(count_fiber_formula({1}, {1, 1}), Error);
  EXPECT_THROW(count_fiber_formula({-1, 0}, {1, 1}), Error);
}

TEST(FiberRepresentation, Shape)
{
  Representation x = fiber_representation({1, 0}, {1, 2}, 3);
  EXPECT_EQ(x.dim(), (DimVector{3, 1}));
  EXPECT_EQ(x.map(0), FpMatrix::from_rows(3, {{1, 0, 0}}));
  EXPECT_THROW(fiber_representation({0, 0}, {2, 1}, 3), Error);
}

// closed-form last vertex, full enumeration and for_each_subrep agree; every
// emitted subspace tuple is a subrepresentation of the right dimension
TEST(CountSubrepsProperty, ClosedFormAgainstEnumeration)
{
  auto r = gen::rng(70);
  for (auto const &q : {a2(), fixture_quiver("a3"), fixture_quiver("d4"), gen::a3_source_middle(),
                        gen::a2_reversed()})
    for (int t = 0; t < 40; ++t) {
      const Elem p = t % 2 ? 3 : 2;
      Representation m = gen::rep(r, q, p, 2);
      DimVector e = gen::dim(r, *q, 2);
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = std::min(e[i], m.dim()[i]);
      BigInt listed = 0;
      for_each_subrep(m, e, [&](const std::vector<Subspace> &u) {
        listed += 1;
        EXPECT_TRUE(m.is_subrepresentation(u));
        for (std::size_t i = 0; i < u.size(); ++i)
          EXPECT_EQ(static_cast<long long>(u[i].dim()), e[i]);
      });
      EXPECT_EQ(count_subreps(m, e, true), listed);
      EXPECT_EQ(count_subreps(m, e, false), listed);
    }
}

// the reflection residue matches the brute-force count mod p, with the same emptiness
TEST(ModqProperty, AgainstBruteForce)
{
  auto r = gen::rng(71);
  for (auto const &q : {a2(), fixture_quiver("a3"), fixture_quiver("d4"), gen::a3_source_middle()})
    for (int t = 0; t < 40; ++t) {
      const Elem p = t % 2 ? 3 : 2;
      Representation m = gen::rep(r, q, p, 2);
      if (m.dim().total() == 0 || m.dim().total() > 6)
        continue;
      Filtration f = gen::filtration(r, m.dim(), static_cast<std::size_t>(gen::uniform(r, 1, 4)));
      BigInt brute = count_flag_bruteforce(m, f);
      ModQCount mq = count_flag_modq(m, f);
      EXPECT_EQ(brute % p, mq.residue) << f.to_string();
      EXPECT_EQ(brute != 0, mq.nonempty) << f.to_string();
    }
}

// strata at a sink partition the flags
TEST(StratumProperty, StrataPartition)
{
  auto r = gen::rng(72);
  for (auto const &q : {a2(), fixture_quiver("a3")})
    for (int t = 0; t < 30; ++t) {
      const Elem p = t % 2 ? 3 : 2;
      Representation m = gen::rep(r, q, p, 2);
      if (m.dim().total() == 0)
        continue;
      Filtration f = gen::filtration(r, m.dim(), static_cast<std::size_t>(gen::uniform(r, 1, 3)));
      const std::size_t a = q->vertex_count() - 1; // the sink
      std::map<std::vector<long long>, BigInt> seen;
      BigInt total = 0;
      for_each_flag(m, f, [&](const FlagPoint &pt, const std::vector<Representation> &subs) {
        total += 1;
        seen[stratum_of(subs, a)] += 1;
        for (std::size_t k = 0; k < pt.levels.size(); ++k) {
          EXPECT_EQ(subs[k].dim(), f[k]);
          for (std::size_t v = 0; k > 0 && v < q->vertex_count(); ++v)
            EXPECT_TRUE(pt.levels[k][v].contains(pt.levels[k - 1][v]));
        }
      });
      EXPECT_EQ(total, count_flag_bruteforce(m, f));
      BigInt sum = 0;
      for (auto const &[seq, n] : seen) {
        EXPECT_EQ(count_flag_bruteforce(m, f, Stratum{a, seq}), n);
        sum += n;
      }
      EXPECT_EQ(sum, total);
    }
}

TEST(ForEachFlag, EarlyStop)
{
  std::size_t n = 0;
  for_each_flag(rep("m22", 3), G(), [&](const FlagPoint &, const std::vector<Representation> &) {
    return ++n < 3;
  });
  EXPECT_EQ(n, 3u);
}
