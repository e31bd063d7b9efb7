#include <algorithm>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "qflag/quiver.hpp"

using namespace qflag;

namespace {

QuiverPtr a1() { return fixture_quiver("a1"); }
QuiverPtr a2() { return fixture_quiver("a2"); }
QuiverPtr a3() { return fixture_quiver("a3"); }

} // namespace

TEST(Quiver, Validation)
{
  EXPECT_THROW(Quiver({1, 1}, {}), Error);
  EXPECT_THROW(Quiver({1, 2}, {{"a", 1, 3}}), Error);
  EXPECT_THROW(Quiver({1, 2}, {{"a", 1, 2}, {"a", 2, 1}}), Error);
  Quiver cyc({1, 2}, {{"a", 1, 2}, {"b", 2, 1}});
  EXPECT_FALSE(cyc.is_acyclic());
  EXPECT_THROW(admissible_orderings(cyc), Error);
  Quiver loop({1}, {{"l", 1, 1}});
  EXPECT_TRUE(loop.has_loop(0));
  EXPECT_FALSE(loop.is_acyclic());
}

TEST(EulerForm, Examples)
{
  QuiverPtr qp = a2();
  const Quiver &q = *qp;
  EXPECT_EQ(euler_form(q, q.simple_root(0), q.simple_root(1)), -1);
  EXPECT_EQ(euler_form(q, DimVector{1, 1}, DimVector{1, 1}), 1);
  for (auto const &qq : gen::dynkin_quivers())
    EXPECT_EQ(euler_form(*qq, DimVector(std::vector<long long>(qq->vertex_count(), 2)), qq->zero()),
              0);
}

TEST(ReflectDimvec, Examples)
{
  QuiverPtr qp = a2();
  const Quiver &q = *qp;
  EXPECT_EQ(reflect_dimvec(q, 1, DimVector{1, 1}), (DimVector{1, 0}));
  EXPECT_EQ(reflect_dimvec(q, 1, DimVector{0, 1}), (DimVector{0, -1}));
  EXPECT_EQ(reflect_dimvec(q, 1, DimVector{-1, -1}), (DimVector{-1, 0}));
  EXPECT_THROW(reflect_dimvec(Quiver({1}, {{"l", 1, 1}}), 0, DimVector{1}), Error);
}

TEST(ReflectQuiver, Examples)
{
  Quiver r = a2()->reflected(1);
  ASSERT_EQ(r.arrow_count(), 1u);
  EXPECT_EQ(r.label(r.arrow(0).source), 2);
  EXPECT_EQ(r.label(r.arrow(0).target), 1);
  EXPECT_EQ(r.reflected(1), *a2());

  Quiver r3 = a3()->reflected(2);
  EXPECT_EQ(r3.label(r3.arrow(0).source), 1);
  EXPECT_EQ(r3.label(r3.arrow(0).target), 2);
  EXPECT_EQ(r3.label(r3.arrow(1).source), 3);
  EXPECT_EQ(r3.label(r3.arrow(1).target), 2);
}

TEST(WordToFiltration, Examples)
{
  QuiverPtr qp = a2();
  const Quiver &q = *qp;
  EXPECT_EQ(word_to_filtration(q, {0, 1}),
            Filtration({DimVector{0, 0}, DimVector{0, 1}, DimVector{1, 1}}));
  EXPECT_EQ(word_to_filtration(q, {1, 0}),
            Filtration({DimVector{0, 0}, DimVector{1, 0}, DimVector{1, 1}}));
  EXPECT_EQ(word_to_filtration(*a1(), {0, 0}),
            Filtration({DimVector{0}, DimVector{1}, DimVector{2}}));
  EXPECT_THROW(word_to_filtration(q, {}), Error);
}

TEST(AdmissibleOrderings, Examples)
{
  using V = std::vector<std::vector<std::size_t>>;
  EXPECT_EQ(admissible_orderings(*a2()), (V{{1, 0}}));
  EXPECT_EQ(admissible_orderings(*a1()), (V{{0}}));
  EXPECT_EQ(admissible_orderings(*a3()), (V{{2, 1, 0}}));
}

TEST(Filtration, Validation)
{
  EXPECT_THROW(Filtration({DimVector{0, 0}}), Error);
  EXPECT_THROW(Filtration({DimVector{1, 0}, DimVector{1, 1}}), Error);
  EXPECT_THROW(Filtration({DimVector{0, 0}, DimVector{1, 1}, DimVector{1, 0}}), Error);
  EXPECT_NO_THROW(Filtration({DimVector{0, 0}, DimVector{0, 0}, DimVector{1, 0}}));
}

// sigma_a is an involution and an isometry of the symmetric form
TEST(ReflectDimvecProperty, InvolutionIsometry)
{
  auto r = gen::rng(10);
  for (auto const &q : {a2(), a3(), fixture_quiver("d4"), gen::a3_source_middle()})
    for (int t = 0; t < 50; ++t) {
      DimVector d(q->vertex_count()), e(q->vertex_count());
      for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = gen::uniform(r, -3, 3);
        e[i] = gen::uniform(r, -3, 3);
      }
      for (std::size_t a = 0; a < q->vertex_count(); ++a) {
        EXPECT_EQ(reflect_dimvec(*q, a, reflect_dimvec(*q, a, d)), d);
        EXPECT_EQ(symmetric_form(*q, reflect_dimvec(*q, a, d), reflect_dimvec(*q, a, e)),
                  symmetric_form(*q, d, e));
      }
    }
}

// admissible orderings are exactly the permutations passing the sink test
TEST(AdmissibleOrderingsProperty, MatchesPermutationSearch)
{
  for (auto const &q : {a2(), a3(), fixture_quiver("d4"), gen::a3_source_middle()}) {
    std::vector<std::size_t> perm(q->vertex_count());
    for (std::size_t i = 0; i < perm.size(); ++i)
      perm[i] = i;
    std::vector<std::vector<std::size_t>> expect;
    do {
      Quiver cur = *q;
      bool ok = true;
      for (std::size_t v : perm) {
        if (!cur.is_sink(v)) {
          ok = false;
          break;
        }
        cur = cur.reflected(v);
      }
      if (ok)
        expect.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto got = admissible_orderings(*q);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expect);
    for (auto const &o : got)
      EXPECT_TRUE(is_admissible_ordering(*q, o));
  }
}

TEST(StrictFiltrations, CountsOnOneVertex)
{
  // strict chains 0 < d1 < ... < n in a totally ordered set: compositions of n
  for (long long n = 1; n <= 6; ++n)
    EXPECT_EQ(strict_filtrations(DimVector{n}).size(), std::size_t(1) << (n - 1));
}

TEST(StrictFiltrations, AllStrictAndDistinct)
{
  auto fs = strict_filtrations(DimVector{2, 1, 1});
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t k = 1; k <= fs[i].length(); ++k)
      EXPECT_NE(fs[i][k - 1], fs[i][k]);
    if (i > 0) {
      EXPECT_LT(fs[i - 1], fs[i]);
    }
  }
  // strict chains from 0 to top, counted directly
  std::size_t count = 0;
  auto rec = [&](auto &self, DimVector cur) -> void {
    if (cur == DimVector{2, 1, 1}) {
      ++count;
      return;
    }
    for (long long a = cur[0]; a <= 2; ++a)
      for (long long b = cur[1]; b <= 1; ++b)
        for (long long c = cur[2]; c <= 1; ++c) {
          DimVector n{a, b, c};
          if (n != cur)
            self(self, n);
        }
  };
  rec(rec, DimVector{0, 0, 0});
  EXPECT_EQ(fs.size(), count);
}
