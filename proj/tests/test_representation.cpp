#include <gtest/gtest.h>

#include "generators.hpp"
#include "qflag/representation.hpp"

using namespace qflag;

namespace {

QuiverPtr a2() { return fixture_quiver("a2"); }
Representation rep(const std::string &name, Elem p = 2) { return *fixture_representation(name, a2(), p); }

// |Hom(M, N)| by trying every tuple of vertex maps
std::size_t hom_count(const Representation &m, const Representation &n)
{
  const Quiver &q = m.quiver();
  std::vector<FpMatrix> f;
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> slots;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) {
    f.emplace_back(m.p(), n.dim_at(i), m.dim_at(i));
    for (std::size_t r = 0; r < n.dim_at(i); ++r)
      for (std::size_t c = 0; c < m.dim_at(i); ++c)
        slots.push_back({i, {r, c}});
  }
  std::size_t count = 0;
  while (true) {
    bool ok = true;
    for (std::size_t k = 0; k < q.arrow_count() && ok; ++k) {
      const Arrow &a = q.arrow(k);
      ok = f[a.target] * m.map(k) == n.map(k) * f[a.source];
    }
    count += ok;
    std::size_t s = 0;
    for (; s < slots.size(); ++s) {
      Elem &e = f[slots[s].first](slots[s].second.first, slots[s].second.second);
      if (++e < m.p())
        break;
      e = 0;
    }
    if (s == slots.size())
      break;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e)
{
  std::size_t r = 1;
  while (e--)
    r *= b;
  return r;
}

} // namespace

TEST(Representation, ShapeValidation)
{
  EXPECT_THROW(Representation(a2(), 2, DimVector{1, 1}, {FpMatrix(2, 2, 1)}), Error);
  EXPECT_THROW(Representation(a2(), 2, DimVector{1, 1}, {}), Error);
  EXPECT_THROW(Representation(a2(), 3, DimVector{1, 1}, {FpMatrix(2, 1, 1)}), Error);
  EXPECT_THROW(Representation(a2(), 2, DimVector{-1, 1}, {FpMatrix(2, 1, 0)}), Error);
}

TEST(Hom, Examples)
{
  EXPECT_EQ(hom_dim(rep("p"), rep("p")), 1u);
  EXPECT_EQ(hom_dim(rep("s1"), rep("p")), 0u);
  EXPECT_EQ(hom_dim(rep("p"), rep("s1")), 1u);
  EXPECT_EQ(hom_dim(rep("p"), rep("s2")), 0u);
  EXPECT_EQ(hom_dim(rep("s2"), rep("p")), 1u);
  EXPECT_EQ(ext_dim(rep("s1"), rep("s2")), 1);
  EXPECT_EQ(ext_dim(rep("s2"), rep("s1")), 0);
}

TEST(Hom, DifferentModuliRejected)
{
  EXPECT_THROW(hom_dim(rep("p", 2), rep("p", 3)), Error);
}

TEST(Dualize, Examples)
{
  Representation dp = dualize(rep("p"));
  EXPECT_EQ(dp.quiver(), a2()->opposite());
  EXPECT_EQ(dp.map(0), FpMatrix::identity(2, 1));
  Representation ds1 = dualize(rep("s1"));
  EXPECT_EQ(ds1.dim(), (DimVector{1, 0}));
  Representation dm = dualize(rep("m22"));
  EXPECT_EQ(dm.dim(), (DimVector{2, 2}));
  EXPECT_EQ(dm.map(0), FpMatrix::from_rows(2, {{1, 0}, {0, 0}}).transpose());
  EXPECT_EQ(dualize(dualize(rep("m22"))), rep("m22"));
}

TEST(HomToSimpleAtSink, Examples)
{
  EXPECT_EQ(hom_to_simple_at_sink(rep("m22"), 1), 1u);
  EXPECT_EQ(hom_to_simple_at_sink(rep("p"), 1), 0u);
  EXPECT_EQ(hom_to_simple_at_sink(rep("s2"), 1), 1u);
  EXPECT_THROW(hom_to_simple_at_sink(rep("p"), 0), Error);
}

TEST(Subrepresentation, RestrictAndQuotient)
{
  Representation m = rep("m22");
  // U = (span e1, span e1): M e1 = e1, so U is a copy of P
  std::vector<Subspace> u{Subspace::row_span(FpMatrix::from_rows(2, {{1, 0}})),
                          Subspace::row_span(FpMatrix::from_rows(2, {{1, 0}}))};
  ASSERT_TRUE(m.is_subrepresentation(u));
  Representation sub = m.restrict_to(u), quo = m.quotient(u);
  EXPECT_EQ(sub, rep("p"));
  EXPECT_EQ(quo.dim(), (DimVector{1, 1}));
  EXPECT_TRUE(quo.map(0).is_zero()); // e2 -> 0
  // (span e1, 0) is not closed under the map
  std::vector<Subspace> bad{Subspace::row_span(FpMatrix::from_rows(2, {{1, 0}})),
                            Subspace::zero(2, 2)};
  EXPECT_FALSE(m.is_subrepresentation(bad));
  EXPECT_THROW(m.restrict_to(bad), Error);
}

// [M, N] from the solver equals log_p of the number of commuting tuples
TEST(HomProperty, AgainstEnumeration)
{
  auto r = gen::rng(30);
  for (auto const &q : {a2(), fixture_quiver("a3"), gen::a2_reversed()})
    for (int t = 0; t < 60; ++t) {
      const Elem p = t % 3 == 0 ? 3 : 2;
      Representation m = gen::rep(r, q, p, 2), n = gen::rep(r, q, p, 2);
      std::size_t unknowns = 0;
      for (std::size_t i = 0; i < q->vertex_count(); ++i)
        unknowns += m.dim_at(i) * n.dim_at(i);
      if (unknowns > (p == 2 ? 12u : 8u))
        continue;
      const std::size_t h = hom_dim(m, n);
      EXPECT_EQ(hom_count(m, n), ipow(p, h));
      auto basis = hom_basis(m, n);
      EXPECT_EQ(basis.size(), h);
      for (auto const &f : basis)
        EXPECT_TRUE(f.commutes(m, n));
    }
}

TEST(HomProperty, DualityAdditivityInvariance)
{
  auto r = gen::rng(31);
  for (auto const &q : {a2(), fixture_quiver("a3"), fixture_quiver("d4")})
    for (int t = 0; t < 40; ++t) {
      const Elem p = t % 2 ? 3 : 2;
      Representation m = gen::rep(r, q, p, 2), n = gen::rep(r, q, p, 2),
                     l = gen::rep(r, q, p, 1);
      EXPECT_EQ(hom_dim(m, n), hom_dim(dualize(n), dualize(m)));
      EXPECT_EQ(hom_dim(direct_sum({m, l}), n), hom_dim(m, n) + hom_dim(l, n));
      EXPECT_EQ(hom_dim(n, direct_sum({m, l})), hom_dim(n, m) + hom_dim(n, l));
      EXPECT_GE(ext_dim(m, n), 0);
      // change of basis gives an isomorphic representation
      std::vector<FpMatrix> g;
      for (std::size_t i = 0; i < q->vertex_count(); ++i)
        g.push_back(random_invertible(p, m.dim_at(i), r));
      Representation gm = m.transformed(g);
      EXPECT_EQ(hom_dim(gm, n), hom_dim(m, n));
      EXPECT_EQ(hom_dim(gm, m), hom_dim(m, m));
      Morphism iso{g};
      EXPECT_TRUE(iso.commutes(m, gm));
    }
}

// the subrepresentation generated by one vector at the source vertex
TEST(SubrepProperty, RestrictQuotientDimensions)
{
  auto r = gen::rng(32);
  for (int t = 0; t < 100; ++t) {
    QuiverPtr q = fixture_quiver("a3");
    const Elem p = 3;
    Representation m = gen::rep(r, q, p, 3);
    // generate from one random vector at vertex 0
    std::vector<Subspace> u;
    for (std::size_t i = 0; i < 3; ++i)
      u.push_back(Subspace::zero(p, m.dim_at(i)));
    if (m.dim_at(0) > 0)
      u[0] = Subspace::row_span(gen::matrix(r, p, 1, m.dim_at(0)));
    u[1] = image(m.map(0), u[0]);
    u[2] = image(m.map(1), u[1]);
    ASSERT_TRUE(m.is_subrepresentation(u));
    Representation s = m.restrict_to(u), quo = m.quotient(u);
    EXPECT_EQ(s.dim() + quo.dim(), m.dim());
    // inclusion U -> M and projection M -> M/U commute with the maps
    std::vector<FpMatrix> incl, proj;
    for (std::size_t i = 0; i < 3; ++i) {
      incl.push_back(u[i].basis().transpose());
      proj.push_back(u[i].quotient_coordinates(FpMatrix::identity(p, m.dim_at(i))));
    }
    EXPECT_TRUE(Morphism{incl}.commutes(s, m));
    EXPECT_TRUE(Morphism{proj}.commutes(m, quo));
  }
}
