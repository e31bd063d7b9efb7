#pragma once

// Reflection functors S+ / S-, the Coxeter functor, splitting off simple
// summands at a sink, and the induced action on filtrations.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qflag/representation.hpp"

namespace qflag {

namespace detail {

inline void require_sink(const Quiver &q, std::size_t a)
{
  q.check_vertex(a);
  if (!q.is_sink(a))
    throw Error("vertex " + std::to_string(q.label(a)) + " is not a sink");
}

inline void require_source(const Quiver &q, std::size_t b)
{
  q.check_vertex(b);
  if (!q.is_source(b))
    throw Error("vertex " + std::to_string(q.label(b)) + " is not a source");
}

} // namespace detail

/// S+_a M over sigma_a Q. N_a is the kernel of phi_a with its canonical basis;
/// the reversed arrow alpha* : a -> j picks out the block of alpha.
inline Representation reflect_rep_plus(const Representation &m, std::size_t a)
{
  const Quiver &q = m.quiver();
  detail::require_sink(q, a);
  FpMatrix ker = rank_kernel(sink_map(m, a)).kernel;
  const std::size_t na = ker.cols();

  DimVector d = m.dim();
  d[a] = static_cast<long long>(na);
  std::vector<FpMatrix> maps;
  std::size_t row = 0;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const Arrow &arr = q.arrow(k);
    if (arr.target != a) {
      maps.push_back(m.map(k));
      continue;
    }
    const std::size_t dj = m.dim_at(arr.source);
    maps.push_back(ker.block(row, 0, dj, na));
    row += dj;
  }
  return Representation(make_quiver(q.reflected(a)), m.p(), std::move(d), std::move(maps));
}

/// S-_b N = D S+_b D N for a source b.
inline Representation reflect_rep_minus(const Representation &n, std::size_t b)
{
  detail::require_source(n.quiver(), b);
  return dualize(reflect_rep_plus(dualize(n), b));
}

/// The composite of S+ along an admissible ordering; lands back on the same quiver.
inline Representation coxeter_plus(const Representation &m, const std::vector<std::size_t> &order)
{
  if (!is_admissible_ordering(m.quiver(), order))
    throw Error("ordering is not admissible for this quiver");
  Representation cur = m;
  for (std::size_t a : order)
    cur = reflect_rep_plus(cur, a);
  return cur.with_quiver(m.quiver_ptr());
}

/// C- along the reverse of an admissible ordering.
inline Representation coxeter_minus(const Representation &m, const std::vector<std::size_t> &order)
{
  if (!is_admissible_ordering(m.quiver(), order))
    throw Error("ordering is not admissible for this quiver");
  // the reversed admissible ordering lists successive sources
  Representation cur = m;
  for (std::size_t t = order.size(); t-- > 0;)
    cur = reflect_rep_minus(cur, order[t]);
  return cur.with_quiver(m.quiver_ptr());
}

struct SplitSimple {
  Representation rest; // [rest, S_a] = 0
  std::size_t s = 0;   // multiplicity of S_a split off
};

/// M = rest + S_a^s at a sink a. Vertex a is re-based so that im phi_a comes
/// first and a complement spanned by standard vectors comes last; the last s
/// coordinates are then dropped.
inline SplitSimple pi_a(const Representation &m, std::size_t a)
{
  const Quiver &q = m.quiver();
  detail::require_sink(q, a);
  const std::size_t da = m.dim_at(a);
  Subspace im = Subspace::column_span(sink_map(m, a));
  const std::size_t r = im.dim();

  FpMatrix b(m.p(), da, da);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t i = 0; i < da; ++i)
      b(i, c) = im.basis()(c, i);
  std::vector<std::size_t> comp = im.complement_indices();
  for (std::size_t c = 0; c < comp.size(); ++c)
    b(comp[c], r + c) = 1;

  std::vector<FpMatrix> g;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    g.push_back(i == a ? inverse(b) : FpMatrix::identity(m.p(), m.dim_at(i)));
  Representation moved = m.transformed(g);

  DimVector d = m.dim();
  d[a] = static_cast<long long>(r);
  std::vector<FpMatrix> maps;
  for (std::size_t k = 0; k < q.arrow_count(); ++k) {
    const FpMatrix &mk = moved.map(k);
    if (q.arrow(k).target == a) {
      if (!mk.block(r, 0, da - r, mk.cols()).is_zero())
        throw InternalError("image of phi_a escaped its basis after re-basing");
      maps.push_back(mk.block(0, 0, r, mk.cols()));
    } else {
      maps.push_back(mk);
    }
  }
  return {Representation(m.quiver_ptr(), m.p(), std::move(d), std::move(maps)), da - r};
}

/// The minimal stratum sequence r+ forced on flags of type f in <a>^s:
/// r^0 = 0, r^i = max{0, (sigma_a(d^{i-1} - d^i))_a + r^{i-1}}, r^nu = s.
inline std::vector<long long> r_plus(const Quiver &q, std::size_t a, const Filtration &f, long long s)
{
  q.check_vertex(a);
  q.check_dim(f.top());
  const std::size_t nu = f.length();
  std::vector<long long> r(nu + 1, 0);
  for (std::size_t i = 1; i < nu; ++i) {
    long long step = reflect_dimvec(q, a, f[i - 1] - f[i])[a] + r[i - 1];
    r[i] = std::max(0LL, step);
  }
  r[nu] = s;
  return r;
}

/// S+_a applied to a flag type: interior terms sigma_a d^i + r+^i e_a, top
/// sigma_a(dim M) + s e_a. Nothing when the result is not a filtration, in
/// which case the flag variety is empty.
inline std::optional<Filtration> reflect_filtration_plus(const Quiver &q, std::size_t a,
                                                         const Filtration &f, const DimVector &dim_m,
                                                         long long s)
{
  detail::require_sink(q, a);
  if (f.top() != dim_m)
    throw Error("filtration " + f.to_string() + " is not a filtration of " + dim_m.to_string());
  const std::size_t nu = f.length();
  std::vector<long long> r = r_plus(q, a, f, s);
  std::vector<DimVector> levels{q.zero()};
  for (std::size_t i = 1; i < nu; ++i) {
    DimVector t = reflect_dimvec(q, a, f[i]);
    t[a] += r[i];
    levels.push_back(std::move(t));
  }
  DimVector top = reflect_dimvec(q, a, dim_m);
  top[a] += s;
  levels.push_back(std::move(top));
  if (!Filtration::is_valid(levels))
    return std::nullopt;
  return Filtration(std::move(levels));
}

/// One pass of S+ along `order` applied simultaneously to M and a flag type.
struct CoxeterStep {
  std::optional<Filtration> filtration; // nothing: the flag variety is empty
  Representation rep;
};

inline CoxeterStep coxeter_plus_flag(const Representation &m, const Filtration &f,
                                     const std::vector<std::size_t> &order)
{
  if (!is_admissible_ordering(m.quiver(), order))
    throw Error("ordering is not admissible for this quiver");
  Representation cur = m;
  Filtration cf = f;
  for (std::size_t a : order) {
    long long s = static_cast<long long>(hom_to_simple_at_sink(cur, a));
    auto next = reflect_filtration_plus(cur.quiver(), a, cf, cur.dim(), s);
    if (!next)
      return {std::nullopt, cur};
    cf = std::move(*next);
    cur = reflect_rep_plus(cur, a);
  }
  return {std::move(cf), cur.with_quiver(m.quiver_ptr())};
}

/// Applies the Coxeter pass on flag types for every admissible ordering and
/// reports the distinct outcomes. Whether C+ on filtrations is independent of
/// the ordering is left open; this only collects data.
struct OrderingComparison {
  std::vector<std::vector<std::size_t>> orderings;
  std::vector<std::optional<Filtration>> results;
  bool all_equal = true;
};

inline OrderingComparison compare_orderings_on_filtration(const Representation &m, const Filtration &f)
{
  OrderingComparison out;
  out.orderings = admissible_orderings(m.quiver());
  for (auto const &o : out.orderings) {
    out.results.push_back(coxeter_plus_flag(m, f, o).filtration);
    if (out.results.back() != out.results.front())
      out.all_equal = false;
  }
  return out;
}

} // namespace qflag
