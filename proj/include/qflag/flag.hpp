#pragma once

// Quiver flags: enumeration of subrepresentations and flags over GF(p),
// stratified counts, the q-binomial fiber formula, and the mod-q count via
// reflections.

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "qflag/dynkin.hpp"
#include "qflag/polynomial.hpp"
#include "qflag/reflection.hpp"

namespace qflag {

/// A flag U^0 <= U^1 <= ... <= U^nu of subrepresentations; levels[i][v] is
/// the subspace of M_v at level i.
struct FlagPoint {
  std::vector<std::vector<Subspace>> levels;

  friend bool operator==(const FlagPoint &, const FlagPoint &) = default;
};

namespace detail {

/// Vertex processing order for subrepresentation search: sinks first when the
/// quiver is acyclic, so most arrow constraints become preimage bounds.
inline std::vector<std::size_t> subrep_vertex_order(const Quiver &q)
{
  std::vector<std::size_t> order = q.topological_order();
  if (order.size() != q.vertex_count()) {
    order.clear();
    for (std::size_t i = 0; i < q.vertex_count(); ++i)
      order.push_back(i);
    return order;
  }
  return {order.rbegin(), order.rend()};
}

/// As above, but vertices where U_v is forced (e_v = 0 or e_v = dim M_v)
/// come first, so the last vertex is one with a real choice.
inline std::vector<std::size_t> subrep_vertex_order(const Quiver &q, const DimVector &dim,
                                                    const DimVector &e)
{
  std::vector<std::size_t> base = subrep_vertex_order(q), order;
  for (std::size_t v : base)
    if (e[v] == 0 || e[v] == dim[v])
      order.push_back(v);
  for (std::size_t v : base)
    if (!(e[v] == 0 || e[v] == dim[v]))
      order.push_back(v);
  return order;
}

/// Depth-first search over per-vertex subspaces. At each vertex the
/// candidates are squeezed between the images of already chosen
/// predecessors and the preimages of already chosen successors; loops are
/// checked once the subspace is chosen.
template <typename Leaf>
void subrep_search(const Representation &m, const DimVector &e, Leaf &&leaf)
{
  const Quiver &q = m.quiver();
  q.check_dim(e);
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    if (e[i] < 0 || e[i] > m.dim()[i])
      return;
  const std::vector<std::size_t> order = subrep_vertex_order(q, m.dim(), e);
  std::vector<Subspace> chosen(q.vertex_count());
  std::vector<bool> done(q.vertex_count(), false);

  auto bounds = [&](std::size_t v, Subspace &lower, Subspace &upper) {
    const Elem p = m.p();
    lower = Subspace::zero(p, m.dim_at(v));
    upper = Subspace::full(p, m.dim_at(v));
    for (std::size_t k = 0; k < q.arrow_count(); ++k) {
      const Arrow &a = q.arrow(k);
      if (a.source == a.target)
        continue;
      if (a.source == v && done[a.target])
        upper = intersect(upper, preimage(m.map(k), chosen[a.target]));
      if (a.target == v && done[a.source])
        lower = subspace_sum(lower, image(m.map(k), chosen[a.source]));
    }
  };
  auto loops_ok = [&](std::size_t v) {
    for (std::size_t k = 0; k < q.arrow_count(); ++k) {
      const Arrow &a = q.arrow(k);
      if (a.source == v && a.target == v && chosen[v].dim() > 0 &&
          !chosen[v].contains(m.map(k) * chosen[v].basis().transpose()))
        return false;
    }
    return true;
  };

  auto recurse = [&](auto &self, std::size_t t) -> void {
    if (t == order.size())
      return;
    const std::size_t v = order[t];
    Subspace lower, upper;
    bounds(v, lower, upper);
    const std::size_t ev = static_cast<std::size_t>(e[v]);
    if (leaf(t, order.size(), v, lower, upper, ev, chosen))
      return;
    done[v] = true;
    for_each_subspace_between(lower, upper, ev, [&](const Subspace &u) {
      chosen[v] = u;
      if (!loops_ok(v))
        return;
      if (t + 1 == order.size())
        leaf(order.size(), order.size(), v, lower, upper, ev, chosen);
      else
        self(self, t + 1);
    });
    done[v] = false;
  };
  recurse(recurse, 0);
}

} // namespace detail

/// Calls fn(U) for every subrepresentation U of M with dimension vector e.
template <typename Fn>
void for_each_subrep(const Representation &m, const DimVector &e, Fn &&fn)
{
  if (m.quiver().vertex_count() == 0) {
    fn(std::vector<Subspace>{});
    return;
  }
  detail::subrep_search(m, e,
                        [&](std::size_t t, std::size_t n, std::size_t, const Subspace &,
                            const Subspace &, std::size_t, const std::vector<Subspace> &chosen) {
                          if (t == n)
                            fn(chosen);
                          return false;
                        });
}

/// Number of subrepresentations of M with dimension vector e. With
/// `closed_form_last` the final vertex contributes a Gaussian binomial
/// instead of being enumerated (not valid with loops, which are then enumerated).
inline BigInt count_subreps(const Representation &m, const DimVector &e, bool closed_form_last = true)
{
  const Quiver &q = m.quiver();
  bool shortcut = closed_form_last;
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    if (q.has_loop(i))
      shortcut = false;
  if (q.vertex_count() == 0)
    return 1;
  BigInt total = 0;
  const BigInt p = m.p();
  detail::subrep_search(m, e,
                        [&](std::size_t t, std::size_t n, std::size_t, const Subspace &lower,
                            const Subspace &upper, std::size_t ev, const std::vector<Subspace> &) {
                          if (t == n) {
                            total += 1;
                            return false;
                          }
                          if (shortcut && t + 1 == n) {
                            long long l = static_cast<long long>(lower.dim());
                            long long w = static_cast<long long>(upper.dim());
                            if (upper.contains(lower))
                              total += gaussian_binomial_value(w - l, static_cast<long long>(ev) - l, p);
                            return true;
                          }
                          return false;
                        });
  return total;
}

/// Optional restriction to flags with dim Hom(U^i, S_a) = r^i for all i.
struct Stratum {
  std::size_t vertex;
  std::vector<long long> r;
};

namespace detail {

inline long long hom_to_simple(const Representation &u, std::size_t a)
{
  if (u.quiver().is_sink(a))
    return static_cast<long long>(hom_to_simple_at_sink(u, a));
  return static_cast<long long>(hom_dim(u, Representation::simple(u.quiver_ptr(), u.p(), a)));
}

inline void check_flag_input(const Representation &m, const Filtration &f)
{
  m.quiver().check_dim(f.top());
  if (f.top() != m.dim())
    throw Error("filtration " + f.to_string() + " is not a filtration of " + m.dim().to_string());
}

} // namespace detail

/// Calls fn(point, subreps) for every flag of type f in M, where subreps[i]
/// is U^i as a representation in the echelon basis of its subspaces. If fn
/// returns bool, returning false stops the enumeration.
template <typename Fn>
void for_each_flag(const Representation &m, const Filtration &f, Fn &&fn,
                   const std::optional<Stratum> &stratum = std::nullopt)
{
  detail::check_flag_input(m, f);
  const std::size_t nu = f.length();
  const std::size_t nv = m.quiver().vertex_count();
  if (stratum) {
    m.quiver().check_vertex(stratum->vertex);
    if (stratum->r.size() != nu + 1)
      throw Error("stratum sequence must have " + std::to_string(nu + 1) + " entries");
  }
  auto in_stratum = [&](const Representation &u, std::size_t level) {
    return !stratum || detail::hom_to_simple(u, stratum->vertex) == stratum->r[level];
  };

  FlagPoint pt;
  pt.levels.assign(nu + 1, {});
  std::vector<Representation> reps(nu + 1);
  for (std::size_t v = 0; v < nv; ++v) {
    pt.levels[nu].push_back(Subspace::full(m.p(), m.dim_at(v)));
    pt.levels[0].push_back(Subspace::zero(m.p(), m.dim_at(v)));
  }
  reps[nu] = m;
  reps[0] = Representation::zero(m.quiver_ptr(), m.p());
  if (!in_stratum(reps[nu], nu) || !in_stratum(reps[0], 0))
    return;

  bool stopped = false;
  auto emit = [&] {
    if constexpr (std::is_same_v<decltype(fn(std::as_const(pt), std::as_const(reps))), bool>)
      stopped = !fn(std::as_const(pt), std::as_const(reps));
    else
      fn(std::as_const(pt), std::as_const(reps));
  };
  auto recurse = [&](auto &self, std::size_t k) -> void {
    if (k == 0) {
      emit();
      return;
    }
    const Representation &outer = reps[k + 1];
    for_each_subrep(outer, f[k], [&](const std::vector<Subspace> &sub) {
      if (stopped)
        return;
      std::vector<Subspace> amb;
      for (std::size_t v = 0; v < nv; ++v) {
        if (sub[v].dim() == 0)
          amb.push_back(Subspace::zero(m.p(), m.dim_at(v)));
        else
          amb.push_back(Subspace::row_span(sub[v].basis() * pt.levels[k + 1][v].basis()));
      }
      Representation u = m.restrict_to(amb);
      if (!in_stratum(u, k))
        return;
      pt.levels[k] = std::move(amb);
      reps[k] = std::move(u);
      self(self, k - 1);
    });
  };
  if (nu >= 2)
    recurse(recurse, nu - 1);
  else
    emit();
}

/// Exact number of flags of type f in M over GF(p), by enumeration.
inline BigInt count_flag_bruteforce(const Representation &m, const Filtration &f,
                                    const std::optional<Stratum> &stratum = std::nullopt)
{
  BigInt n = 0;
  for_each_flag(
      m, f, [&](const FlagPoint &, const std::vector<Representation> &) { n += 1; }, stratum);
  return n;
}

/// prod_{i=0}^{nu} [e^{nu-i} - e^{nu-i-1} + r^i choose r^i]_q with e^{-1} = 0:
/// the number of subrepresentations of dimension r of X^{r,e}. Zero unless e
/// is weakly increasing with e^0 >= 0.
inline QPolynomial count_fiber_formula(const std::vector<long long> &r, const std::vector<long long> &e)
{
  if (r.size() != e.size() || r.empty())
    throw Error("fiber formula needs sequences r and e of equal positive length");
  const std::size_t nu = r.size() - 1;
  for (long long x : r)
    if (x < 0)
      throw Error("fiber formula needs r >= 0");
  for (std::size_t j = 0; j <= nu; ++j) {
    long long v = e[j] + r[nu - j];
    if (v < 0 || (j > 0 && v < e[j - 1] + r[nu - j + 1]))
      throw Error("fiber formula needs e + reverse(r) weakly increasing and nonnegative");
  }
  if (e[0] < 0)
    return {};
  for (std::size_t j = 1; j <= nu; ++j)
    if (e[j] < e[j - 1])
      return {};
  QPolynomial out = QPolynomial::constant(1);
  for (std::size_t i = 0; i <= nu; ++i) {
    long long lower = i == nu ? 0 : e[nu - i - 1];
    out = out * qbinom(e[nu - i] - lower + r[i], r[i]);
  }
  return out;
}

/// A_{nu+1} as 0 -> 1 -> ... -> nu.
inline QuiverPtr linear_quiver(std::size_t vertices)
{
  std::vector<VertexLabel> v;
  std::vector<Quiver::ArrowSpec> a;
  for (std::size_t i = 0; i < vertices; ++i) {
    v.push_back(static_cast<VertexLabel>(i));
    if (i + 1 < vertices)
      a.push_back({"f" + std::to_string(i), static_cast<VertexLabel>(i), static_cast<VertexLabel>(i + 1)});
  }
  return make_quiver(Quiver(std::move(v), a));
}

/// X^{r,e}: k^{e^nu + r^0} ->> k^{e^{nu-1} + r^1} ->> ... ->> k^{e^0 + r^nu}
/// with the surjections [I | 0].
inline Representation fiber_representation(const std::vector<long long> &r,
                                           const std::vector<long long> &e, Elem p)
{
  if (r.size() != e.size() || r.empty())
    throw Error("fiber representation needs sequences r and e of equal positive length");
  const std::size_t nu = r.size() - 1;
  DimVector d(nu + 1);
  for (std::size_t i = 0; i <= nu; ++i) {
    d[i] = e[nu - i] + r[i];
    if (d[i] < 0 || (i > 0 && d[i] > d[i - 1]))
      throw Error("fiber representation needs e + reverse(r) weakly increasing and nonnegative");
  }
  std::vector<FpMatrix> maps;
  for (std::size_t i = 0; i < nu; ++i) {
    FpMatrix s(p, d[i + 1], d[i]);
    for (long long t = 0; t < d[i + 1]; ++t)
      s(t, t) = 1;
    maps.push_back(std::move(s));
  }
  return Representation(linear_quiver(nu + 1), p, std::move(d), std::move(maps));
}

/// Residue of the flag count modulo p and whether the flag variety is nonempty.
struct ModQCount {
  unsigned residue = 0;
  bool nonempty = false;
  std::size_t rounds = 0;
};

/// Repeats the Coxeter pass on (M, f) with the first admissible ordering until
/// M vanishes; the count is 1 mod p when every step fits and 0 otherwise.
inline ModQCount count_flag_modq(const Representation &m, const Filtration &f)
{
  detail::check_flag_input(m, f);
  const Quiver &q = m.quiver();
  if (!q.is_acyclic())
    throw Error("reflection count needs an acyclic quiver");
  const std::vector<std::size_t> order = admissible_ordering(q);
  const std::size_t bound = 64 + 8 * q.vertex_count();
  Representation cur = m;
  Filtration cf = f;
  for (std::size_t round = 0;; ++round) {
    if (cur.is_zero()) {
      bool zero = true;
      for (auto const &lvl : cf.levels())
        zero = zero && lvl.is_zero();
      return {zero ? 1u : 0u, zero, round};
    }
    if (round >= bound)
      throw Error("representation is not annihilated by a power of the Coxeter functor");
    CoxeterStep step = coxeter_plus_flag(cur, cf, order);
    if (!step.filtration)
      return {0, false, round + 1};
    cf = std::move(*step.filtration);
    cur = std::move(step.rep);
  }
}

/// Field-independent emptiness of Fl(f, X) for X in the class, decided by the
/// reflection iteration over the classifier's field.
inline bool flag_nonempty(const Classifier &cl, const IsoClass &iso, const Filtration &f)
{
  return count_flag_modq(cl.rep_of_class(iso), f).nonempty;
}

/// [U, S_a] for each level of a flag point.
inline std::vector<long long> stratum_of(const std::vector<Representation> &subreps, std::size_t a)
{
  std::vector<long long> r;
  for (auto const &u : subreps)
    r.push_back(detail::hom_to_simple(u, a));
  return r;
}

} // namespace qflag
