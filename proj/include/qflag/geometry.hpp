#pragma once

// Tangent spaces of quiver flags as chain-map Hom spaces, dimension
// formulas, the codimension estimate and counting polynomials.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qflag/flag.hpp"
#include "qflag/hall.hpp"

namespace qflag {

/// U^0 -> U^1 -> ... -> U^nu; maps[k][v] : U^k_v -> U^{k+1}_v.
struct ChainRep {
  std::vector<Representation> levels;
  std::vector<std::vector<FpMatrix>> maps;

  std::size_t length() const { return levels.empty() ? 0 : levels.size() - 1; }
  std::vector<DimVector> dims() const
  {
    std::vector<DimVector> d;
    for (auto const &l : levels)
      d.push_back(l.dim());
    return d;
  }
};

/// sum_i <u^i, v^i> - sum_i <u^i, v^{i+1}>
inline long long euler_form_lambda(const Quiver &q, const std::vector<DimVector> &du,
                                   const std::vector<DimVector> &dv)
{
  if (du.size() != dv.size())
    throw Error("chains of different lengths");
  long long s = 0;
  for (std::size_t i = 0; i < du.size(); ++i) {
    s += euler_form(q, du[i], dv[i]);
    if (i + 1 < du.size())
      s -= euler_form(q, du[i], dv[i + 1]);
  }
  return s;
}

namespace detail {

/// Homogeneous linear system whose unknowns are matrix blocks; equations are
/// added as matrix identities sum_t L_t X_t R_t = 0.
class BlockSystem {
public:
  struct Term {
    std::size_t block;
    const FpMatrix *left;  // nullptr: identity
    const FpMatrix *right; // nullptr: identity
    bool negate = false;
  };

  explicit BlockSystem(Elem p) : p_(p) {}

  std::size_t add_unknown(std::size_t rows, std::size_t cols)
  {
    blocks_.push_back({rows, cols, unknowns_});
    unknowns_ += rows * cols;
    return blocks_.size() - 1;
  }

  void add_equations(std::size_t m, std::size_t n, const std::vector<Term> &terms)
  {
    const std::size_t base = eqs_.size();
    eqs_.resize(base + m * n);
    for (auto const &t : terms) {
      const Block &b = blocks_.at(t.block);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < n; ++c) {
          auto &row = eqs_[base + a * n + c];
          for (std::size_t s = 0; s < b.rows; ++s) {
            Elem l = t.left ? (*t.left)(a, s) : Elem(a == s);
            if (l == 0)
              continue;
            for (std::size_t u = 0; u < b.cols; ++u) {
              Elem r = t.right ? (*t.right)(u, c) : Elem(u == c);
              if (r == 0)
                continue;
              Elem v = mod_mul(l, r, p_);
              row.emplace_back(b.offset + s * b.cols + u, t.negate ? mod_neg(v, p_) : v);
            }
          }
        }
    }
  }

  std::size_t unknowns() const { return unknowns_; }

  std::size_t nullity() const
  {
    FpMatrix sys(p_, eqs_.size(), unknowns_);
    for (std::size_t r = 0; r < eqs_.size(); ++r)
      for (auto const &[col, v] : eqs_[r])
        sys(r, col) = mod_add(sys(r, col), v, p_);
    return unknowns_ - rank(sys);
  }

private:
  struct Block {
    std::size_t rows, cols, offset;
  };
  Elem p_;
  std::size_t unknowns_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::vector<std::pair<std::size_t, Elem>>> eqs_;
};

inline void check_chain(const ChainRep &c)
{
  if (c.levels.empty())
    throw Error("empty chain");
  if (c.maps.size() != c.levels.size() - 1)
    throw Error("chain needs one connecting map per step");
}

} // namespace detail

/// dim Hom_Lambda(U, V) for chains of representations: per-level morphisms
/// h^k with h^{k+1} f^k = g^k h^k.
inline std::size_t hom_dim_lambda(const ChainRep &u, const ChainRep &v)
{
  detail::check_chain(u);
  detail::check_chain(v);
  if (u.levels.size() != v.levels.size())
    throw Error("chains of different lengths");
  const Quiver &q = u.levels.front().quiver();
  const Elem p = u.levels.front().p();
  for (std::size_t k = 0; k < u.levels.size(); ++k) {
    check_compatible(u.levels[k], v.levels[k]);
    check_compatible(u.levels.front(), u.levels[k]);
  }
  const std::size_t nv = q.vertex_count();
  detail::BlockSystem sys(p);
  std::vector<std::vector<std::size_t>> h(u.levels.size(), std::vector<std::size_t>(nv));
  for (std::size_t k = 0; k < u.levels.size(); ++k)
    for (std::size_t i = 0; i < nv; ++i)
      h[k][i] = sys.add_unknown(v.levels[k].dim_at(i), u.levels[k].dim_at(i));

  for (std::size_t k = 0; k < u.levels.size(); ++k) {
    const Representation &uk = u.levels[k], &vk = v.levels[k];
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const Arrow &arr = q.arrow(a);
      // h_j U_alpha - V_alpha h_i = 0
      sys.add_equations(vk.dim_at(arr.target), uk.dim_at(arr.source),
                        {{h[k][arr.target], nullptr, &uk.map(a), false},
                         {h[k][arr.source], &vk.map(a), nullptr, true}});
    }
  }
  for (std::size_t k = 0; k + 1 < u.levels.size(); ++k)
    for (std::size_t i = 0; i < nv; ++i)
      // h^{k+1} f^k - g^k h^k = 0
      sys.add_equations(v.levels[k + 1].dim_at(i), u.levels[k].dim_at(i),
                        {{h[k + 1][i], nullptr, &u.maps[k][i], false},
                         {h[k][i], &v.maps[k][i], nullptr, true}});
  return sys.nullity();
}

inline long long ext1_lambda(const ChainRep &u, const ChainRep &v)
{
  return static_cast<long long>(hom_dim_lambda(u, v)) -
         euler_form_lambda(u.levels.front().quiver(), u.dims(), v.dims());
}

namespace detail {

inline void check_flag_point(const Representation &m, const FlagPoint &pt)
{
  const std::size_t nv = m.quiver().vertex_count();
  if (pt.levels.size() < 2)
    throw Error("flag point needs at least two levels");
  for (std::size_t k = 0; k < pt.levels.size(); ++k) {
    if (pt.levels[k].size() != nv)
      throw Error("flag level " + std::to_string(k) + " needs one subspace per vertex");
    if (!m.is_subrepresentation(pt.levels[k]))
      throw Error("flag level " + std::to_string(k) + " is not a subrepresentation");
    for (std::size_t v = 0; v < nv; ++v) {
      if (k == 0 && pt.levels[k][v].dim() != 0)
        throw Error("flag level 0 must be zero");
      if (k + 1 == pt.levels.size() && pt.levels[k][v].dim() != m.dim_at(v))
        throw Error("last flag level must be the whole representation");
      if (k > 0 && !pt.levels[k][v].contains(pt.levels[k - 1][v]))
        throw Error("flag levels are not nested");
    }
  }
}

} // namespace detail

/// The chain U^0 <= ... <= U^nu of a flag point, with inclusion maps.
inline ChainRep flag_chain(const Representation &m, const FlagPoint &pt)
{
  detail::check_flag_point(m, pt);
  ChainRep c;
  for (auto const &lvl : pt.levels)
    c.levels.push_back(m.restrict_to(lvl));
  for (std::size_t k = 0; k + 1 < pt.levels.size(); ++k) {
    std::vector<FpMatrix> step;
    for (std::size_t v = 0; v < pt.levels[k].size(); ++v) {
      const Subspace &lo = pt.levels[k][v], &hi = pt.levels[k + 1][v];
      step.push_back(lo.dim() == 0 ? FpMatrix(m.p(), hi.dim(), 0)
                                   : hi.coordinates(lo.basis().transpose()));
    }
    c.maps.push_back(std::move(step));
  }
  return c;
}

/// M/U^0 ->> M/U^1 ->> ... ->> M/U^nu with quotients in complement coordinates.
inline ChainRep quotient_chain(const Representation &m, const FlagPoint &pt)
{
  detail::check_flag_point(m, pt);
  ChainRep c;
  for (auto const &lvl : pt.levels)
    c.levels.push_back(m.quotient(lvl));
  for (std::size_t k = 0; k + 1 < pt.levels.size(); ++k) {
    std::vector<FpMatrix> step;
    for (std::size_t v = 0; v < pt.levels[k].size(); ++v) {
      std::vector<std::size_t> comp = pt.levels[k][v].complement_indices();
      FpMatrix lift(m.p(), m.dim_at(v), comp.size());
      for (std::size_t t = 0; t < comp.size(); ++t)
        lift(comp[t], t) = 1;
      step.push_back(pt.levels[k + 1][v].quotient_coordinates(lift));
    }
    c.maps.push_back(std::move(step));
  }
  return c;
}

/// M = M = ... = M with identity maps.
inline ChainRep constant_chain(const Representation &m, std::size_t nu)
{
  ChainRep c;
  c.levels.assign(nu + 1, m);
  for (std::size_t k = 0; k < nu; ++k) {
    std::vector<FpMatrix> step;
    for (std::size_t v = 0; v < m.quiver().vertex_count(); ++v)
      step.push_back(FpMatrix::identity(m.p(), m.dim_at(v)));
    c.maps.push_back(std::move(step));
  }
  return c;
}

/// dim of the tangent space Hom_Lambda(U, M/U) at a flag point.
inline std::size_t tangent_dim(const Representation &m, const FlagPoint &pt)
{
  return hom_dim_lambda(flag_chain(m, pt), quotient_chain(m, pt));
}

/// dim Rep(d) = sum_{alpha: i -> j} d_i d_j
inline long long dim_rep(const Quiver &q, const DimVector &d)
{
  q.check_dim(d);
  long long s = 0;
  for (auto const &a : q.arrows())
    s += d[a.source] * d[a.target];
  return s;
}

/// sum_{k=1}^{nu-1} <d^k, d^{k+1} - d^k>
inline long long flag_euler_sum(const Quiver &q, const Filtration &f)
{
  long long s = 0;
  for (std::size_t k = 1; k < f.length(); ++k)
    s += euler_form(q, f[k], f[k + 1] - f[k]);
  return s;
}

inline long long dim_rep_fl(const Quiver &q, const Filtration &f)
{
  return flag_euler_sum(q, f) + dim_rep(q, f.top());
}

/// Dimension of the product over vertices of the vector-space flag varieties.
inline long long dim_ofl(const Filtration &f)
{
  long long s = 0;
  for (std::size_t i = 0; i < f.vertex_count(); ++i)
    for (std::size_t k = 1; k < f.length(); ++k)
      s += f[k][i] * (f[k + 1][i] - f[k][i]);
  return s;
}

struct CodimReport {
  long long dim_rep_fl = 0;
  long long dim_rep = 0;
  long long codim = 0;     // min [X, X]^1 over classes with a flag of this type
  long long ext_bound = 0; // [X, X]^1 of the minimizing class
  std::optional<IsoClass> minimizer;
  std::vector<IsoClass> classes; // classes with a flag of this type
  bool unique_minimizer = false;
  bool nonempty = false;
  // per-point checks on the minimizing class over GF(2)
  std::size_t sampled_points = 0;
  std::optional<long long> min_ext_lambda; // smallest ext^1(U, M/U) seen
  bool point_bounds_hold = true;
  bool bound_holds = false;
};

/// Codimension of the locus of representations admitting a flag of type f,
/// via the dense orbit, and checks of
/// codim <= ext^1(U, M/U) <= ext^1(U, M) <= [M, M]^1 at up to `sample`
/// flag points of the minimizing class over GF(2).
inline CodimReport codim_report(HallContext &ctx, const Filtration &f, std::size_t sample = 8)
{
  const Quiver &q = ctx.quiver();
  const Classifier &cl = ctx.classifier(2);
  CodimReport r;
  r.dim_rep_fl = dim_rep_fl(q, f);
  r.dim_rep = dim_rep(q, f.top());
  long long best = std::numeric_limits<long long>::max();
  std::size_t best_count = 0;
  for (auto const &x : ctx.classes_of_dim(f.top())) {
    if (!flag_nonempty(cl, x, f))
      continue;
    r.classes.push_back(x);
    long long e = self_ext_dim(cl, x);
    if (e < best) {
      best = e;
      best_count = 1;
      r.minimizer = x;
    } else if (e == best) {
      ++best_count;
    }
  }
  r.nonempty = r.minimizer.has_value();
  if (!r.nonempty)
    return r;
  r.codim = best;
  r.ext_bound = best;
  r.unique_minimizer = best_count == 1;

  Representation m = cl.rep_of_class(*r.minimizer);
  const long long self_ext = self_ext_dim(cl, *r.minimizer);
  ChainRep mm = constant_chain(m, f.length());
  for_each_flag(m, f, [&](const FlagPoint &pt, const std::vector<Representation> &) {
    ChainRep u = flag_chain(m, pt);
    long long e_quot = ext1_lambda(u, quotient_chain(m, pt));
    long long e_full = ext1_lambda(u, mm);
    if (!r.min_ext_lambda || e_quot < *r.min_ext_lambda)
      r.min_ext_lambda = e_quot;
    if (!(r.codim <= e_quot && e_quot <= e_full && e_full <= self_ext))
      r.point_bounds_hold = false;
    return ++r.sampled_points < sample;
  });

  r.bound_holds = r.codim <= r.ext_bound && r.dim_rep - r.codim <= r.dim_rep_fl &&
                  r.unique_minimizer && r.sampled_points > 0 && r.point_bounds_hold;
  return r;
}

struct CountingPolynomial {
  QPolynomial poly;
  long long degree_bound = 0;
  std::vector<Elem> primes;
  std::vector<BigInt> counts;
  Elem held_out = 0;
  BigInt held_out_count = 0;
  bool verified = false;
  BigInt p0() const { return poly.eval(0); }
  BigInt p1() const { return poly.eval(1); }
};

/// #Fl(f, X) interpolated over primes with degree bound dim OFl(f) and one
/// held-out prime.
inline CountingPolynomial counting_polynomial_flag(HallContext &ctx, const IsoClass &iso,
                                                   const Filtration &f)
{
  CountingPolynomial c;
  c.degree_bound = dim_ofl(f);
  std::vector<std::uint32_t> primes = first_primes(static_cast<std::size_t>(c.degree_bound) + 2);
  std::vector<std::pair<BigInt, BigInt>> pts;
  for (std::size_t k = 0; k < primes.size(); ++k) {
    Representation x = ctx.classifier(primes[k]).rep_of_class(iso);
    BigInt n = count_flag_bruteforce(x, f);
    if (k + 1 < primes.size()) {
      c.primes.push_back(primes[k]);
      c.counts.push_back(n);
      pts.emplace_back(BigInt(primes[k]), n);
    } else {
      c.held_out = primes[k];
      c.held_out_count = n;
    }
  }
  std::optional<QPolynomial> poly = interpolate(pts);
  if (poly) {
    c.poly = *poly;
    c.verified = poly->eval(BigInt(c.held_out)) == c.held_out_count;
  }
  return c;
}

} // namespace qflag
