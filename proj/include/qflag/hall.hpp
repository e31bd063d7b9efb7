#pragma once

// Hall numbers, Hall-algebra products over GF(p), Hall polynomials by
// interpolation over primes, composition classes and the q = 0 comparison.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qflag/flag.hpp"

namespace qflag {

/// F^X_{MN}: subrepresentations U of X with U in class N and X/U in class M.
inline BigInt hall_number(const Classifier &cl, const Representation &x, const IsoClass &m,
                          const IsoClass &n)
{
  const RootSystem &rs = cl.roots();
  const DimVector dn = rs.dimension(n);
  if (rs.dimension(m) + dn != x.dim())
    throw Error("dim M + dim N = " + (rs.dimension(m) + dn).to_string() + " but dim X = " +
                x.dim().to_string());
  BigInt count = 0;
  for_each_subrep(x, dn, [&](const std::vector<Subspace> &sub) {
    if (cl.classify(x.restrict_to(sub)) == n && cl.classify(x.quotient(sub)) == m)
      count += 1;
  });
  return count;
}

struct HallPolynomialResult {
  QPolynomial poly;
  long long degree_bound = 0;
  std::vector<Elem> primes; // interpolation nodes
  std::vector<BigInt> counts;
  Elem held_out = 0;
  BigInt held_out_count = 0;
  bool verified = false;
};

/// Shared state for Hall computations over one Dynkin quiver: classifiers
/// per prime and memoized counts.
class HallContext {
public:
  explicit HallContext(QuiverPtr q) : roots_(std::move(q)) {}

  const RootSystem &roots() const { return roots_; }
  const Quiver &quiver() const { return roots_.quiver(); }

  const Classifier &classifier(Elem p)
  {
    auto it = classifiers_.find(p);
    if (it == classifiers_.end())
      it = classifiers_.emplace(p, std::make_unique<Classifier>(roots_, p)).first;
    return *it->second;
  }

  const std::vector<IsoClass> &classes_of_dim(const DimVector &d)
  {
    auto it = classes_.find(d);
    if (it == classes_.end())
      it = classes_.emplace(d, roots_.classes_of_dim(d)).first;
    return it->second;
  }

  using Tally = std::map<std::pair<IsoClass, IsoClass>, BigInt>; // (M, N) -> F^X_{MN}

  /// All F^X_{MN} with dim N = n for X = rep_of_class(xi), from one
  /// enumeration of subrepresentations. A side whose dimension admits a
  /// single class is not classified; if both do, only the number of
  /// subrepresentations matters and the last vertex is counted in closed form.
  const Tally &tally(const IsoClass &xi, const DimVector &n, Elem p)
  {
    auto key = std::make_tuple(xi, n, p);
    auto it = tallies_.find(key);
    if (it != tallies_.end())
      return it->second;
    const Classifier &cl = classifier(p);
    const DimVector dx = roots_.dimension(xi);
    Tally t;
    if (n.is_nonnegative() && n.leq(dx)) {
      const DimVector m = dx - n;
      const auto &sub_classes = classes_of_dim(n);
      const auto &quo_classes = classes_of_dim(m);
      Representation x = cl.rep_of_class(xi);
      if (sub_classes.size() == 1 && quo_classes.size() == 1) {
        BigInt c = count_subreps(x, n, true);
        if (c != 0)
          t[{quo_classes.front(), sub_classes.front()}] = c;
      } else {
        for_each_subrep(x, n, [&](const std::vector<Subspace> &sub) {
          IsoClass nu = sub_classes.size() == 1 ? sub_classes.front() : cl.classify(x.restrict_to(sub));
          IsoClass mu = quo_classes.size() == 1 ? quo_classes.front() : cl.classify(x.quotient(sub));
          t[{mu, nu}] += 1;
        });
      }
    }
    return tallies_.emplace(key, std::move(t)).first->second;
  }

  /// F^X_{MN} over GF(p) for X in class xi.
  BigInt hall_count(const IsoClass &xi, const IsoClass &mu, const IsoClass &nu, Elem p)
  {
    const DimVector dn = roots_.dimension(nu);
    if (roots_.dimension(mu) + dn != roots_.dimension(xi))
      throw Error("Hall number with dim mu + dim nu != dim xi");
    const Tally &t = tally(xi, dn, p);
    auto it = t.find({mu, nu});
    return it == t.end() ? BigInt(0) : it->second;
  }

  /// f^xi_{mu nu} interpolated at the first D+1 primes, D = sum_i n_i m_i,
  /// and checked at the next prime.
  const HallPolynomialResult &hall_polynomial_result(const IsoClass &xi, const IsoClass &mu,
                                                     const IsoClass &nu)
  {
    auto key = std::make_tuple(xi, mu, nu);
    auto it = polys_.find(key);
    if (it != polys_.end())
      return it->second;
    const DimVector n = roots_.dimension(nu), m = roots_.dimension(mu);
    if (m + n != roots_.dimension(xi))
      throw Error("Hall polynomial with dim mu + dim nu != dim xi");
    HallPolynomialResult r;
    for (std::size_t i = 0; i < n.size(); ++i)
      r.degree_bound += n[i] * m[i];
    std::vector<std::uint32_t> primes = first_primes(static_cast<std::size_t>(r.degree_bound) + 2);
    std::vector<std::pair<BigInt, BigInt>> pts;
    for (std::size_t k = 0; k + 1 < primes.size(); ++k) {
      r.primes.push_back(primes[k]);
      r.counts.push_back(hall_count(xi, mu, nu, primes[k]));
      pts.emplace_back(BigInt(primes[k]), r.counts.back());
    }
    r.held_out = primes.back();
    r.held_out_count = hall_count(xi, mu, nu, r.held_out);
    std::optional<QPolynomial> poly = interpolate(pts);
    if (poly) {
      r.poly = *poly;
      r.verified = poly->eval(BigInt(r.held_out)) == r.held_out_count;
    }
    return polys_.emplace(key, std::move(r)).first->second;
  }

  QPolynomial hall_polynomial(const IsoClass &xi, const IsoClass &mu, const IsoClass &nu)
  {
    const HallPolynomialResult &r = hall_polynomial_result(xi, mu, nu);
    if (!r.verified)
      throw InternalError("Hall polynomial failed its held-out check at p = " +
                          std::to_string(r.held_out));
    return r.poly;
  }

private:
  RootSystem roots_;
  std::map<Elem, std::unique_ptr<Classifier>> classifiers_;
  std::map<DimVector, std::vector<IsoClass>> classes_;
  std::map<std::tuple<IsoClass, DimVector, Elem>, Tally> tallies_;
  std::map<std::tuple<IsoClass, IsoClass, IsoClass>, HallPolynomialResult> polys_;
};

/// Finite rational combination of basis elements u_[X].
class HallElement {
public:
  HallElement() = default;

  static HallElement basis(const IsoClass &c)
  {
    HallElement e;
    e.terms_[c] = 1;
    return e;
  }

  const std::map<IsoClass, BigRational> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BigRational coefficient(const IsoClass &c) const
  {
    auto it = terms_.find(c);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  void add(const IsoClass &c, const BigRational &v)
  {
    if (v == 0)
      return;
    BigRational &slot = terms_[c];
    slot += v;
    if (slot == 0)
      terms_.erase(c);
  }

  HallElement &operator+=(const HallElement &o)
  {
    for (auto const &[c, v] : o.terms_)
      add(c, v);
    return *this;
  }

  friend bool operator==(const HallElement &, const HallElement &) = default;

private:
  std::map<IsoClass, BigRational> terms_;
};

/// a * b with structure constants given by `structure(X, M, N)`.
template <typename Structure>
HallElement hall_product_with(HallContext &ctx, const HallElement &a, const HallElement &b,
                              Structure &&structure)
{
  const RootSystem &rs = ctx.roots();
  HallElement out;
  for (auto const &[m, cm] : a.terms())
    for (auto const &[n, cn] : b.terms()) {
      const DimVector dx = rs.dimension(m) + rs.dimension(n);
      for (auto const &x : ctx.classes_of_dim(dx)) {
        BigInt f = structure(x, m, n);
        if (f != 0)
          out.add(x, cm * cn * BigRational(f));
      }
    }
  return out;
}

/// u_M * u_N = sum_X F^X_{MN} u_X over GF(p), extended bilinearly.
inline HallElement hall_product(HallContext &ctx, const HallElement &a, const HallElement &b, Elem p)
{
  return hall_product_with(ctx, a, b, [&](const IsoClass &x, const IsoClass &m, const IsoClass &n) {
    return ctx.hall_count(x, m, n, p);
  });
}

/// The product of the q = 0 specialization: structure constants f^X_{MN}(0).
inline HallElement hall_product_at_zero(HallContext &ctx, const HallElement &a, const HallElement &b)
{
  return hall_product_with(ctx, a, b, [&](const IsoClass &x, const IsoClass &m, const IsoClass &n) {
    return ctx.hall_polynomial(x, m, n).constant_term();
  });
}

inline HallElement simple_element(HallContext &ctx, std::size_t vertex)
{
  return HallElement::basis(ctx.roots().simple_class(vertex));
}

/// u_{w_1} * ... * u_{w_nu} over GF(p).
inline HallElement u_word(HallContext &ctx, const Word &w, Elem p)
{
  if (w.empty())
    throw Error("empty word");
  HallElement acc = simple_element(ctx, w.front());
  for (std::size_t k = 1; k < w.size(); ++k)
    acc = hall_product(ctx, acc, simple_element(ctx, w[k]), p);
  return acc;
}

/// u_w in the q = 0 algebra.
inline HallElement u_word_at_zero(HallContext &ctx, const Word &w)
{
  if (w.empty())
    throw Error("empty word");
  HallElement acc = simple_element(ctx, w.front());
  for (std::size_t k = 1; k < w.size(); ++k)
    acc = hall_product_at_zero(ctx, acc, simple_element(ctx, w[k]));
  return acc;
}

/// The iso classes lying in the composition variety of a word.
struct MonoidElement {
  Word word;
  std::vector<IsoClass> classes; // increasing

  /// sum of u_[X] over the classes
  HallElement indicator() const
  {
    HallElement e;
    for (auto const &c : classes)
      e.add(c, 1);
    return e;
  }
};

/// Classes X of dimension d(w)^nu whose flag variety of type d(w) is nonempty.
inline MonoidElement composition_classes(HallContext &ctx, const Word &w)
{
  const Classifier &cl = ctx.classifier(2);
  Filtration f = word_to_filtration(ctx.quiver(), w);
  MonoidElement out{w, {}};
  for (auto const &x : ctx.classes_of_dim(f.top()))
    if (flag_nonempty(cl, x, f))
      out.classes.push_back(x);
  return out;
}

struct PsiReport {
  bool ok = true;
  std::string detail; // first discrepancy
};

namespace detail {

inline std::string element_difference(const RootSystem &rs, const HallElement &a, const HallElement &b)
{
  std::map<IsoClass, bool> keys;
  for (auto const &t : a.terms())
    keys[t.first] = true;
  for (auto const &t : b.terms())
    keys[t.first] = true;
  for (auto const &k : keys) {
    BigRational x = a.coefficient(k.first), y = b.coefficient(k.first);
    if (x != y) {
      std::string s = "class with multiplicities [";
      for (std::size_t i = 0; i < k.first.mult.size(); ++i)
        s += (i ? "," : "") + std::to_string(k.first.mult[i]);
      return s + "] of dim " + rs.dimension(k.first).to_string() + ": " + x.str() + " vs " + y.str();
    }
  }
  return {};
}

inline std::string word_string(const Quiver &q, const Word &w)
{
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i)
    s += (i ? "," : "") + std::to_string(q.label(w[i]));
  return s + ")";
}

} // namespace detail

/// Checks, in the q = 0 algebra, that the indicator of the classes of wv is the
/// product of the indicators for w and v, and that u_w, u_v, u_wv at q = 0
/// are those indicators.
inline PsiReport verify_psi(HallContext &ctx, const Word &w, const Word &v)
{
  const RootSystem &rs = ctx.roots();
  Word wv = w;
  wv.insert(wv.end(), v.begin(), v.end());
  HallElement iw = composition_classes(ctx, w).indicator();
  HallElement iv = composition_classes(ctx, v).indicator();
  HallElement iwv = composition_classes(ctx, wv).indicator();

  PsiReport rep;
  auto compare = [&](const HallElement &a, const HallElement &b, const std::string &what) {
    if (!rep.ok || a == b)
      return;
    rep.ok = false;
    rep.detail = what + ": " + detail::element_difference(rs, a, b);
  };
  compare(iwv, hall_product_at_zero(ctx, iw, iv),
          "product of composition classes for " + detail::word_string(ctx.quiver(), w) + " and " +
              detail::word_string(ctx.quiver(), v));
  for (auto const &[word, ind] :
       {std::pair<const Word &, const HallElement &>{w, iw}, {v, iv}, {wv, iwv}})
    compare(u_word_at_zero(ctx, word), ind,
            "u_w at q = 0 for w = " + detail::word_string(ctx.quiver(), word));
  return rep;
}

} // namespace qflag
