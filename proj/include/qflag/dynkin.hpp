#pragma once

// Positive roots of Dynkin quivers, indecomposables built by reflection, and
// Krull-Schmidt classification through Hom dimensions.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qflag/reflection.hpp"

namespace qflag {

/// Whether the symmetrized Euler form is positive definite (and no loops),
/// i.e. every connected component has an ADE underlying graph.
inline bool is_dynkin(const Quiver &q)
{
  const std::size_t n = q.vertex_count();
  for (std::size_t i = 0; i < n; ++i)
    if (q.has_loop(i))
      return false;
  // Sylvester's criterion with fraction-free (Bareiss) elimination; the k-th
  // pivot is the k-th leading principal minor
  std::vector<std::vector<long long>> c(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i][j] = symmetric_form(q, q.simple_root(i), q.simple_root(j));
  long long prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (c[k][k] <= 0)
      return false;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        c[i][j] = (c[i][j] * c[k][k] - c[i][k] * c[k][j]) / prev;
    prev = c[k][k];
  }
  return true;
}

/// Multiplicities on the positive roots, in RootSystem order.
struct IsoClass {
  std::vector<long long> mult;

  IsoClass() = default;
  explicit IsoClass(std::vector<long long> m) : mult(std::move(m)) {}

  bool is_zero() const
  {
    return std::all_of(mult.begin(), mult.end(), [](long long x) { return x == 0; });
  }

  IsoClass &operator+=(const IsoClass &o)
  {
    if (o.mult.size() != mult.size())
      throw Error("iso classes over different root systems");
    for (std::size_t i = 0; i < mult.size(); ++i)
      mult[i] += o.mult[i];
    return *this;
  }
  friend IsoClass operator+(IsoClass a, const IsoClass &b) { return a += b; }

  friend bool operator==(const IsoClass &, const IsoClass &) = default;
  friend auto operator<=>(const IsoClass &, const IsoClass &) = default;
};

class RootSystem {
public:
  RootSystem() = default;

  /// Closure of the simple roots under all reflections, kept positive.
  explicit RootSystem(QuiverPtr q) : quiver_(std::move(q))
  {
    if (!is_dynkin(*quiver_))
      throw Error("quiver is not of Dynkin type");
    const std::size_t n = quiver_->vertex_count();
    std::set<DimVector> seen;
    std::deque<DimVector> todo;
    for (std::size_t i = 0; i < n; ++i) {
      seen.insert(quiver_->simple_root(i));
      todo.push_back(quiver_->simple_root(i));
    }
    while (!todo.empty()) {
      DimVector r = todo.front();
      todo.pop_front();
      for (std::size_t a = 0; a < n; ++a) {
        DimVector s = reflect_dimvec(*quiver_, a, r);
        if (s.is_positive() && seen.insert(s).second)
          todo.push_back(s);
      }
      if (seen.size() > 200)
        throw InternalError("root closure did not terminate on a Dynkin quiver");
    }
    roots_.assign(seen.begin(), seen.end());
    std::sort(roots_.begin(), roots_.end(), [](const DimVector &x, const DimVector &y) {
      if (x.total() != y.total())
        return x.total() < y.total();
      return x < y;
    });
  }

  const Quiver &quiver() const { return *quiver_; }
  const QuiverPtr &quiver_ptr() const { return quiver_; }
  std::size_t size() const { return roots_.size(); }
  const std::vector<DimVector> &roots() const { return roots_; }
  const DimVector &root(std::size_t k) const { return roots_.at(k); }

  std::optional<std::size_t> index_of(const DimVector &d) const
  {
    for (std::size_t k = 0; k < roots_.size(); ++k)
      if (roots_[k] == d)
        return k;
    return std::nullopt;
  }

  IsoClass zero_class() const { return IsoClass(std::vector<long long>(roots_.size(), 0)); }

  IsoClass single(std::size_t k, long long m = 1) const
  {
    IsoClass c = zero_class();
    c.mult.at(k) = m;
    return c;
  }

  /// The class of the simple at vertex i.
  IsoClass simple_class(std::size_t i) const { return single(*index_of(quiver_->simple_root(i))); }

  DimVector dimension(const IsoClass &c) const
  {
    check(c);
    DimVector d = quiver_->zero();
    for (std::size_t k = 0; k < roots_.size(); ++k)
      d += c.mult[k] * roots_[k];
    return d;
  }

  void check(const IsoClass &c) const
  {
    if (c.mult.size() != roots_.size())
      throw Error("iso class has " + std::to_string(c.mult.size()) + " entries, root system has " +
                  std::to_string(roots_.size()));
    for (long long m : c.mult)
      if (m < 0)
        throw Error("negative multiplicity in iso class");
  }

  /// Every iso class of dimension vector d, in increasing order.
  std::vector<IsoClass> classes_of_dim(const DimVector &d) const
  {
    quiver_->check_dim(d);
    std::vector<IsoClass> out;
    if (!d.is_nonnegative())
      return out;
    IsoClass cur = zero_class();
    auto recurse = [&](auto &self, std::size_t k, const DimVector &rest) -> void {
      if (rest.is_zero()) {
        out.push_back(cur);
        return;
      }
      if (k == roots_.size())
        return;
      DimVector r = rest;
      long long m = 0;
      while (true) {
        cur.mult[k] = m;
        self(self, k + 1, r);
        r -= roots_[k];
        if (!r.is_nonnegative())
          break;
        ++m;
      }
      cur.mult[k] = 0;
    };
    recurse(recurse, 0, d);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Every iso class with total dimension between 1 and max_total.
  std::vector<IsoClass> classes_up_to_total(long long max_total) const
  {
    std::vector<IsoClass> out;
    for (auto const &d : dim_vectors_up_to_total(max_total))
      for (auto &c : classes_of_dim(d))
        out.push_back(std::move(c));
    return out;
  }

  /// Nonzero dimension vectors with total at most max_total, by total then lexicographically.
  std::vector<DimVector> dim_vectors_up_to_total(long long max_total) const
  {
    std::vector<DimVector> out;
    DimVector d = quiver_->zero();
    auto recurse = [&](auto &self, std::size_t i, long long left) -> void {
      if (i == d.size()) {
        if (!d.is_zero())
          out.push_back(d);
        return;
      }
      for (long long v = 0; v <= left; ++v) {
        d[i] = v;
        self(self, i + 1, left - v);
      }
      d[i] = 0;
    };
    recurse(recurse, 0, max_total);
    std::sort(out.begin(), out.end(), [](const DimVector &x, const DimVector &y) {
      if (x.total() != y.total())
        return x.total() < y.total();
      return x < y;
    });
    return out;
  }

private:
  QuiverPtr quiver_;
  std::vector<DimVector> roots_;
};

inline RootSystem positive_roots(QuiverPtr q) { return RootSystem(std::move(q)); }

/// An indecomposable with dimension vector `root`: walk the admissible
/// ordering cyclically, reflecting the root at successive sinks until it is
/// the simple root of the current sink, then apply S- back down.
inline Representation indecomposable_rep(const QuiverPtr &q, const DimVector &root, Elem p)
{
  q->check_dim(root);
  if (!is_dynkin(*q))
    throw Error("quiver is not of Dynkin type");
  if (!RootSystem(q).index_of(root))
    throw Error(root.to_string() + " is not a positive root");
  const std::vector<std::size_t> order = admissible_ordering(*q);
  const std::size_t n = order.size();

  std::vector<std::size_t> path;
  DimVector beta = root;
  Quiver cur = *q;
  for (std::size_t t = 0;; ++t) {
    if (t > 4 * n * (root.total() + n))
      throw InternalError("reflection walk for " + root.to_string() + " did not reach a simple root");
    std::size_t a = order[t % n];
    if (beta == cur.simple_root(a))
      break;
    beta = reflect_dimvec(cur, a, beta);
    if (!beta.is_positive())
      throw InternalError("root became non-positive during the reflection walk");
    cur = cur.reflected(a);
    path.push_back(a);
  }
  std::size_t last = order[path.size() % n];
  Representation x = Representation::simple(make_quiver(cur), p, last);
  for (std::size_t t = path.size(); t-- > 0;)
    x = reflect_rep_minus(x, path[t]);
  x = x.with_quiver(q);
  if (x.dim() != root || hom_dim(x, x) != 1)
    throw InternalError("reflection construction of " + root.to_string() +
                        " did not give a brick of that dimension");
  return x;
}

/// Classification of representations of a fixed Dynkin quiver over GF(p) by
/// solving [X_a, M] = sum_b [X_a, X_b] m_b, with the indecomposables X_a
/// ordered so that the Hom matrix is unitriangular.
class Classifier {
public:
  Classifier(RootSystem roots, Elem p) : roots_(std::move(roots)), p_(p)
  {
    const std::size_t n = roots_.size();
    for (std::size_t k = 0; k < n; ++k)
      indec_.push_back(indecomposable_rep(roots_.quiver_ptr(), roots_.root(k), p_));
    hom_.assign(n, std::vector<long long>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        hom_[a][b] = static_cast<long long>(hom_dim(indec_[a], indec_[b]));

    // order with a before b whenever Hom(X_a, X_b) != 0
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      if (hom_[a][a] != 1)
        throw InternalError("indecomposable with endomorphism dimension != 1");
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && hom_[a][b] != 0)
          ++indeg[b];
    }
    std::vector<bool> done(n, false);
    while (order_.size() < n) {
      bool progress = false;
      for (std::size_t a = 0; a < n; ++a) {
        if (done[a] || indeg[a] != 0)
          continue;
        done[a] = true;
        order_.push_back(a);
        for (std::size_t b = 0; b < n; ++b)
          if (b != a && hom_[a][b] != 0)
            --indeg[b];
        progress = true;
        break;
      }
      if (!progress)
        throw InternalError("Hom relation among indecomposables has a cycle");
    }
  }

  const RootSystem &roots() const { return roots_; }
  Elem p() const { return p_; }
  const Representation &indecomposable(std::size_t k) const { return indec_.at(k); }
  /// [X_a, X_b] for roots a, b in RootSystem order.
  long long hom_between(std::size_t a, std::size_t b) const { return hom_.at(a).at(b); }

  IsoClass classify(const Representation &m) const
  {
    check_compatible(indec_.empty() ? m : indec_.front(), m);
    const std::size_t n = roots_.size();
    std::vector<long long> h(n);
    for (std::size_t a = 0; a < n; ++a)
      h[a] = static_cast<long long>(hom_dim(indec_[a], m));
    std::vector<long long> mult(n, 0);
    for (std::size_t t = n; t-- > 0;) {
      std::size_t a = order_[t];
      long long v = h[a];
      for (std::size_t u = t + 1; u < n; ++u)
        v -= hom_[a][order_[u]] * mult[order_[u]];
      if (v < 0)
        throw InternalError("negative multiplicity while classifying");
      mult[a] = v;
    }
    IsoClass c(std::move(mult));
    for (std::size_t a = 0; a < n; ++a) {
      long long s = 0;
      for (std::size_t b = 0; b < n; ++b)
        s += hom_[a][b] * c.mult[b];
      if (s != h[a])
        throw InternalError("Hom vector not reproduced by classification");
    }
    if (roots_.dimension(c) != m.dim())
      throw InternalError("classified dimension " + roots_.dimension(c).to_string() +
                          " differs from " + m.dim().to_string());
    return c;
  }

  /// Direct sum of indecomposables, in root order.
  Representation rep_of_class(const IsoClass &c) const
  {
    roots_.check(c);
    std::vector<Representation> parts;
    for (std::size_t k = 0; k < c.mult.size(); ++k)
      for (long long i = 0; i < c.mult[k]; ++i)
        parts.push_back(indec_[k]);
    if (parts.empty())
      return Representation::zero(roots_.quiver_ptr(), p_);
    return direct_sum(parts);
  }

private:
  RootSystem roots_;
  Elem p_;
  std::vector<Representation> indec_;
  std::vector<std::vector<long long>> hom_;
  std::vector<std::size_t> order_;
};

/// [X, X]^1 of the class, from the Euler form.
inline long long self_ext_dim(const Classifier &cl, const IsoClass &c)
{
  const RootSystem &rs = cl.roots();
  long long hom = 0;
  for (std::size_t a = 0; a < c.mult.size(); ++a)
    for (std::size_t b = 0; b < c.mult.size(); ++b)
      hom += c.mult[a] * c.mult[b] * cl.hom_between(a, b);
  DimVector d = rs.dimension(c);
  return hom - euler_form(rs.quiver(), d, d);
}

} // namespace qflag
