#pragma once

// Quivers, dimension vectors, Euler forms, reflections, words and filtrations.
//
// Vertices carry integer labels but every algorithm addresses them by their
// position in the quiver's vertex list; per-vertex data is stored in that
// fixed order.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qflag/error.hpp"

namespace qflag {

using VertexLabel = int;

/// Integer vector indexed by the vertices of a quiver. Entries may be
/// negative while used as an element of the root lattice.
class DimVector {
public:
  DimVector() = default;
  explicit DimVector(std::size_t n) : v_(n, 0) {}
  DimVector(std::initializer_list<long long> values) : v_(values) {}
  explicit DimVector(std::vector<long long> values) : v_(std::move(values)) {}

  static DimVector unit(std::size_t n, std::size_t i)
  {
    DimVector d(n);
    d[i] = 1;
    return d;
  }

  std::size_t size() const { return v_.size(); }
  long long &operator[](std::size_t i) { return v_[i]; }
  long long operator[](std::size_t i) const { return v_[i]; }
  const std::vector<long long> &values() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  long long total() const { return std::accumulate(v_.begin(), v_.end(), 0LL); }
  bool is_zero() const
  {
    return std::all_of(v_.begin(), v_.end(), [](long long x) { return x == 0; });
  }
  bool is_nonnegative() const
  {
    return std::all_of(v_.begin(), v_.end(), [](long long x) { return x >= 0; });
  }
  /// Nonnegative and nonzero.
  bool is_positive() const { return is_nonnegative() && !is_zero(); }

  /// Componentwise order.
  bool leq(const DimVector &o) const
  {
    check_size(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i] > o.v_[i])
        return false;
    return true;
  }

  DimVector &operator+=(const DimVector &o)
  {
    check_size(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
      v_[i] += o.v_[i];
    return *this;
  }
  DimVector &operator-=(const DimVector &o)
  {
    check_size(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
      v_[i] -= o.v_[i];
    return *this;
  }
  friend DimVector operator+(DimVector a, const DimVector &b) { return a += b; }
  friend DimVector operator-(DimVector a, const DimVector &b) { return a -= b; }
  friend DimVector operator*(long long s, DimVector a)
  {
    for (auto &x : a.v_)
      x *= s;
    return a;
  }

  friend bool operator==(const DimVector &, const DimVector &) = default;
  friend auto operator<=>(const DimVector &, const DimVector &) = default;

  std::string to_string() const
  {
    std::string s = "(";
    for (std::size_t i = 0; i < v_.size(); ++i)
      s += (i ? "," : "") + std::to_string(v_[i]);
    return s + ")";
  }

private:
  void check_size(const DimVector &o) const
  {
    if (o.v_.size() != v_.size())
      throw Error("dimension vectors of different lengths: " + to_string() + " vs " +
                  o.to_string());
  }

  std::vector<long long> v_;
};

struct Arrow {
  std::string id;
  std::size_t source;
  std::size_t target;

  friend bool operator==(const Arrow &, const Arrow &) = default;
};

/// Arrow id of the reversed arrow; applying it twice gives the original id.
inline std::string starred(const std::string &id)
{
  if (!id.empty() && id.back() == '*')
    return id.substr(0, id.size() - 1);
  return id + "*";
}

class Quiver {
public:
  struct ArrowSpec {
    std::string id;
    VertexLabel source;
    VertexLabel target;
  };

  Quiver() = default;

  Quiver(std::vector<VertexLabel> vertices, const std::vector<ArrowSpec> &arrows)
      : labels_(std::move(vertices))
  {
    std::set<VertexLabel> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size())
      throw Error("duplicate vertex label");
    std::set<std::string> ids;
    for (auto const &a : arrows) {
      if (!ids.insert(a.id).second)
        throw Error("duplicate arrow id '" + a.id + "'");
      arrows_.push_back({a.id, index_of(a.source), index_of(a.target)});
    }
  }

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<VertexLabel> &labels() const { return labels_; }
  VertexLabel label(std::size_t i) const { return labels_.at(i); }
  const std::vector<Arrow> &arrows() const { return arrows_; }
  const Arrow &arrow(std::size_t k) const { return arrows_.at(k); }

  std::size_t index_of(VertexLabel label) const
  {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
      throw Error("unknown vertex " + std::to_string(label));
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t arrow_index(const std::string &id) const
  {
    for (std::size_t k = 0; k < arrows_.size(); ++k)
      if (arrows_[k].id == id)
        return k;
    throw Error("unknown arrow '" + id + "'");
  }

  void check_vertex(std::size_t i) const
  {
    if (i >= labels_.size())
      throw Error("vertex index " + std::to_string(i) + " out of range");
  }

  bool is_sink(std::size_t i) const
  {
    check_vertex(i);
    return std::none_of(arrows_.begin(), arrows_.end(),
                        [i](const Arrow &a) { return a.source == i; });
  }

  bool is_source(std::size_t i) const
  {
    check_vertex(i);
    return std::none_of(arrows_.begin(), arrows_.end(),
                        [i](const Arrow &a) { return a.target == i; });
  }

  bool has_loop(std::size_t i) const
  {
    return std::any_of(arrows_.begin(), arrows_.end(),
                       [i](const Arrow &a) { return a.source == i && a.target == i; });
  }

  /// Arrow indices ending at vertex i, in arrow order.
  std::vector<std::size_t> incoming(std::size_t i) const
  {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < arrows_.size(); ++k)
      if (arrows_[k].target == i)
        out.push_back(k);
    return out;
  }

  std::vector<std::size_t> outgoing(std::size_t i) const
  {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < arrows_.size(); ++k)
      if (arrows_[k].source == i)
        out.push_back(k);
    return out;
  }

  bool is_acyclic() const { return topological_order().size() == labels_.size(); }

  /// Vertices ordered so that every arrow goes from an earlier to a later
  /// vertex. Shorter than vertex_count() iff the quiver has an oriented cycle.
  std::vector<std::size_t> topological_order() const
  {
    std::vector<std::size_t> indeg(labels_.size(), 0);
    for (auto const &a : arrows_)
      ++indeg[a.target];
    std::vector<std::size_t> order;
    std::vector<bool> done(labels_.size(), false);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (done[i] || indeg[i] != 0)
          continue;
        done[i] = true;
        order.push_back(i);
        for (auto const &a : arrows_)
          if (a.source == i)
            --indeg[a.target];
        progress = true;
        break;
      }
    }
    return order;
  }

  DimVector zero() const { return DimVector(labels_.size()); }
  DimVector simple_root(std::size_t i) const
  {
    check_vertex(i);
    return DimVector::unit(labels_.size(), i);
  }

  /// All arrows reversed; ids are starred.
  Quiver opposite() const
  {
    Quiver q;
    q.labels_ = labels_;
    for (auto const &a : arrows_)
      q.arrows_.push_back({starred(a.id), a.target, a.source});
    return q;
  }

  /// Arrows starting or ending at a reversed; their ids are starred.
  Quiver reflected(std::size_t a) const
  {
    check_vertex(a);
    Quiver q;
    q.labels_ = labels_;
    for (auto const &arr : arrows_) {
      if (arr.source == a || arr.target == a)
        q.arrows_.push_back({starred(arr.id), arr.target, arr.source});
      else
        q.arrows_.push_back(arr);
    }
    return q;
  }

  void check_dim(const DimVector &d) const
  {
    if (d.size() != labels_.size())
      throw Error("dimension vector " + d.to_string() + " does not match a quiver with " +
                  std::to_string(labels_.size()) + " vertices");
  }

  friend bool operator==(const Quiver &, const Quiver &) = default;

private:
  std::vector<VertexLabel> labels_;
  std::vector<Arrow> arrows_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

inline QuiverPtr make_quiver(Quiver q) { return std::make_shared<const Quiver>(std::move(q)); }

/// <d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j
inline long long euler_form(const Quiver &q, const DimVector &d, const DimVector &e)
{
  q.check_dim(d);
  q.check_dim(e);
  long long s = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    s += d[i] * e[i];
  for (auto const &a : q.arrows())
    s -= d[a.source] * e[a.target];
  return s;
}

inline long long symmetric_form(const Quiver &q, const DimVector &d, const DimVector &e)
{
  return euler_form(q, d, e) + euler_form(q, e, d);
}

/// sigma_a d = d - (d, e_a) e_a
inline DimVector reflect_dimvec(const Quiver &q, std::size_t a, const DimVector &d)
{
  q.check_vertex(a);
  if (q.has_loop(a))
    throw Error("cannot reflect at vertex " + std::to_string(q.label(a)) + ": it carries a loop");
  DimVector out = d;
  out[a] -= symmetric_form(q, d, q.simple_root(a));
  return out;
}

/// Every vertex ordering (a_1, ..., a_n) in which a_k is a sink of
/// sigma_{a_{k-1}} ... sigma_{a_1} Q.
inline std::vector<std::vector<std::size_t>> admissible_orderings(const Quiver &q)
{
  if (!q.is_acyclic())
    throw Error("quiver has an oriented cycle; no admissible ordering exists");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::vector<bool> used(q.vertex_count(), false);

  // a_k is a sink after reflecting a_1..a_{k-1} iff every arrow leaving a_k
  // ends at an already reflected vertex
  auto recurse = [&](auto &self) -> void {
    if (current.size() == q.vertex_count()) {
      out.push_back(current);
      return;
    }
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      if (used[v])
        continue;
      bool ok = true;
      for (auto const &a : q.arrows())
        if (a.source == v && !used[a.target])
          ok = false;
      if (!ok)
        continue;
      used[v] = true;
      current.push_back(v);
      self(self);
      current.pop_back();
      used[v] = false;
    }
  };
  recurse(recurse);
  return out;
}

/// The lexicographically first admissible ordering.
inline std::vector<std::size_t> admissible_ordering(const Quiver &q)
{
  if (!q.is_acyclic())
    throw Error("quiver has an oriented cycle; no admissible ordering exists");
  std::vector<std::size_t> order;
  std::vector<bool> used(q.vertex_count(), false);
  while (order.size() < q.vertex_count()) {
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      if (used[v])
        continue;
      bool ok = true;
      for (auto const &a : q.arrows())
        if (a.source == v && !used[a.target])
          ok = false;
      if (ok) {
        used[v] = true;
        order.push_back(v);
        break;
      }
    }
  }
  return order;
}

/// Whether `order` is an admissible sequence of sink reflections for q.
inline bool is_admissible_ordering(const Quiver &q, const std::vector<std::size_t> &order)
{
  if (order.size() != q.vertex_count())
    return false;
  Quiver cur = q;
  std::vector<bool> seen(q.vertex_count(), false);
  for (std::size_t v : order) {
    if (v >= q.vertex_count() || seen[v] || !cur.is_sink(v))
      return false;
    seen[v] = true;
    cur = cur.reflected(v);
  }
  return true;
}

/// Weakly increasing sequence 0 = d^0 <= d^1 <= ... <= d^nu of dimension vectors.
class Filtration {
public:
  explicit Filtration(std::vector<DimVector> levels) : levels_(std::move(levels))
  {
    if (auto why = defect(levels_); !why.empty())
      throw Error("not a filtration: " + why);
  }

  /// Empty string when `levels` forms a filtration, otherwise the reason it does not.
  static std::string defect(const std::vector<DimVector> &levels)
  {
    if (levels.size() < 2)
      return "needs at least two terms";
    if (!levels.front().is_zero())
      return "first term must be zero";
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (levels[i].size() != levels.front().size())
        return "terms have different lengths";
      if (!levels[i].is_nonnegative())
        return "term " + std::to_string(i) + " has a negative entry";
      if (i > 0 && !levels[i - 1].leq(levels[i]))
        return "term " + std::to_string(i) + " does not contain term " + std::to_string(i - 1);
    }
    return {};
  }

  static bool is_valid(const std::vector<DimVector> &levels) { return defect(levels).empty(); }

  /// nu, the index of the last term.
  std::size_t length() const { return levels_.size() - 1; }
  const DimVector &operator[](std::size_t i) const { return levels_[i]; }
  const DimVector &top() const { return levels_.back(); }
  const std::vector<DimVector> &levels() const { return levels_; }
  std::size_t vertex_count() const { return levels_.front().size(); }

  /// The filtration of the dual: e^i = d^nu - d^{nu-i}.
  Filtration complement_reversed() const
  {
    std::vector<DimVector> out;
    const std::size_t nu = length();
    for (std::size_t i = 0; i <= nu; ++i)
      out.push_back(top() - levels_[nu - i]);
    return Filtration(std::move(out));
  }

  friend bool operator==(const Filtration &, const Filtration &) = default;
  friend auto operator<=>(const Filtration &, const Filtration &) = default;

  std::string to_string() const
  {
    std::string s = "(";
    for (std::size_t i = 0; i < levels_.size(); ++i)
      s += (i ? "," : "") + levels_[i].to_string();
    return s + ")";
  }

private:
  std::vector<DimVector> levels_;
};

/// Sequence of vertex indices.
using Word = std::vector<std::size_t>;

/// Flag type whose flag count is the coefficient of u_X in u_{w_1} * ... * u_{w_nu}:
/// d^k - d^{k-1} is the simple root of letter w_{nu-k+1}, so the innermost
/// subrepresentation corresponds to the last letter.
inline Filtration word_to_filtration(const Quiver &q, const Word &w)
{
  if (w.empty())
    throw Error("empty word");
  std::vector<DimVector> levels{q.zero()};
  for (std::size_t k = w.size(); k-- > 0;) {
    q.check_vertex(w[k]);
    levels.push_back(levels.back() + q.simple_root(w[k]));
  }
  return Filtration(std::move(levels));
}

inline DimVector word_dimension(const Quiver &q, const Word &w)
{
  DimVector d = q.zero();
  for (std::size_t v : w) {
    q.check_vertex(v);
    d[v] += 1;
  }
  return d;
}

/// All words of the given length over the vertices of q, in lexicographic order.
inline std::vector<Word> all_words(const Quiver &q, std::size_t length)
{
  std::vector<Word> out;
  Word w(length, 0);
  const std::size_t n = q.vertex_count();
  if (n == 0)
    return out;
  while (true) {
    out.push_back(w);
    std::size_t k = length;
    while (k > 0 && w[k - 1] + 1 == n) {
      w[k - 1] = 0;
      --k;
    }
    if (k == 0)
      break;
    ++w[k - 1];
  }
  return out;
}

/// Strictly increasing filtrations 0 < d^1 < ... < d^nu = top.
inline std::vector<Filtration> strict_filtrations(const DimVector &top)
{
  std::vector<Filtration> out;
  if (top.is_zero())
    return out;
  std::vector<DimVector> chain{DimVector(top.size())};
  auto recurse = [&](auto &self) -> void {
    const DimVector last = chain.back();
    if (last == top) {
      out.emplace_back(chain);
      return;
    }
    // enumerate every d with last < d <= top
    DimVector d = last;
    while (true) {
      std::size_t i = 0;
      while (i < d.size() && d[i] == top[i]) {
        d[i] = last[i];
        ++i;
      }
      if (i == d.size())
        break;
      ++d[i];
      chain.push_back(d);
      self(self);
      chain.pop_back();
    }
  };
  recurse(recurse);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace qflag
