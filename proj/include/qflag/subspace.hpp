#pragma once

// Subspaces of GF(p)^n in canonical form and their enumeration.
//
// A subspace is stored as the reduced row echelon form of a basis, which is
// unique; two subspaces are equal iff their stored bases are equal.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qflag/fp_matrix.hpp"

namespace qflag {

using BigInt = boost::multiprecision::cpp_int;

class Subspace {
public:
  Subspace() = default;

  static Subspace zero(Elem p, std::size_t n) { return Subspace(FpMatrix(p, 0, n), {}); }
  static Subspace full(Elem p, std::size_t n)
  {
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i)
      piv[i] = i;
    return Subspace(FpMatrix::identity(p, n), std::move(piv));
  }

  /// Span of the rows of `rows`.
  static Subspace row_span(const FpMatrix &rows)
  {
    RowEchelon e = row_reduce(rows);
    return Subspace(std::move(e.rref), std::move(e.pivots));
  }

  /// Span of the columns of `cols`.
  static Subspace column_span(const FpMatrix &cols) { return row_span(cols.transpose()); }

  /// Wraps a matrix already known to be in reduced row echelon form.
  static Subspace from_rref(FpMatrix rref, std::vector<std::size_t> pivots)
  {
    return Subspace(std::move(rref), std::move(pivots));
  }

  Elem p() const { return basis_.p(); }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  /// dim() x ambient(), reduced row echelon.
  const FpMatrix &basis() const { return basis_; }
  const std::vector<std::size_t> &pivots() const { return pivots_; }

  /// Standard basis indices spanning a complement: the non-pivot columns.
  std::vector<std::size_t> complement_indices() const
  {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient(); ++c) {
      if (k < pivots_.size() && pivots_[k] == c)
        ++k;
      else
        out.push_back(c);
    }
    return out;
  }

  /// Columns of `vecs` reduced modulo this subspace; the result vanishes on pivot rows.
  FpMatrix reduce(FpMatrix vecs) const
  {
    const Elem p = this->p();
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      std::size_t pc = pivots_[r];
      for (std::size_t c = 0; c < vecs.cols(); ++c) {
        Elem f = vecs(pc, c);
        if (f == 0)
          continue;
        for (std::size_t j = 0; j < ambient(); ++j)
          vecs(j, c) = mod_sub(vecs(j, c), mod_mul(f, basis_(r, j), p), p);
      }
    }
    return vecs;
  }

  /// Coordinates of the columns of `vecs` in the quotient k^n / U with respect
  /// to the complement basis; (ambient - dim) x vecs.cols().
  FpMatrix quotient_coordinates(const FpMatrix &vecs) const
  {
    return reduce(vecs).select_rows(complement_indices());
  }

  /// Coordinates of columns of `vecs` (which must lie in U) in the stored basis.
  FpMatrix coordinates(const FpMatrix &vecs) const { return vecs.select_rows(pivots_); }

  bool contains(const FpMatrix &vecs) const { return reduce(vecs).is_zero(); }
  bool contains(const Subspace &other) const
  {
    return other.dim() == 0 || contains(other.basis_.transpose());
  }

  friend bool operator==(const Subspace &a, const Subspace &b) { return a.basis_ == b.basis_; }

private:
  Subspace(FpMatrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots))
  {
  }

  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace subspace_sum(const Subspace &a, const Subspace &b)
{
  return Subspace::row_span(FpMatrix::vstack(a.basis(), b.basis()));
}

/// Image of U under the linear map `map` (m x n, U inside k^n).
inline Subspace image(const FpMatrix &map, const Subspace &u)
{
  if (u.dim() == 0)
    return Subspace::zero(map.p(), map.rows());
  return Subspace::column_span(map * u.basis().transpose());
}

/// { x in k^n : map x in U }, for map m x n and U inside k^m.
inline Subspace preimage(const FpMatrix &map, const Subspace &u)
{
  FpMatrix cond = u.quotient_coordinates(map);
  return Subspace::column_span(rank_kernel(cond).kernel);
}

inline Subspace intersect(const Subspace &a, const Subspace &b)
{
  if (a.dim() == 0 || b.dim() == 0)
    return Subspace::zero(a.p(), a.ambient());
  FpMatrix ba = a.basis().transpose(); // n x dim a
  FpMatrix ker = rank_kernel(b.quotient_coordinates(ba)).kernel;
  if (ker.cols() == 0)
    return Subspace::zero(a.p(), a.ambient());
  return Subspace::column_span(ba * ker);
}

/// Gaussian binomial coefficient [n choose r]_q evaluated at an integer q.
inline BigInt gaussian_binomial_value(long long n, long long r, const BigInt &q)
{
  if (r < 0 || r > n)
    return 0;
  BigInt num = 1, den = 1;
  BigInt qn = 1;
  for (long long i = 0; i < n - r; ++i)
    qn *= q;
  // prod_{i=1}^{r} (q^{n-r+i} - 1) / (q^i - 1)
  BigInt qi = 1;
  for (long long i = 1; i <= r; ++i) {
    qn *= q;
    qi *= q;
    num *= qn - 1;
    den *= qi - 1;
  }
  return num / den;
}

/// Calls fn(rref) once for every r-dimensional subspace of GF(p)^n; rref is the
/// r x n reduced row echelon basis. Enumeration order: pivot sets in
/// lexicographic order, then free entries as a little-endian base-p counter.
template <typename Fn>
void for_each_subspace(Elem p, std::size_t n, std::size_t r, Fn &&fn)
{
  if (r > n)
    throw Error("subspace dimension " + std::to_string(r) + " exceeds ambient dimension " +
                std::to_string(n));
  std::vector<std::size_t> piv(r);
  for (std::size_t i = 0; i < r; ++i)
    piv[i] = i;

  while (true) {
    FpMatrix m(p, r, n);
    // free slots: (row, col) with col > piv[row] and col not a pivot
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    {
      std::vector<bool> is_piv(n, false);
      for (std::size_t t = 0; t < r; ++t) {
        is_piv[piv[t]] = true;
        m(t, piv[t]) = 1;
      }
      for (std::size_t t = 0; t < r; ++t)
        for (std::size_t c = piv[t] + 1; c < n; ++c)
          if (!is_piv[c])
            slots.emplace_back(t, c);
    }
    while (true) {
      fn(std::as_const(m));
      std::size_t k = 0;
      while (k < slots.size()) {
        Elem &e = m(slots[k].first, slots[k].second);
        if (++e < p)
          break;
        e = 0;
        ++k;
      }
      if (k == slots.size())
        break;
    }
    // next pivot combination
    std::size_t i = r;
    while (i > 0 && piv[i - 1] == n - r + i - 1)
      --i;
    if (i == 0)
      break;
    ++piv[i - 1];
    for (std::size_t j = i; j < r; ++j)
      piv[j] = piv[j - 1] + 1;
  }
}

/// All r-dimensional subspaces of GF(p)^n in enumeration order.
inline std::vector<Subspace> enumerate_subspaces(Elem p, std::size_t n, std::size_t r)
{
  std::vector<Subspace> out;
  for_each_subspace(p, n, r, [&](const FpMatrix &m) { out.push_back(Subspace::row_span(m)); });
  return out;
}

/// Calls fn(U) for every subspace U with lower <= U <= upper and dim U = e.
template <typename Fn>
void for_each_subspace_between(const Subspace &lower, const Subspace &upper, std::size_t e,
                               Fn &&fn)
{
  const std::size_t l = lower.dim(), w = upper.dim();
  if (e < l || e > w || !upper.contains(lower))
    return;
  const Elem p = upper.p();
  // lower in coordinates of upper's basis; its complement indexes the quotient
  Subspace low_coords = Subspace::column_span(upper.coordinates(lower.basis().transpose()));
  if (lower.dim() == 0)
    low_coords = Subspace::zero(p, w);
  std::vector<std::size_t> comp = low_coords.complement_indices();
  for_each_subspace(p, w - l, e - l, [&](const FpMatrix &s) {
    FpMatrix coords(p, e, w);
    for (std::size_t r = 0; r < l; ++r)
      for (std::size_t c = 0; c < w; ++c)
        coords(r, c) = low_coords.basis()(r, c);
    for (std::size_t r = 0; r < s.rows(); ++r)
      for (std::size_t c = 0; c < s.cols(); ++c)
        coords(l + r, comp[c]) = s(r, c);
    fn(Subspace::row_span(coords * upper.basis()));
  });
}

} // namespace qflag
