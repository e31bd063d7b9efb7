#pragma once

// Dense matrices over a prime field GF(p) with exact row reduction.
//
// Vectors are columns. A linear map k^n -> k^m is an m x n matrix and maps
// compose right-to-left, so arrow matrices of a representation have shape
// (dim target) x (dim source).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qflag/error.hpp"

namespace qflag {

using Elem = std::uint32_t;

inline bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// The first `count` primes in increasing order.
inline std::vector<std::uint32_t> first_primes(std::size_t count)
{
  std::vector<std::uint32_t> out;
  for (std::uint32_t n = 2; out.size() < count; ++n)
    if (is_prime(n))
      out.push_back(n);
  return out;
}

inline Elem mod_reduce(long long v, Elem p)
{
  long long r = v % static_cast<long long>(p);
  return static_cast<Elem>(r < 0 ? r + p : r);
}

inline Elem mod_mul(Elem a, Elem b, Elem p)
{
  return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p);
}

inline Elem mod_add(Elem a, Elem b, Elem p)
{
  Elem s = a + b;
  return s >= p ? s - p : s;
}

inline Elem mod_sub(Elem a, Elem b, Elem p) { return a >= b ? a - b : a + p - b; }

inline Elem mod_neg(Elem a, Elem p) { return a == 0 ? 0 : p - a; }

inline Elem mod_inv(Elem a, Elem p)
{
  if (a == 0)
    throw InternalError("inverse of zero in GF(" + std::to_string(p) + ")");
  long long t = 0, new_t = 1;
  long long r = p, new_r = a;
  while (new_r != 0) {
    long long quot = r / new_r;
    long long tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod_reduce(t, p);
}

class FpMatrix {
public:
  FpMatrix() = default;

  FpMatrix(Elem p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0)
  {
    // p < 2^16 keeps every product of two residues inside 32 bits
    if (p >= (1u << 16) || !is_prime(p))
      throw Error("modulus " + std::to_string(p) + " is not a supported prime");
  }

  static FpMatrix identity(Elem p, std::size_t n)
  {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  /// Builds a matrix from integer rows, reducing every entry mod p.
  static FpMatrix from_rows(Elem p, std::size_t rows, std::size_t cols,
                            const std::vector<std::vector<long long>> &entries)
  {
    if (entries.size() != rows)
      throw Error("matrix has " + std::to_string(entries.size()) + " rows, expected " +
                  std::to_string(rows));
    FpMatrix m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (entries[r].size() != cols)
        throw Error("matrix row " + std::to_string(r) + " has wrong length");
      for (std::size_t c = 0; c < cols; ++c)
        m(r, c) = mod_reduce(entries[r][c], p);
    }
    return m;
  }

  static FpMatrix from_rows(Elem p, std::initializer_list<std::initializer_list<long long>> rows)
  {
    std::vector<std::vector<long long>> entries;
    for (auto const &row : rows)
      entries.emplace_back(row);
    std::size_t cols = entries.empty() ? 0 : entries.front().size();
    return from_rows(p, entries.size(), cols, entries);
  }

  static FpMatrix column(Elem p, const std::vector<long long> &values)
  {
    FpMatrix m(p, values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i)
      m(i, 0) = mod_reduce(values[i], p);
    return m;
  }

  Elem p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const
  {
    for (Elem e : data_)
      if (e != 0)
        return false;
    return true;
  }

  FpMatrix transpose() const
  {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  FpMatrix col(std::size_t c) const
  {
    FpMatrix v(p_, rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r)
      v(r, 0) = (*this)(r, c);
    return v;
  }

  FpMatrix row(std::size_t r) const { return block(r, 0, 1, cols_); }

  FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
  {
    FpMatrix b(p_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c)
        b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  FpMatrix select_rows(const std::vector<std::size_t> &which) const
  {
    FpMatrix b(p_, which.size(), cols_);
    for (std::size_t r = 0; r < which.size(); ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        b(r, c) = (*this)(which[r], c);
    return b;
  }

  friend FpMatrix operator*(const FpMatrix &a, const FpMatrix &b)
  {
    if (a.cols_ != b.rows_ || a.p_ != b.p_)
      throw InternalError("matrix product shape mismatch");
    FpMatrix out(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Elem aik = a(i, k);
        if (aik == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          out(i, j) = mod_add(out(i, j), mod_mul(aik, b(k, j), a.p_), a.p_);
      }
    return out;
  }

  friend FpMatrix operator+(const FpMatrix &a, const FpMatrix &b)
  {
    check_same_shape(a, b);
    FpMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
      out.data_[i] = mod_add(a.data_[i], b.data_[i], a.p_);
    return out;
  }

  friend FpMatrix operator-(const FpMatrix &a, const FpMatrix &b)
  {
    check_same_shape(a, b);
    FpMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i)
      out.data_[i] = mod_sub(a.data_[i], b.data_[i], a.p_);
    return out;
  }

  FpMatrix scaled(Elem s) const
  {
    FpMatrix out = *this;
    for (Elem &e : out.data_)
      e = mod_mul(e, s, p_);
    return out;
  }

  friend bool operator==(const FpMatrix &a, const FpMatrix &b) = default;

  /// [a | b]
  static FpMatrix hstack(const FpMatrix &a, const FpMatrix &b)
  {
    if (a.rows_ != b.rows_)
      throw InternalError("hstack row mismatch");
    FpMatrix out(a.p_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c)
        out(r, c) = a(r, c);
      for (std::size_t c = 0; c < b.cols_; ++c)
        out(r, a.cols_ + c) = b(r, c);
    }
    return out;
  }

  /// [a ; b]
  static FpMatrix vstack(const FpMatrix &a, const FpMatrix &b)
  {
    if (a.cols_ != b.cols_)
      throw InternalError("vstack column mismatch");
    FpMatrix out(a.p_, a.rows_ + b.rows_, a.cols_);
    std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
    return out;
  }

  std::string to_string() const
  {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      s += r ? "; " : "";
      for (std::size_t c = 0; c < cols_; ++c)
        s += (c ? " " : "") + std::to_string((*this)(r, c));
    }
    return s + "]";
  }

private:
  static void check_same_shape(const FpMatrix &a, const FpMatrix &b)
  {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_)
      throw InternalError("matrix shape mismatch");
  }

  Elem p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct RowEchelon {
  FpMatrix rref;                   // rank x cols, reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each row
};

/// Reduced row echelon form; zero rows are dropped.
inline RowEchelon row_reduce(FpMatrix a)
{
  const Elem p = a.p();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0)
      ++sel;
    if (sel == a.rows())
      continue;
    if (sel != row)
      for (std::size_t c = col; c < a.cols(); ++c)
        std::swap(a(sel, c), a(row, c));
    Elem inv = mod_inv(a(row, col), p);
    for (std::size_t c = col; c < a.cols(); ++c)
      a(row, c) = mod_mul(a(row, c), inv, p);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0)
        continue;
      Elem f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        a(r, c) = mod_sub(a(r, c), mod_mul(f, a(row, c), p), p);
    }
    pivots.push_back(col);
    ++row;
  }
  return {a.block(0, 0, row, a.cols()), std::move(pivots)};
}

inline std::size_t rank(const FpMatrix &a) { return row_reduce(a).pivots.size(); }

struct RankKernel {
  std::size_t rank = 0;
  FpMatrix kernel; // cols x nullity; its transpose is in reduced row echelon form
};

inline RankKernel rank_kernel(const FpMatrix &a)
{
  const Elem p = a.p();
  RowEchelon ech = row_reduce(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : ech.pivots)
    is_pivot[c] = true;

  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c])
      free_cols.push_back(c);

  // one row per free column: x_free = 1, x_pivot = -rref(row, free)
  FpMatrix rows(p, free_cols.size(), n);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    rows(k, free_cols[k]) = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      rows(k, ech.pivots[r]) = mod_neg(ech.rref(r, free_cols[k]), p);
  }
  RowEchelon canon = row_reduce(rows);
  return {ech.pivots.size(), canon.rref.transpose()};
}

struct AffineSolution {
  FpMatrix particular; // n x 1
  FpMatrix kernel;     // n x nullity, as in rank_kernel
};

/// Solves A x = b. Returns nothing when b is outside the image of A.
inline std::optional<AffineSolution> solve_affine(const FpMatrix &a, const FpMatrix &b)
{
  if (b.rows() != a.rows() || b.cols() != 1 || b.p() != a.p())
    throw Error("solve_affine: right-hand side has shape " + std::to_string(b.rows()) + "x" +
                std::to_string(b.cols()) + ", expected " + std::to_string(a.rows()) + "x1");
  const std::size_t n = a.cols();
  RowEchelon ech = row_reduce(FpMatrix::hstack(a, b));
  FpMatrix x(a.p(), n, 1);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == n)
      return std::nullopt;
    // free variables are zero, so each pivot variable equals the augmented entry
    x(ech.pivots[r], 0) = ech.rref(r, n);
  }
  return AffineSolution{std::move(x), rank_kernel(a).kernel};
}

/// Inverse of a square invertible matrix.
inline FpMatrix inverse(const FpMatrix &a)
{
  if (a.rows() != a.cols())
    throw InternalError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RowEchelon ech = row_reduce(FpMatrix::hstack(a, FpMatrix::identity(a.p(), n)));
  if (ech.pivots.size() != n || (n > 0 && ech.pivots.back() != n - 1))
    throw InternalError("matrix is singular");
  return ech.rref.block(0, n, n, n);
}

} // namespace qflag
