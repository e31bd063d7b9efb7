#pragma once

// Integer polynomials in q: Gaussian binomials, evaluation, exact
// interpolation through rational Newton differences.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qflag/error.hpp"

namespace qflag {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class QPolynomial {
public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  static QPolynomial constant(BigInt v) { return QPolynomial(std::vector<BigInt>{std::move(v)}); }
  /// q^k
  static QPolynomial monomial(std::size_t k)
  {
    std::vector<BigInt> c(k + 1, 0);
    c[k] = 1;
    return QPolynomial(std::move(c));
  }

  /// Coefficients from degree 0 upward; empty for the zero polynomial.
  const std::vector<BigInt> &coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long long degree() const { return static_cast<long long>(c_.size()) - 1; }
  BigInt coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  BigInt constant_term() const { return coefficient(0); }

  BigInt eval(const BigInt &q) const
  {
    BigInt v = 0;
    for (std::size_t k = c_.size(); k-- > 0;)
      v = v * q + c_[k];
    return v;
  }

  bool nonnegative_coefficients() const
  {
    for (auto const &x : c_)
      if (x < 0)
        return false;
    return true;
  }

  QPolynomial &operator+=(const QPolynomial &o)
  {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size(), 0);
    for (std::size_t k = 0; k < o.c_.size(); ++k)
      c_[k] += o.c_[k];
    trim();
    return *this;
  }
  friend QPolynomial operator+(QPolynomial a, const QPolynomial &b) { return a += b; }

  friend QPolynomial operator*(const QPolynomial &a, const QPolynomial &b)
  {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] += a.c_[i] * b.c_[j];
    return QPolynomial(std::move(c));
  }

  friend bool operator==(const QPolynomial &, const QPolynomial &) = default;

  /// Descending powers: "q^4 + q^3 + 2q^2 + q + 1", "2q + 1", "0".
  std::string to_string() const
  {
    if (c_.empty())
      return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const BigInt &x = c_[k];
      if (x == 0)
        continue;
      BigInt mag = x < 0 ? BigInt(-x) : x;
      if (s.empty())
        s += x < 0 ? "-" : "";
      else
        s += x < 0 ? " - " : " + ";
      if (k == 0 || mag != 1)
        s += mag.str();
      if (k >= 1)
        s += "q";
      if (k >= 2)
        s += "^" + std::to_string(k);
    }
    return s;
  }

private:
  void trim()
  {
    while (!c_.empty() && c_.back() == 0)
      c_.pop_back();
  }

  std::vector<BigInt> c_;
};

/// The Gaussian binomial [n choose r]_q.
inline QPolynomial qbinom(long long n, long long r)
{
  if (r < 0 || r > n)
    throw Error("qbinom(" + std::to_string(n) + ", " + std::to_string(r) + ") needs 0 <= r <= n");
  // Pascal rule [m, j] = [m-1, j-1] + q^j [m-1, j]
  std::vector<QPolynomial> row{QPolynomial::constant(1)};
  for (long long m = 1; m <= n; ++m) {
    std::vector<QPolynomial> next(static_cast<std::size_t>(m + 1));
    next[0] = QPolynomial::constant(1);
    next[static_cast<std::size_t>(m)] = QPolynomial::constant(1);
    for (long long j = 1; j < m; ++j)
      next[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j - 1)] +
          QPolynomial::monomial(static_cast<std::size_t>(j)) * row[static_cast<std::size_t>(j)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(r)];
}

/// The unique polynomial of degree < points.size() through the points, if
/// its coefficients are integers.
inline std::optional<QPolynomial> interpolate(const std::vector<std::pair<BigInt, BigInt>> &points)
{
  const std::size_t n = points.size();
  // Newton divided differences
  std::vector<BigRational> dd;
  for (auto const &pt : points)
    dd.emplace_back(pt.second);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      BigRational denom(points[i].first - points[i - j].first);
      if (denom == 0)
        throw Error("interpolation nodes are not distinct");
      dd[i] = (dd[i] - dd[i - 1]) / denom;
    }
  // expand sum dd[j] prod_{i<j} (q - x_i) by Horner
  std::vector<BigRational> poly;
  for (std::size_t j = n; j-- > 0;) {
    // poly = poly * (q - x_j) + dd[j]
    std::vector<BigRational> next(poly.size() + 1, BigRational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * BigRational(points[j].first);
    }
    next[0] += dd[j];
    poly = std::move(next);
  }
  std::vector<BigInt> coeffs;
  for (auto const &x : poly) {
    if (boost::multiprecision::denominator(x) != 1)
      return std::nullopt;
    coeffs.push_back(boost::multiprecision::numerator(x));
  }
  return QPolynomial(std::move(coeffs));
}

} // namespace qflag
