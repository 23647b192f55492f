#pragma once

// Truncated power series in one formal variable.
//
// A TruncSeries of order N holds the coefficients of x^0 .. x^N. Every binary
// operation truncates to the smaller of the two operand orders. The
// coefficient type is either std::complex<double> (floating mode) or
// Rational (exact mode).

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "specrec/errors.hpp"

namespace specrec {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

template <class T>
class TruncSeries {
 public:
  /// Series whose order is coeffs.size() - 1.
  explicit TruncSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidArgument("TruncSeries needs at least one coefficient");
  }

  static TruncSeries zero(std::size_t order) { return TruncSeries(std::vector<T>(order + 1, T(0))); }

  static TruncSeries constant(const T& c, std::size_t order) {
    auto s = zero(order);
    s.coeffs_[0] = c;
    return s;
  }

  /// Polynomial p_0 + p_1 x + ... padded with zeros (or truncated) to `order`.
  static TruncSeries from_polynomial(std::span<const T> poly, std::size_t order) {
    auto s = zero(order);
    for (std::size_t k = 0; k < poly.size() && k <= order; ++k) s.coeffs_[k] = poly[k];
    return s;
  }

  /// 1 - c x
  static TruncSeries one_minus(const T& c, std::size_t order) {
    auto s = constant(T(1), order);
    if (order >= 1) s.coeffs_[1] = -c;
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<const T> coeffs() const { return coeffs_; }

  TruncSeries truncated(std::size_t order) const {
    std::vector<T> c(coeffs_.begin(), coeffs_.begin() + std::min(order, this->order()) + 1);
    return TruncSeries(std::move(c));
  }

  /// Horner evaluation of the truncated polynomial.
  T evaluate(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<T> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
    return TruncSeries(std::move(c));
  }

  friend TruncSeries operator-(const TruncSeries& a) {
    std::vector<T> c(a.coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = -a.coeffs_[k];
    return TruncSeries(std::move(c));
  }

  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<T> c(n + 1, T(0));
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coeffs_[i] == T(0)) continue;
      for (std::size_t j = 0; i + j <= n; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return TruncSeries(std::move(c));
  }

  friend TruncSeries operator*(const T& s, const TruncSeries& a) {
    std::vector<T> c(a.coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = s * a.coeffs_[k];
    return TruncSeries(std::move(c));
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<T> coeffs_;
};

template <class T>
TruncSeries<T> series_add(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  return a + b;
}

template <class T>
TruncSeries<T> series_mul(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  return a * b;
}

/// Multiplicative inverse up to the order of `a`.
template <class T>
TruncSeries<T> series_inv(const TruncSeries<T>& a) {
  if (a[0] == T(0)) throw ZeroConstantTerm("series_inv: constant term is zero");
  const std::size_t n = a.order();
  std::vector<T> b(n + 1, T(0));
  const T inv0 = T(1) / a[0];
  b[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    T acc(0);
    for (std::size_t i = 1; i <= k; ++i) acc += a[i] * b[k - i];
    b[k] = -acc * inv0;
  }
  return TruncSeries<T>(std::move(b));
}

/// Product of (1 - c x) over `roots`, as a series of the given order.
template <class T>
TruncSeries<T> product_one_minus(std::span<const T> roots, std::size_t order) {
  auto acc = TruncSeries<T>::constant(T(1), order);
  for (const auto& c : roots) acc = acc * TruncSeries<T>::one_minus(c, order);
  return acc;
}

}  // namespace specrec
