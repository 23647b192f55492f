#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

#include "specrec/series.hpp"

namespace specrec {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr Complex kI{0.0, 1.0};

/// Extended precision for sums that cancel heavily; inputs stay double.
using ComplexExt = std::complex<long double>;
inline constexpr double kEpsExt = static_cast<double>(std::numeric_limits<long double>::epsilon());

inline ComplexExt to_ext(Complex z) { return {z.real(), z.imag()}; }
inline Complex to_double(ComplexExt z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// q^z on the principal branch, exp(z log q) with real log q.
inline Complex qpow(double q, Complex z) { return std::exp(z * std::log(q)); }
inline ComplexExt qpow_ext(double q, Complex z) {
  return std::exp(to_ext(z) * std::log(static_cast<long double>(q)));
}

inline double ipow(double base, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

inline std::int64_t ipow_int(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

/// phi(q^n) for a prime power q^n, n >= 0.
inline double euler_phi_prime_power(std::int64_t q, int n) {
  if (n == 0) return 1.0;
  return ipow(static_cast<double>(q), n) - ipow(static_cast<double>(q), n - 1);
}

/// Neumaier-compensated complex accumulator; its summation error is about
/// 2 eps |sum| independently of the number of terms.
template <class R>
class BasicCompensatedSum {
 public:
  void add(std::complex<R> z) {
    step(re_, cre_, z.real());
    step(im_, cim_, z.imag());
  }
  std::complex<R> value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void step(R& s, R& c, R x) {
    const R t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  R re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;
using CompensatedSumExt = BasicCompensatedSum<long double>;

/// First-order relative error, in units of eps and measured against the
/// term majorant, of a term built from `depth` recursion or power steps:
/// about three roundings per step of the h-recursion, one per power or GL(2)
/// step, and a fixed budget for the final complex products.
inline double term_rounding_weight(int depth) { return 4.0 * depth + 16.0; }

/// Upper bound for sum_{v > n} poly(v) rho^v, where poly(v+1)/poly(v) is
/// non-increasing in v (true for products of linear factors v + c, c > 0).
/// Returns +inf when the ratio test does not close.
template <class Poly>
double poly_geometric_tail(Poly poly, double rho, int n) {
  if (rho == 0.0) return 0.0;
  const double p1 = poly(n + 1), p2 = poly(n + 2);
  const double ratio = rho * p2 / p1;
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  return p1 * std::pow(rho, n + 1) / (1.0 - ratio);
}

/// Bound for the full sum_{v >= 0} poly(v) rho^v: partial sum to n plus tail.
template <class Poly>
double poly_geometric_full(Poly poly, double rho, int n) {
  double acc = 0.0, r = 1.0;
  for (int v = 0; v <= n; ++v) {
    acc += poly(v) * r;
    r *= rho;
  }
  return acc + poly_geometric_tail(poly, rho, n);
}

}  // namespace specrec
