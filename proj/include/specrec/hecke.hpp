#pragma once

// Hecke eigenvalues as Schur polynomials, modified eigenvalues and local
// L-factors.

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "specrec/local_reps.hpp"
#include "specrec/series.hpp"

namespace specrec {

// ---------------------------------------------------------------------------
// Symmetric polynomials (templated so the same code runs on Rational inputs)

/// h_0 .. h_kmax of the given variables, via h_k = sum_i (-1)^{i-1} e_i h_{k-i}.
template <class T>
std::vector<T> complete_homogeneous(std::span<const T> vars, int kmax) {
  std::vector<T> e(vars.size() + 1, T(0));
  e[0] = T(1);
  for (const auto& v : vars)
    for (std::size_t i = vars.size(); i >= 1; --i) e[i] += v * e[i - 1];
  std::vector<T> h(static_cast<std::size_t>(std::max(kmax, 0)) + 1, T(0));
  h[0] = T(1);
  for (int k = 1; k <= kmax; ++k) {
    T acc(0);
    for (int i = 1; i <= k && i <= static_cast<int>(vars.size()); ++i) {
      if (i % 2 == 1) acc += e[i] * h[k - i];
      else acc -= e[i] * h[k - i];
    }
    h[k] = acc;
  }
  return h;
}

/// Schur polynomial s_{(a+b, b, 0)} from a table of h_k (Jacobi-Trudi).
template <class T>
T schur_two_row(const std::vector<T>& h, int a, int b) {
  if (b == 0) return h[a];
  return h[a + b] * h[b] - h[a + b + 1] * h[b - 1];
}

/// GL(2) eigenvalue lambda(nu) from parameters and conductor.
template <class T>
T gl2_lambda_generic(std::span<const T> params, int conductor, int nu) {
  if (nu < 0) throw NegativeIndex("gl2_lambda: negative index");
  if (nu == 0) return T(1);
  if (conductor >= 2) return T(0);
  if (conductor == 1) {
    T r(1);
    for (int k = 0; k < nu; ++k) r *= params[0];
    return r;
  }
  return complete_homogeneous<T>(params, nu)[nu];
}

/// Product form of the modified eigenvalue at one prime power:
/// lambda(n) - lambda(n-1) x, with x = q^{-w}.
template <class T>
T lambda_hat_local_product(std::span<const T> params, int conductor, int n, const T& x) {
  if (n < 0) throw NegativeIndex("lambda_hat: negative exponent");
  if (n == 0) return T(1);
  return gl2_lambda_generic<T>(params, conductor, n) - gl2_lambda_generic<T>(params, conductor, n - 1) * x;
}

/// Divisor-sum form at one prime power: sum over a | p^n of mu(a) N(a)^{-w} lambda(p^n / a).
template <class T>
T lambda_hat_local_divisor(std::span<const T> params, int conductor, int n, const T& x) {
  if (n < 0) throw NegativeIndex("lambda_hat: negative exponent");
  T acc(0);
  for (int k = 0; k <= n; ++k) {
    // mu(p^k) vanishes for k >= 2
    if (k >= 2) continue;
    T term = gl2_lambda_generic<T>(params, conductor, n - k);
    if (k == 1) term = -(term * x);
    acc += term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Eigenvalues

Complex gl2_lambda(const SatakeGL2& rep, int nu);

/// lambda(0) .. lambda(N) in one pass.
std::vector<Complex> gl2_lambda_table(const SatakeGL2& rep, int N);
std::vector<ComplexExt> gl2_lambda_table_ext(const SatakeGL2& rep, int N);

/// Schur polynomial s_{(a+b, b, 0)}(gamma). The first index pairs with
/// q^{-nu s} in the Rankin-Selberg series and with q^{-nu(s+w)} in the
/// double Dirichlet series.
Complex gl3_lambda(const SatakeGL3& rep, int a, int b);

/// Cached h_k(gamma) for repeated gl3 eigenvalue evaluation, together with
/// the majorants h_k(|gamma|) used for rounding allowances.
class Gl3EigenvalueTable {
 public:
  Gl3EigenvalueTable(const SatakeGL3& rep, int kmax);

  Complex lambda(int a, int b) const;
  /// The same eigenvalue computed in extended precision.
  ComplexExt lambda_ext(int a, int b) const;
  /// Upper bound for the magnitude of every intermediate in lambda(a, b).
  double magnitude(int a, int b) const;
  int kmax() const { return kmax_; }

 private:
  int kmax_;
  std::vector<Complex> h_;
  std::vector<ComplexExt> h_ext_;
  std::vector<double> habs_;
};

/// Rigorous bound |lambda_Pi(a, b)| <= (a+1)(b+1)(a+b+2)/2 * M^{a+b}, M = max |gamma_i|.
double gl3_lambda_bound(int a, int b, double max_modulus);

/// Rigorous bound for |lambda_pi(nu)|.
double gl2_lambda_bound(const SatakeGL2& rep, int nu);

// ---------------------------------------------------------------------------
// Ideals

/// A prime ideal: its local field and a tag distinguishing places of equal norm.
struct Place {
  LocalField field;
  int tag = 0;

  explicit Place(std::int64_t q, int tag = 0, int d = 0) : field(q, d), tag(tag) {}
  std::int64_t q() const { return field.q; }

  friend bool operator<(const Place& a, const Place& b) {
    if (a.field.q != b.field.q) return a.field.q < b.field.q;
    if (a.tag != b.tag) return a.tag < b.tag;
    return a.field.d < b.field.d;
  }
  friend bool operator==(const Place& a, const Place& b) { return !(a < b) && !(b < a); }
};

class IdealFactorization {
 public:
  IdealFactorization() = default;
  explicit IdealFactorization(std::map<Place, int> exps);

  /// Factorization of a rational integer n >= 1 (places over Q).
  static IdealFactorization of_integer(std::int64_t n);

  const std::map<Place, int>& exponents() const { return exps_; }
  int exponent_at(const Place& p) const;
  double norm() const;
  bool is_unit() const { return exps_.empty(); }
  bool coprime_to(const IdealFactorization& other) const;
  /// phi(N) = prod (q^n - q^{n-1}).
  double euler_phi() const;

 private:
  std::map<Place, int> exps_;
};

using LocalRepsGL2 = std::map<Place, SatakeGL2>;

/// prod over p^n || l of (lambda(p^n) - lambda(p^{n-1}) q^{-w}).
Complex lambda_hat(const LocalRepsGL2& reps, const IdealFactorization& l, Complex w);

/// sum over a b = l of mu(a) N(a)^{-w} lambda(b).
Complex lambda_hat_divisor_sum(const LocalRepsGL2& reps, const IdealFactorization& l, Complex w);

// ---------------------------------------------------------------------------
// Local L-factors

Complex local_L_gl2(const SatakeGL2& rep, Complex s, const LocalField& F);
Complex local_L_gl3(const SatakeGL3& rep, Complex s, const LocalField& F);
Complex local_L_rs(const SatakeGL3& Pi, const SatakeGL2& pi, Complex s, const LocalField& F);
/// Adjoint factor of an unramified representation.
Complex local_L_adjoint(const SatakeGL2& rep, Complex s, const LocalField& F);

/// Products gamma_Pi^(i) gamma_pi^(j) over available parameters.
std::vector<Complex> rs_parameters(const SatakeGL3& Pi, const SatakeGL2& pi);

struct SeriesDeviation {
  double max_abs = 0.0;
  double max_rel = 0.0;  // |diff| / max(1, |coefficient|)
  int order = 0;
};

/// Compares sum_{nu <= N} lambda_Pi(nu, 0) lambda_pi(nu) x^nu with the power
/// series of the Rankin-Selberg factor. Requires conductor(pi) >= 1.
SeriesDeviation rs_series_check(const SatakeGL3& Pi, const SatakeGL2& pi, int order);

}  // namespace specrec
