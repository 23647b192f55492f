#pragma once

// Demonstration data over Q: Ramanujan tau, Satake parameters of Delta and
// its symmetric square, Riemann zeta / xi numerics and truncated L-values.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "specrec/degenerate.hpp"
#include "specrec/local_reps.hpp"

namespace specrec {

using Int128 = __int128;

std::string int128_to_string(Int128 v);
Int128 int128_from_string(const std::string& s);

class TauTable {
 public:
  TauTable() = default;
  explicit TauTable(std::vector<Int128> values);  // values[n-1] = tau(n)

  int size() const { return static_cast<int>(values_.size()); }
  /// tau(n) for 1 <= n <= size(); throws InsufficientCache beyond.
  Int128 tau(int n) const;
  const std::vector<Int128>& values() const { return values_; }

  /// Plain-text cache: one "n,tau(n)" line per n, no header.
  void save(const std::string& path) const;
  static TauTable load(const std::string& path);

 private:
  std::vector<Int128> values_;
};

/// Coefficients of q prod (1 - q^n)^24 up to q^N, by exact integer series
/// arithmetic (eighth power of the sparse series for prod (1 - q^n)^3).
TauTable tau_table(int N);

/// Normalized eigenvalue tau(p) / p^{11/2}.
double delta_lambda(std::int64_t p, const TauTable& t);

/// Unitary unramified parameters with alpha + 1/alpha = tau(p)/p^{11/2}.
SatakeGL2 delta_satake(std::int64_t p, const TauTable& t);

/// (alpha^2, 1, alpha^{-2}), theta = 0.
SatakeGL3 sym2_satake(std::int64_t p, const TauTable& t);

Complex complex_gamma(Complex z);
/// pi^{-s/2} Gamma(s/2)
Complex gamma_R(Complex s);

/// Riemann zeta by Euler-Maclaurin summation.
Complex zeta(Complex s);

/// pi^{-s/2} Gamma(s/2) zeta(s).
Complex xi_completed(Complex s);

/// Numerical residue of xi at s = 1 (symmetric difference quotient).
double xi_residue_at_one();

/// Gamma_R(s+1) Gamma_R(s+11) Gamma_R(s+12), the archimedean factor of sym^2 Delta.
Complex sym2_gamma_factor(Complex s);

struct TruncatedLReport {
  Complex value;                                        // prod_{p <= P} L_p(s)
  std::vector<std::pair<std::int64_t, Complex>> trace;  // running product
  double last_change = 0.0;  // |value / value at the previous prime - 1|
  bool certified = false;    // true only when Re s > 1
};

/// Euler product of L(s, sym^2 Delta) over p <= P.
TruncatedLReport truncated_L_gl3(const TauTable& t, Complex s, std::int64_t P);

struct MainTerm {
  Complex main;             // 4 Lambda(1,Pi) Lambda(0,Pi) / xi_F(2)
  double error_exponent;    // vartheta - 1/2
  double weight_prefactor;  // phi(p) / p^2
};

MainTerm corollary_main_term(const GlobalLValues& L, std::int64_t p, double vartheta = 7.0 / 64.0);

}  // namespace specrec
