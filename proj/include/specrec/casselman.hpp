#pragma once

// Orthonormal basis of the K[n0 + j]-fixed Whittaker vectors obtained by
// Gram-Schmidt from the translates W_k of the newvector.

#include <vector>

#include "specrec/local_reps.hpp"

namespace specrec {

/// Below this |1 - alpha^2| the coefficient table is singular.
inline constexpr double kDegenerateAlphaGuard = 1e-8;

struct GSData {
  Complex lambda;    // lambda_pi(1)
  Complex alpha_pi;  // lambda / (sqrt(q) (1 + delta/q))
  int delta_pi = 0;  // 1 iff unramified
  Complex norm_W0;   // <W_0, W_0>: 1 if unramified, zeta_v(2) otherwise
  int J = 0;
  /// xi[j][k] for 0 <= k <= j <= J
  std::vector<std::vector<Complex>> xi;

  Complex coeff(int j, int k) const { return (k < 0 || k > j) ? Complex(0.0) : xi[j][k]; }
};

/// Throws DegenerateAlpha when |1 - alpha_pi^2| < kDegenerateAlphaGuard.
GSData gs_coeffs(const SatakeGL2& rep, const LocalField& F, int J);

/// xi[j][k] recomputed in extended precision from the same closed forms.
std::vector<std::vector<ComplexExt>> gs_xi_ext(const SatakeGL2& rep, const LocalField& F, int J);

/// alpha_pi without building the table (for pole-proximity checks).
Complex gs_alpha(const SatakeGL2& rep, const LocalField& F);

struct SSequence {
  std::vector<Complex> values;  // S_0 .. S_T
  double tail_bound = 0.0;      // bound on the truncation error of S_0
  int truncation = 0;
};

/// S_0 from its defining series (summed from nu = 0, truncated at `trunc`,
/// or chosen from the tail bound when trunc <= 0), then
/// S_1 = alpha sqrt(q) S_0 and S_t = lambda S_{t-1} - delta S_{t-2}.
/// Throws TruncationInsufficient when the S_0 tail bound exceeds 1e-12.
SSequence s_sequence(const SatakeGL2& rep, const LocalField& F, int T, int trunc = 0);

/// S_t straight from its defining series sum_nu lambda(nu) lambda(nu+t) q^{-nu}.
Complex s_direct(const SatakeGL2& rep, const LocalField& F, int t, int trunc);

using Matrix = std::vector<std::vector<Complex>>;

/// Bilinear pairing <W~_i, W~_j> for 0 <= i, j <= J.
Matrix gram_matrix(const SatakeGL2& rep, const LocalField& F, int J);

/// E_{j,k2}(w) = xi(j,k2) sum_{k1 <= j} xi(j,k1) q^{k1(1-w)} on the degenerate
/// Eisenstein representation at w.
Complex e_function(const LocalField& F, Complex w, int j, int k2);

}  // namespace specrec
