#pragma once

// The degenerate term: local factors of Bump's double Dirichlet series, the
// global Euler product, and the residue term with its central-point constants.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "specrec/hecke.hpp"
#include "specrec/weights.hpp"

namespace specrec {

// ---------------------------------------------------------------------------
// Global L-values

enum class Provenance { UserSupplied, Computed };

/// Labeled global constants. Standard labels are the constants below.
class GlobalLValues {
 public:
  static constexpr const char* kLambdaOne = "Lambda(1,Pi)";
  static constexpr const char* kLambdaOneDual = "Lambda(1,Pi_dual)";
  static constexpr const char* kLambdaZero = "Lambda(0,Pi)";
  static constexpr const char* kXiTwo = "xi_F(2)";
  static constexpr const char* kXiResidue = "xi_F*(1)";
  static constexpr const char* kDiscriminant = "d_F";

  void set(const std::string& label, Complex value, Provenance prov = Provenance::UserSupplied);
  bool has(const std::string& label) const;
  /// Throws MissingLabel. Lambda(0,Pi) and Lambda(1,Pi_dual) stand in for
  /// each other once self-duality is declared.
  Complex get(const std::string& label) const;
  Provenance provenance(const std::string& label) const;

  /// Declare Lambda(0,Pi) = Lambda(1,Pi_dual) (functional equation with root number 1).
  void declare_self_dual() { self_dual_ = true; }
  bool self_dual() const { return self_dual_; }

  /// Optional evaluators for completed L-values away from the labeled points.
  std::function<Complex(Complex)> completed_L;  // s -> Lambda(s, Pi)
  std::function<Complex(Complex)> completed_xi;  // s -> xi_F(s)

  /// Lambda(s, Pi): the labels at s = 1 and s = 0, otherwise completed_L.
  Complex lambda_at(Complex s) const;
  /// xi_F(s): the label at s = 2, otherwise completed_xi.
  Complex xi_at(Complex s) const;

  const std::map<std::string, std::pair<Complex, Provenance>>& entries() const { return values_; }

 private:
  std::map<std::string, std::pair<Complex, Provenance>> values_;
  bool self_dual_ = false;
};

// ---------------------------------------------------------------------------
// Local factors

/// q^{d(3s+w-2)} L(s+w, Pi) L(2s, Pi_dual) / zeta_v(3s+w).
Complex j_unramified(const SatakeGL3& Pi, const LocalField& F, const EvalPoint& pt);

struct BumpDeviation {
  double max_abs = 0.0;
  double max_rel = 0.0;
  int order = 0;
};

/// Coefficients c(a, b), a + b <= N, of L_A(Pi) L_B(Pi_dual) (1 - AB) expanded
/// through power-series inversion.
template <class T>
std::vector<std::vector<T>> bump_closed_form_coefficients(const std::array<T, 3>& gammas, int N) {
  const auto Ns = static_cast<std::size_t>(N);
  std::array<T, 3> inv{T(1) / gammas[0], T(1) / gammas[1], T(1) / gammas[2]};
  const auto la = series_inv(product_one_minus<T>(std::span<const T>(gammas.data(), 3), Ns));
  const auto lb = series_inv(product_one_minus<T>(std::span<const T>(inv.data(), 3), Ns));
  std::vector<std::vector<T>> c(Ns + 1, std::vector<T>(Ns + 1, T(0)));
  for (int a = 0; a <= N; ++a)
    for (int b = 0; a + b <= N; ++b) {
      c[a][b] = la[a] * lb[b];
      if (a >= 1 && b >= 1) c[a][b] -= la[a - 1] * lb[b - 1];
    }
  return c;
}

/// Compares lambda_Pi(a, b) with the closed-form coefficients for a + b <= N.
BumpDeviation bump_check(const SatakeGL3& Pi, int order);

/// q^{d(3s+w-2)} sum_{nu1 >= m, nu2 >= 0} lambda_Pi(nu1, nu2) A^{nu1} B^{nu2}
/// with A = q^{-(s+w)}, B = q^{-2s}.
WeightValue j_divides_l(const SatakeGL3& Pi, const LocalField& F, int m, const EvalPoint& pt,
                        double tol = kDefaultWeightTol);

// ---------------------------------------------------------------------------
// Global product over Q

struct DegenerateProduct {
  Complex value;                  // 2 d_F^{7/2 - 3s' - w'} prod_{p <= P} J_p
  Complex prefactor;              // 2 d_F^{7/2 - 3s' - w'}
  std::vector<std::pair<std::int64_t, Complex>> trace;  // running product after each prime
  double local_tail_bound = 0.0;  // from the ramified factors
  double euler_tail_estimate = 0.0;  // estimate of |log| of the omitted primes; inf when not convergent
  bool certified = false;         // never true: the Euler tail is only estimated
};

using Gl3ByPrime = std::function<SatakeGL3(std::int64_t p)>;

/// Requires Re(3s+w) > 1, Re(s+w) > theta, Re(2s) > theta.
DegenerateProduct d_global(const Gl3ByPrime& Pi, double theta, const IdealFactorization& l, const EvalPoint& pt,
                           std::int64_t prime_cutoff, double tol = kDefaultWeightTol, double d_F = 1.0);

/// 2 d_F^{3/2} Lambda(1,Pi) Lambda(1,Pi_dual) / xi_F(2).
Complex central_degenerate(const GlobalLValues& L);

/// Residue term: 2 Lambda(1+s-w, Pi) Lambda(s+w-1, Pi) / xi_F(3-2w) times the
/// weight H on the degenerate Eisenstein representation. Both residues at
/// t = +-(1-w)/i contribute this same value.
WeightValue residue_term(const GlobalLValues& L, const Gl3Provider& Pi, const IdealFactorization& q,
                         const IdealFactorization& l, const EvalPoint& pt, double tol = kDefaultWeightTol);

/// The weight H(pi(1, (1-w)/i)) = prod_v D_v used by residue_term.
WeightValue degenerate_weight(const Gl3Provider& Pi, const IdealFactorization& q, const IdealFactorization& l,
                              const EvalPoint& pt, double tol = kDefaultWeightTol);

}  // namespace specrec
