#pragma once

// Local weight functions H_v at unramified places, places dividing the level
// l, places dividing the level q, and their degenerate specialization.

#include <functional>
#include <map>
#include <string>

#include "specrec/hecke.hpp"
#include "specrec/local_reps.hpp"

namespace specrec {

struct WeightValue {
  Complex value;
  double tail_bound = 0.0;  // bound on |value - exact|
  int truncation = 0;       // nu cutoff used (0 when not applicable)
};

/// How the GL(2) eigenvalue enters the nu_2 sum.
enum class Conjugation {
  Conjugate,  // complex conjugate of lambda_pi(nu_2), as in the collapsed sum
  Plain,      // lambda_pi(nu_2) itself, as in the Rankin-Selberg factor
};

/// How the Dirichlet series in x = q^{-s} is summed.
enum class SumMethod {
  Truncated,  // direct truncation with a rigorous geometric tail bound
  Continued,  // exact rational continuation: (series) / L(s, Pi x pi) is a
              // polynomial in x divided by prod (1 - gamma_i^{-1} x^2)
};

inline constexpr double kDefaultWeightTol = 1e-10;

/// vol(K[f]) = 1 for f = 0 and 1 / (q^{f-1} (q + 1)) otherwise.
double congruence_volume(const LocalField& F, int f);

/// The weight at places where nothing is ramified.
Complex h_unramified();

/// Archimedean weight: 1 for spherical representations, 0 otherwise.
Complex h_archimedean(bool spherical);

/// q^{-mw} (lambda(m) - lambda(m-1) q^{-w}) for unramified pi, 0 otherwise.
Complex h_divides_l(const SatakeGL2& pi, const LocalField& F, int m, Complex w);

/// Collapsed-sum evaluation of H_v at a place with v(q) = n >= 1.
WeightValue h_divides_q(const SatakeGL3& Pi, const SatakeGL2& pi, const LocalField& F, int n,
                        const EvalPoint& pt, double tol = kDefaultWeightTol,
                        Conjugation conj = Conjugation::Conjugate, SumMethod method = SumMethod::Truncated);

/// Independent evaluation through the un-collapsed triple sum with the
/// eigenvalues lambda_{pi,j} of the orthonormal basis and the mu-sum kept.
WeightValue h_divides_q_oracle(const SatakeGL3& Pi, const SatakeGL2& pi, const LocalField& F, int n,
                               const EvalPoint& pt, double tol = kDefaultWeightTol,
                               Conjugation conj = Conjugation::Conjugate);

enum class DegenerateRole { DividesQ, DividesL };

/// Radius and node count of the circle mean used near alpha_pi^2 = 1.
struct CircleGuard {
  double trigger = 1e-4;  // |1 - alpha_pi^2| below this at the center
  double radius = 0.1;
  int nodes = 16;
};

/// H_v on the degenerate Eisenstein representation with parameters
/// (q^{1-w}, q^{w-1}). exponent = 0 means v does not divide q l.
/// Requires 1/2 <= Re s, Re w < 1. Near the removable singularity at
/// alpha_pi^2 = 1 the value is the mean over a circle in w around pt.w.
WeightValue d_weight(const SatakeGL3& Pi, const LocalField& F, DegenerateRole role, int exponent,
                     const EvalPoint& pt, double tol = kDefaultWeightTol, CircleGuard guard = {});

// ---------------------------------------------------------------------------
// Global product

struct PiData {
  LocalRepsGL2 local;
  bool archimedean_spherical = true;
};

using Gl3Provider = std::function<SatakeGL3(const Place&)>;

struct GlobalWeight {
  WeightValue total;
  double phi_factor = 1.0;         // phi(Nq) / Nq^2
  Complex l_factor = 1.0;          // prod over v | l of H_v (= lambda_hat / Nl^w if unramified there)
  Complex h_q = 1.0;               // prod over v | q of H_v, divided by phi_factor
  Complex archimedean = 1.0;       // delta_infinity
  std::map<std::int64_t, Complex> local_values;  // keyed by residue cardinality
};

/// prod_v H_v: h_divides_l at primes of l, h_divides_q at primes of q, 1 elsewhere.
GlobalWeight h_global(const Gl3Provider& Pi, const PiData& pi, const IdealFactorization& q,
                      const IdealFactorization& l, const EvalPoint& pt, double tol = kDefaultWeightTol,
                      Conjugation conj = Conjugation::Conjugate);

/// The transformed weight: h_global with q and l swapped, at the dual point.
GlobalWeight h_global_transformed(const Gl3Provider& Pi, const PiData& pi, const IdealFactorization& q,
                                  const IdealFactorization& l, const EvalPoint& pt,
                                  double tol = kDefaultWeightTol, Conjugation conj = Conjugation::Conjugate);

}  // namespace specrec
