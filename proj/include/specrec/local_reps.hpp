#pragma once

// Local fields, Satake parameter records and evaluation points.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "specrec/numeric.hpp"

namespace specrec {

bool is_prime(std::int64_t n);

/// Returns the prime p with n = p^k (k >= 1), or nullopt.
std::optional<std::int64_t> prime_base(std::int64_t n);

/// Non-archimedean local field data: residue cardinality q and the
/// conductor exponent d of the additive character.
struct LocalField {
  std::int64_t q;
  int d = 0;

  explicit LocalField(std::int64_t q, int d = 0);

  double qd() const { return static_cast<double>(q); }
  double log_q() const { return std::log(qd()); }
  /// Local zeta factor (1 - q^{-s})^{-1}.
  Complex zeta(Complex s) const;

  friend bool operator==(const LocalField&, const LocalField&) = default;
};

/// Satake / Langlands parameters of a generic local representation of PGL(2).
///
/// conductor 0: two parameters with product 1; conductor 1: one parameter;
/// conductor >= 2: none.
class SatakeGL2 {
 public:
  SatakeGL2(std::vector<Complex> params, int conductor);

  static SatakeGL2 unramified(Complex alpha);
  /// Unramified representation with Hecke eigenvalue lambda = alpha + 1/alpha.
  static SatakeGL2 from_eigenvalue(Complex lambda);
  static SatakeGL2 conductor_one(Complex alpha);
  static SatakeGL2 parameterless(int conductor);

  const std::vector<Complex>& params() const { return params_; }
  int conductor() const { return conductor_; }

  /// Largest |log|param|| / log q, the smallest exponent it is tempered for.
  double effective_theta(std::int64_t q) const;
  bool is_tempered(std::int64_t q, double vartheta) const;
  /// Returns is_tempered; throws TemperednessViolation instead when strict.
  bool check_tempered(std::int64_t q, double vartheta, bool strict) const;
  /// Max |param|, or 0 without parameters.
  double max_modulus() const;

 private:
  std::vector<Complex> params_;
  int conductor_;
};

/// Satake parameters of an unramified representation of PGL(3).
class SatakeGL3 {
 public:
  /// Requires gamma_1 gamma_2 gamma_3 = 1 and 0 <= theta < 1/2.
  SatakeGL3(std::array<Complex, 3> gammas, double theta = 0.0);

  /// Parameters (g1, g2, 1/(g1 g2)).
  static SatakeGL3 from_two(Complex g1, Complex g2, double theta = 0.0);

  const std::array<Complex, 3>& gammas() const { return gammas_; }
  double theta() const { return theta_; }

  double effective_theta(std::int64_t q) const;
  /// All |gamma_i| within [q^{-theta}, q^{theta}] (with rounding slack).
  bool within_theta(std::int64_t q) const;
  double max_modulus() const;

 private:
  std::array<Complex, 3> gammas_;
  double theta_;
};

/// Contragredient: gammas inverted.
SatakeGL3 dual_gl3(const SatakeGL3& rep);

/// A pair (s, w) of complex parameters.
struct EvalPoint {
  Complex s;
  Complex w;

  /// ((1 + w - s)/2, (3s + w - 1)/2)
  EvalPoint dual() const;

  /// 1/2 <= Re s and Re w < 1.
  bool in_holomorphy_region() const;
  /// 1/2 <= Re s <= Re w < 3/4.
  bool in_ordered_strip() const;
  /// Re(3s+w) > 1, Re(s+w) > theta, Re(2s) > theta.
  bool in_degenerate_region(double theta) const;
};

EvalPoint dual_point(const EvalPoint& p);

/// Unramified principal series with parameters (omega q^{it}, omega^{-1} q^{-it}).
SatakeGL2 eisenstein_rep(Complex omega, Complex t, const LocalField& F);

/// eisenstein_rep(1, (1-w)/i): parameters (q^{1-w}, q^{w-1}).
SatakeGL2 degenerate_eisenstein_rep(Complex w, const LocalField& F);

}  // namespace specrec
