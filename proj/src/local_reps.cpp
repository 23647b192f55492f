#include "specrec/local_reps.hpp"

#include <algorithm>
#include <string>

#include "specrec/errors.hpp"

namespace specrec {

namespace {

constexpr double kProductTol = 1e-9;
constexpr double kModulusSlack = 1e-12;

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::int64_t> prime_base(std::int64_t n) {
  if (n < 2) return std::nullopt;
  std::int64_t p = 0;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return n;
  while (n % p == 0) n /= p;
  if (n != 1) return std::nullopt;
  return p;
}

LocalField::LocalField(std::int64_t q_, int d_) : q(q_), d(d_) {
  if (q < 2 || !prime_base(q)) throw InvalidArgument("LocalField: q=" + std::to_string(q) + " is not a prime power");
  if (d < 0) throw InvalidArgument("LocalField: negative conductor exponent");
}

Complex LocalField::zeta(Complex s) const {
  const Complex f = 1.0 - qpow(qd(), -s);
  if (std::abs(f) < 1e-14) throw PoleAtEvaluationPoint("local zeta factor has a pole");
  return 1.0 / f;
}

SatakeGL2::SatakeGL2(std::vector<Complex> params, int conductor)
    : params_(std::move(params)), conductor_(conductor) {
  if (conductor_ < 0) throw InvalidArgument("SatakeGL2: negative conductor");
  const std::size_t expect = conductor_ == 0 ? 2 : (conductor_ == 1 ? 1 : 0);
  if (params_.size() != expect)
    throw InvalidArgument("SatakeGL2: conductor " + std::to_string(conductor_) + " needs " +
                          std::to_string(expect) + " parameters, got " + std::to_string(params_.size()));
  if (conductor_ == 0 && std::abs(params_[0] * params_[1] - 1.0) > kProductTol)
    throw InvalidArgument("SatakeGL2: unramified parameters must have product 1");
}

SatakeGL2 SatakeGL2::unramified(Complex alpha) {
  if (alpha == 0.0) throw InvalidArgument("SatakeGL2: zero Satake parameter");
  return SatakeGL2({alpha, 1.0 / alpha}, 0);
}

SatakeGL2 SatakeGL2::from_eigenvalue(Complex lambda) {
  // alpha solves alpha^2 - lambda alpha + 1 = 0
  const Complex disc = std::sqrt(lambda * lambda - 4.0);
  return unramified((lambda + disc) / 2.0);
}

SatakeGL2 SatakeGL2::conductor_one(Complex alpha) { return SatakeGL2({alpha}, 1); }

SatakeGL2 SatakeGL2::parameterless(int conductor) {
  if (conductor < 2) throw InvalidArgument("SatakeGL2: parameterless representations have conductor >= 2");
  return SatakeGL2({}, conductor);
}

double SatakeGL2::effective_theta(std::int64_t q) const {
  double t = 0.0;
  for (const auto& a : params_) {
    if (a == 0.0) continue;  // conductor-one parameter 0 is harmless
    t = std::max(t, std::abs(std::log(std::abs(a))) / std::log(static_cast<double>(q)));
  }
  return t;
}

bool SatakeGL2::is_tempered(std::int64_t q, double vartheta) const {
  return effective_theta(q) <= vartheta + kModulusSlack;
}

bool SatakeGL2::check_tempered(std::int64_t q, double vartheta, bool strict) const {
  const bool ok = is_tempered(q, vartheta);
  if (!ok && strict)
    throw TemperednessViolation("SatakeGL2: parameters exceed q^vartheta with vartheta=" + std::to_string(vartheta));
  return ok;
}

double SatakeGL2::max_modulus() const {
  double m = 0.0;
  for (const auto& a : params_) m = std::max(m, std::abs(a));
  return m;
}

SatakeGL3::SatakeGL3(std::array<Complex, 3> gammas, double theta) : gammas_(gammas), theta_(theta) {
  if (!(theta_ >= 0.0 && theta_ < 0.5)) throw InvalidArgument("SatakeGL3: theta must lie in [0, 1/2)");
  if (std::abs(gammas_[0] * gammas_[1] * gammas_[2] - 1.0) > kProductTol)
    throw InvalidArgument("SatakeGL3: parameters must have product 1");
}

SatakeGL3 SatakeGL3::from_two(Complex g1, Complex g2, double theta) {
  return SatakeGL3({g1, g2, 1.0 / (g1 * g2)}, theta);
}

double SatakeGL3::effective_theta(std::int64_t q) const {
  double t = 0.0;
  for (const auto& g : gammas_) t = std::max(t, std::abs(std::log(std::abs(g))) / std::log(static_cast<double>(q)));
  return t;
}

bool SatakeGL3::within_theta(std::int64_t q) const { return effective_theta(q) <= theta_ + kModulusSlack; }

double SatakeGL3::max_modulus() const {
  double m = 0.0;
  for (const auto& g : gammas_) m = std::max(m, std::abs(g));
  return m;
}

SatakeGL3 dual_gl3(const SatakeGL3& rep) {
  const auto& g = rep.gammas();
  return SatakeGL3({1.0 / g[0], 1.0 / g[1], 1.0 / g[2]}, rep.theta());
}

EvalPoint EvalPoint::dual() const { return {(1.0 + w - s) / 2.0, (3.0 * s + w - 1.0) / 2.0}; }

bool EvalPoint::in_holomorphy_region() const { return s.real() >= 0.5 && w.real() < 1.0; }

bool EvalPoint::in_ordered_strip() const {
  return s.real() >= 0.5 && s.real() <= w.real() && w.real() < 0.75;
}

bool EvalPoint::in_degenerate_region(double theta) const {
  return (3.0 * s + w).real() > 1.0 && (s + w).real() > theta && (2.0 * s).real() > theta;
}

EvalPoint dual_point(const EvalPoint& p) { return p.dual(); }

SatakeGL2 eisenstein_rep(Complex omega, Complex t, const LocalField& F) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw InvalidArgument("eisenstein_rep: |omega| must be 1");
  const Complex a = omega * qpow(F.qd(), kI * t);
  const Complex b = qpow(F.qd(), -kI * t) / omega;
  return SatakeGL2({a, b}, 0);
}

SatakeGL2 degenerate_eisenstein_rep(Complex w, const LocalField& F) {
  return eisenstein_rep(1.0, (1.0 - w) / kI, F);
}

}  // namespace specrec
