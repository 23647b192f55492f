#include "specrec/degenerate.hpp"

#include <cmath>
#include <sstream>
#include <limits>
#include <string>

#include "specrec/errors.hpp"

namespace specrec {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

void GlobalLValues::set(const std::string& label, Complex value, Provenance prov) {
  values_[label] = {value, prov};
}

bool GlobalLValues::has(const std::string& label) const {
  if (values_.count(label)) return true;
  if (self_dual_ && label == kLambdaZero) return values_.count(kLambdaOneDual) > 0;
  if (self_dual_ && label == kLambdaOneDual) return values_.count(kLambdaZero) > 0;
  return false;
}

Complex GlobalLValues::get(const std::string& label) const {
  auto it = values_.find(label);
  if (it != values_.end()) return it->second.first;
  if (self_dual_) {
    if (label == kLambdaZero && values_.count(kLambdaOneDual)) return values_.at(kLambdaOneDual).first;
    if (label == kLambdaOneDual && values_.count(kLambdaZero)) return values_.at(kLambdaZero).first;
  }
  throw MissingLabel("GlobalLValues: missing label " + label);
}

Provenance GlobalLValues::provenance(const std::string& label) const {
  auto it = values_.find(label);
  if (it == values_.end()) throw MissingLabel("GlobalLValues: missing label " + label);
  return it->second.second;
}

Complex GlobalLValues::lambda_at(Complex s) const {
  if (std::abs(s - 1.0) < 1e-12 && has(kLambdaOne)) return get(kLambdaOne);
  if (std::abs(s) < 1e-12 && has(kLambdaZero)) return get(kLambdaZero);
  if (completed_L) return completed_L(s);
  throw MissingLabel("GlobalLValues: no value for Lambda(s,Pi) at s=" + std::to_string(s.real()) + "+" +
                     std::to_string(s.imag()) + "i");
}

Complex GlobalLValues::xi_at(Complex s) const {
  if (std::abs(s - 2.0) < 1e-12 && has(kXiTwo)) return get(kXiTwo);
  if (completed_xi) return completed_xi(s);
  throw MissingLabel("GlobalLValues: no value for xi_F(s) at s=" + std::to_string(s.real()) + "+" +
                     std::to_string(s.imag()) + "i");
}

Complex j_unramified(const SatakeGL3& Pi, const LocalField& F, const EvalPoint& pt) {
  const double q = F.qd();
  const Complex A = qpow(q, -(pt.s + pt.w));
  const Complex B = qpow(q, -2.0 * pt.s);
  Complex denom = 1.0;
  for (const auto& g : Pi.gammas()) denom *= (1.0 - g * A) * (1.0 - B / g);
  if (std::abs(denom) < 1e-14) throw PoleAtEvaluationPoint("j_unramified: L-factor pole");
  const Complex pre = qpow(q, static_cast<double>(F.d) * (3.0 * pt.s + pt.w - 2.0));
  return pre * (1.0 - A * B) / denom;
}

BumpDeviation bump_check(const SatakeGL3& Pi, int order) {
  if (order < 0) throw NegativeIndex("bump_check: negative order");
  const auto c = bump_closed_form_coefficients<Complex>(Pi.gammas(), order);
  Gl3EigenvalueTable table(Pi, order + 1);
  BumpDeviation dev;
  dev.order = order;
  for (int a = 0; a <= order; ++a)
    for (int b = 0; a + b <= order; ++b) {
      const double d = std::abs(table.lambda(a, b) - c[a][b]);
      dev.max_abs = std::max(dev.max_abs, d);
      dev.max_rel = std::max(dev.max_rel, d / std::max(1.0, std::abs(c[a][b])));
    }
  return dev;
}

WeightValue j_divides_l(const SatakeGL3& Pi, const LocalField& F, int m, const EvalPoint& pt, double tol) {
  if (m < 1) throw InvalidArgument("j_divides_l: exponent must be >= 1");
  const double q = F.qd();
  const Complex A = qpow(q, -(pt.s + pt.w));
  const Complex B = qpow(q, -2.0 * pt.s);
  const double M = Pi.max_modulus();
  const double rhoA = M * std::abs(A), rhoB = M * std::abs(B);
  if (!(rhoA < 1.0 && rhoB < 1.0))
    throw TruncationInsufficient("j_divides_l: series does not converge (need Re(s+w), Re(2s) > theta)");
  const Complex pre = qpow(q, static_cast<double>(F.d) * (3.0 * pt.s + pt.w - 2.0));
  auto poly = [](int v) { return (v + 1.0) * (v + 1.0); };

  for (int N = 16;; N *= 2) {
    Gl3EigenvalueTable table(Pi, m + 2 * N + 2);
    CompensatedSum outer;
    double mag = 0.0;
    Complex Ap = std::pow(A, m);
    for (int a = m; a <= m + N; ++a, Ap *= A) {
      CompensatedSum inner;
      Complex Bp = 1.0;
      double imag = 0.0;
      for (int b = 0; b <= N; ++b, Bp *= B) {
        inner.add(table.lambda(a, b) * Bp);
        imag += table.magnitude(a, b) * std::abs(Bp) * term_rounding_weight(2 * (a + b) + 2);
      }
      outer.add(inner.value() * Ap);
      mag += imag * std::abs(Ap);
    }
    const Complex total = outer.value();
    double part1 = 0.0;
    for (int a = m; a <= m + N; ++a) part1 += poly(a) * std::pow(rhoA, a);
    const double tail1 = poly_geometric_tail(poly, rhoA, m + N);
    const double tail2 = poly_geometric_tail(poly, rhoB, N);
    const double full2 = poly_geometric_full(poly, rhoB, N);
    const double tail = std::abs(pre) * (tail1 * full2 + part1 * tail2);
    const double bound = tail + std::abs(pre) * kEps * (mag + 8.0 * std::abs(total));
    if (bound <= tol) return {pre * total, bound, N};
    if (std::isfinite(tail) && tail < 1e-3 * tol)
      throw TruncationInsufficient("j_divides_l: rounding allowance " + sci(bound) + " exceeds tol " + sci(tol) +
                                   "; more terms cannot help");
    if (N >= 4096 || !std::isfinite(bound)) 
      throw TruncationInsufficient("j_divides_l: tail bound " + sci(bound) + " above tol at truncation " +
                                   std::to_string(N));
  }
}

namespace {

// sum over primes p > P of p^{-a}, estimated by the prime number theorem
double prime_power_tail_estimate(double a, double P) {
  if (a <= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(P, 1.0 - a) / ((a - 1.0) * std::log(P));
}

}  // namespace

DegenerateProduct d_global(const Gl3ByPrime& Pi, double theta, const IdealFactorization& l, const EvalPoint& pt,
                           std::int64_t prime_cutoff, double tol, double d_F) {
  if (!pt.in_degenerate_region(theta))
    throw RegionViolation("d_global: needs Re(3s+w) > 1, Re(s+w) > theta, Re(2s) > theta");
  if (prime_cutoff < 2) throw InvalidArgument("d_global: prime cutoff must be >= 2");
  for (const auto& [place, m] : l.exponents())
    if (place.q() > prime_cutoff || !is_prime(place.q()))
      throw InvalidArgument("d_global: l must be supported on rational primes up to the cutoff");

  DegenerateProduct out;
  const EvalPoint dp = pt.dual();
  out.prefactor = 2.0 * std::pow(Complex(d_F), 3.5 - 3.0 * dp.s - dp.w);
  Complex running = out.prefactor;
  double with_err = std::abs(running), without = std::abs(running);
  for (std::int64_t p = 2; p <= prime_cutoff; ++p) {
    if (!is_prime(p)) continue;
    const LocalField F(p);
    const int m = l.exponent_at(Place(p));
    const SatakeGL3 rep = Pi(p);
    if (m == 0) {
      const Complex J = j_unramified(rep, F, pt);
      running *= J;
      with_err *= std::abs(J);
      without *= std::abs(J);
    } else {
      const auto J = j_divides_l(rep, F, m, pt, tol);
      running *= J.value;
      with_err *= std::abs(J.value) + J.tail_bound;
      without *= std::abs(J.value);
    }
    out.trace.emplace_back(p, running);
  }
  out.value = running;
  out.local_tail_bound = std::max(0.0, with_err - without);
  const double P = static_cast<double>(prime_cutoff);
  // log J_p = lambda(1,0) A + lambda(0,1) B + ..., |lambda| <= 3 p^theta
  out.euler_tail_estimate = 3.0 * (prime_power_tail_estimate((pt.s + pt.w).real() - theta, P) +
                                   prime_power_tail_estimate(2.0 * pt.s.real() - theta, P));
  out.certified = false;
  return out;
}

Complex central_degenerate(const GlobalLValues& L) {
  const Complex dF = L.get(GlobalLValues::kDiscriminant);
  return 2.0 * std::pow(dF, 1.5) * L.get(GlobalLValues::kLambdaOne) * L.get(GlobalLValues::kLambdaOneDual) /
         L.get(GlobalLValues::kXiTwo);
}

WeightValue degenerate_weight(const Gl3Provider& Pi, const IdealFactorization& q, const IdealFactorization& l,
                              const EvalPoint& pt, double tol) {
  if (!q.coprime_to(l)) throw CoprimalityViolation("degenerate_weight: q and l must be coprime");
  Complex value = 1.0;
  double with_err = 1.0, without = 1.0;
  auto mul = [&](const WeightValue& v) {
    value *= v.value;
    with_err *= std::abs(v.value) + v.tail_bound;
    without *= std::abs(v.value);
  };
  for (const auto& [place, n] : q.exponents())
    mul(d_weight(Pi(place), place.field, DegenerateRole::DividesQ, n, pt, tol));
  for (const auto& [place, m] : l.exponents())
    mul(d_weight(Pi(place), place.field, DegenerateRole::DividesL, m, pt, tol));
  return {value, std::max(0.0, with_err - without), 0};
}

WeightValue residue_term(const GlobalLValues& L, const Gl3Provider& Pi, const IdealFactorization& q,
                         const IdealFactorization& l, const EvalPoint& pt, double tol) {
  if (!pt.in_holomorphy_region()) throw RegionViolation("residue_term: needs 1/2 <= Re s and Re w < 1");
  // residue of xi_F(w +- it) at t = +-(1-w)/i is xi*(1)/(+-i): it cancels the
  // (+-i) prefactor and the xi*(1) denominator; both signs give the same term
  const Complex c = 2.0 * L.lambda_at(1.0 + pt.s - pt.w) * L.lambda_at(pt.s + pt.w - 1.0) / L.xi_at(3.0 - 2.0 * pt.w);
  const auto H = degenerate_weight(Pi, q, l, pt, tol);
  return {c * H.value, std::abs(c) * H.tail_bound, 0};
}

}  // namespace specrec
