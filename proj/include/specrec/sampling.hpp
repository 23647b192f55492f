#pragma once

// Random parameter draws shared by the verification suites and the tests.

#include <cstdint>
#include <random>

#include "specrec/local_reps.hpp"

namespace specrec {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex unit() { return std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi)); }

  /// Parameters of modulus q^e with |e| <= theta.
  Complex theta_param(std::int64_t q, double theta) {
    return std::polar(std::pow(static_cast<double>(q), uniform(-theta, theta)), uniform(-std::numbers::pi, std::numbers::pi));
  }

  /// Unramified PGL(3) parameters with every |gamma_i| in [q^{-theta}, q^{theta}].
  SatakeGL3 gl3(std::int64_t q, double theta) {
    const double lq = std::log(static_cast<double>(q));
    // e1 + e2 + e3 = 0 with all |e_i| <= theta
    const double e1 = uniform(-theta, theta);
    const double lo = std::max(-theta, -theta - e1), hi = std::min(theta, theta - e1);
    const double e2 = uniform(lo, hi);
    const Complex g1 = std::polar(std::exp(e1 * lq), uniform(-std::numbers::pi, std::numbers::pi));
    const Complex g2 = std::polar(std::exp(e2 * lq), uniform(-std::numbers::pi, std::numbers::pi));
    return SatakeGL3::from_two(g1, g2, theta);
  }

  SatakeGL3 tempered_gl3() { return SatakeGL3::from_two(unit(), unit(), 0.0); }

  SatakeGL2 unramified(std::int64_t q, double vartheta) { return SatakeGL2::unramified(theta_param(q, vartheta)); }
  SatakeGL2 conductor_one() { return SatakeGL2::conductor_one(unit()); }

  /// (s, w) with 1/2 <= Re s <= Re w < 3/4 and |Im| <= im.
  EvalPoint ordered_strip(double im = 3.0) {
    const double rs = uniform(0.5, 0.74), rw = uniform(rs, 0.749);
    return {Complex(rs, uniform(-im, im)), Complex(rw, uniform(-im, im))};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace specrec
