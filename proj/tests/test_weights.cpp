#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specrec/casselman.hpp"
#include "specrec/errors.hpp"
#include "specrec/sampling.hpp"
#include "specrec/weights.hpp"

using namespace specrec;

TEST_SUITE("weights") {
  TEST_CASE("conductor equal to the level gives phi(q^n) q^{-2n}") {
    Sampler rng(31);
    for (std::int64_t q : {2, 3, 5})
      for (int n = 1; n <= 2; ++n) {
        const LocalField F(q);
        const double expected = euler_phi_prime_power(q, n) / std::pow(F.qd(), 2 * n);
        for (int i = 0; i < 4; ++i) {
          const auto pi = n == 1 ? rng.conductor_one() : SatakeGL2::parameterless(2);
          const auto v = h_divides_q(rng.gl3(q, 0.2), pi, F, n, rng.ordered_strip(), 1e-10, Conjugation::Plain);
          CHECK(std::abs(v.value - expected) <= v.tail_bound);
          CHECK(v.tail_bound <= 1e-10);
        }
      }
  }

  TEST_CASE("conductor above the level gives exactly zero") {
    Sampler rng(32);
    for (int n = 1; n <= 2; ++n)
      for (int cond = n + 1; cond <= 4; ++cond) {
        const auto v = h_divides_q(rng.gl3(3, 0.2), SatakeGL2::parameterless(cond), LocalField(3), n, rng.ordered_strip());
        CHECK(v.value == Complex(0.0));
        CHECK(v.tail_bound == 0.0);
      }
  }

  TEST_CASE("collapsed formula against the orthonormal-basis sum") {
    Sampler rng(33);
    for (int i = 0; i < 12; ++i) {
      const std::int64_t q = std::array<std::int64_t, 3>{2, 3, 5}[i % 3];
      const LocalField F(q);
      const int n = 1 + i % 2;
      const auto Pi = rng.gl3(q, 0.15);
      const auto pi = i % 4 == 3 ? rng.conductor_one() : rng.unramified(q, 7.0 / 64.0);
      const auto pt = rng.ordered_strip();
      for (auto conj : {Conjugation::Conjugate, Conjugation::Plain}) {
        const auto a = h_divides_q(Pi, pi, F, n, pt, 1e-11, conj);
        const auto b = h_divides_q_oracle(Pi, pi, F, n, pt, 1e-11, conj);
        CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound);
      }
    }
  }

  TEST_CASE("continued and truncated summation agree") {
    Sampler rng(34);
    for (int i = 0; i < 12; ++i) {
      const std::int64_t q = std::array<std::int64_t, 3>{2, 3, 5}[i % 3];
      const LocalField F(q);
      const auto Pi = rng.gl3(q, 0.15);
      const auto pi = rng.unramified(q, 7.0 / 64.0);
      const auto pt = rng.ordered_strip();
      const int n = 1 + i % 2;
      for (auto conj : {Conjugation::Conjugate, Conjugation::Plain}) {
        const auto a = h_divides_q(Pi, pi, F, n, pt, 1e-11, conj, SumMethod::Truncated);
        const auto b = h_divides_q(Pi, pi, F, n, pt, 1e-11, conj, SumMethod::Continued);
        CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound);
      }
    }
  }

  TEST_CASE("truncated sum reports divergence instead of guessing") {
    // |gamma| large enough that the series in nu diverges at Re s = 1/2
    const SatakeGL3 Pi = SatakeGL3::from_two(2.5, 1.0, 0.49);
    CHECK_THROWS_AS(h_divides_q(Pi, SatakeGL2::unramified(1.0), LocalField(2), 1, {0.5, 0.6}, 1e-10,
                                Conjugation::Conjugate, SumMethod::Truncated),
                    TruncationInsufficient);
  }

  TEST_CASE("places dividing l") {
    const LocalField F3(3);
    const double r = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(h_divides_l(SatakeGL2::from_eigenvalue(1.2), F3, 1, 0.5) - r * (1.2 - r)) < 1e-15);
    CHECK(h_divides_l(SatakeGL2::parameterless(2), F3, 1, 0.5) == Complex(0.0));
    CHECK(h_divides_l(SatakeGL2::conductor_one(1.0), F3, 3, 0.5) == Complex(0.0));
    CHECK_THROWS_AS(h_divides_l(SatakeGL2::unramified(1.0), F3, 0, 0.5), InvalidArgument);
  }

  TEST_CASE("global weight: the worked example and coprimality") {
    PiData pd;
    pd.local.emplace(Place(2), SatakeGL2::conductor_one(1.0));
    const auto trivial = [](const Place&) { return SatakeGL3({1.0, 1.0, 1.0}); };
    const auto g = h_global(trivial, pd, IdealFactorization::of_integer(2), IdealFactorization(), {0.5, 0.5});
    CHECK(std::abs(g.total.value - 0.25) <= g.total.tail_bound + 1e-15);
    CHECK(g.phi_factor == doctest::Approx(0.25));
    CHECK_THROWS_AS(h_global(trivial, pd, IdealFactorization::of_integer(2), IdealFactorization::of_integer(4), {0.5, 0.5}),
                    CoprimalityViolation);
    CHECK_THROWS_AS(h_global(trivial, pd, IdealFactorization::of_integer(3), IdealFactorization(), {0.5, 0.5}),
                    MissingLocalRep);
    pd.archimedean_spherical = false;
    CHECK(h_global(trivial, pd, IdealFactorization::of_integer(2), IdealFactorization(), {0.5, 0.5}).total.value ==
          Complex(0.0));
  }

  TEST_CASE("transformed weight swaps q and l and moves to the dual point") {
    PiData pd;
    pd.local.emplace(Place(2), SatakeGL2::from_eigenvalue(0.4));
    pd.local.emplace(Place(3), SatakeGL2::conductor_one(Complex(0.0, 1.0)));
    const auto Pi = [](const Place& v) { return SatakeGL3::from_two(Complex(0.0, 1.0), std::polar(1.0, 0.3 * v.q()), 0.0); };
    const auto q = IdealFactorization::of_integer(3), l = IdealFactorization::of_integer(2);
    const EvalPoint pt{Complex(0.55, 0.2), Complex(0.6, -0.4)};
    const auto a = h_global_transformed(Pi, pd, q, l, pt);
    const auto b = h_global(Pi, pd, l, q, dual_point(pt));
    CHECK(a.total.value == b.total.value);
  }

  TEST_CASE("degenerate weight stays bounded next to alpha^2 = 1") {
    const LocalField F(3);
    const SatakeGL3 Pi = SatakeGL3::from_two(std::polar(1.05, 0.4), std::polar(0.97, -1.1), 0.1);
    const Complex s(0.6, 0.3);
    const double far = std::abs(d_weight(Pi, F, DegenerateRole::DividesQ, 1, {s, Complex(0.8, 0.0)}).value);
    for (double delta : {1e-4, 1e-7, 1e-10}) {
      const auto v = d_weight(Pi, F, DegenerateRole::DividesQ, 1, {s, Complex(1.0 - delta, 0.0)});
      CHECK(std::isfinite(std::abs(v.value)));
      CHECK(std::abs(v.value) <= 10.0 * far);
    }
    CHECK_THROWS_AS(d_weight(Pi, F, DegenerateRole::DividesQ, 1, {Complex(0.4), Complex(0.6)}), RegionViolation);
  }

  TEST_CASE("degenerate weight at l places is the GL(2) formula") {
    const LocalField F(5);
    const Complex w(0.7, 0.2);
    const SatakeGL3 Pi({1.0, 1.0, 1.0});
    const auto v = d_weight(Pi, F, DegenerateRole::DividesL, 2, {0.6, w});
    CHECK(v.value == h_divides_l(degenerate_eisenstein_rep(w, F), F, 2, w));
    CHECK(d_weight(Pi, F, DegenerateRole::DividesL, 0, {0.6, w}).value == Complex(1.0));
  }

  TEST_CASE("congruence subgroup volumes") {
    const LocalField F(3);
    CHECK(congruence_volume(F, 0) == 1.0);
    CHECK(congruence_volume(F, 1) == doctest::Approx(0.25));
    CHECK(congruence_volume(F, 2) == doctest::Approx(1.0 / 12.0));
  }
}
