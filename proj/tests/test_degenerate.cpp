#include <doctest.h>

#include <cmath>

#include "specrec/degenerate.hpp"
#include "specrec/errors.hpp"
#include "specrec/global_q.hpp"
#include "specrec/hecke.hpp"
#include "specrec/sampling.hpp"

using namespace specrec;

namespace {

// sum_{a in [a_lo, a_hi], b <= N} lambda(a, b) A^a B^b, plus the geometric tail in b
// (and in a when the a-range is open)
struct Partial {
  Complex value;
  double tail;
};

Partial bump_partial(const SatakeGL3& Pi, Complex A, Complex B, int a_lo, int a_hi, int N, bool a_open) {
  Complex total = 0.0;
  for (int a = a_lo; a <= a_hi; ++a)
    for (int b = 0; b <= N; ++b) total += gl3_lambda(Pi, a, b) * std::pow(A, a) * std::pow(B, b);
  const double M = Pi.max_modulus(), ra = M * std::abs(A), rb = M * std::abs(B);
  auto poly = [](int v) { return (v + 1.0) * (v + 1.0); };
  double part1 = 0.0;
  for (int a = a_lo; a <= a_hi; ++a) part1 += poly(a) * std::pow(ra, a);
  const double tail1 = a_open ? poly_geometric_tail(poly, ra, a_hi) : 0.0;
  return {total, tail1 * poly_geometric_full(poly, rb, N) + part1 * poly_geometric_tail(poly, rb, N)};
}

GlobalLValues placeholder(Complex c, Complex z) {
  GlobalLValues L;
  L.set(GlobalLValues::kLambdaOne, c);
  L.set(GlobalLValues::kLambdaOneDual, c);
  L.set(GlobalLValues::kXiTwo, z);
  L.set(GlobalLValues::kDiscriminant, 1.0);
  L.declare_self_dual();
  return L;
}

}  // namespace

TEST_SUITE("degenerate") {
  TEST_CASE("double series closed form for random tempered parameters") {
    Sampler rng(41);
    for (int i = 0; i < 10; ++i) CHECK(bump_check(rng.tempered_gl3(), 12).max_abs < 1e-10);
  }

  TEST_CASE("trivial parameters: exact coefficients") {
    const std::array<Rational, 3> ones{Rational(1), Rational(1), Rational(1)};
    const auto cf = bump_closed_form_coefficients<Rational>(ones, 10);
    CHECK(cf[1][0] == Rational(3));
    CHECK(cf[1][1] == Rational(8));
    const auto h = complete_homogeneous<Rational>(std::span<const Rational>(ones.data(), 3), 12);
    for (int a = 0; a <= 10; ++a)
      for (int b = 0; a + b <= 10; ++b) CHECK(cf[a][b] == schur_two_row(h, a, b));
  }

  TEST_CASE("exact coefficients for rational parameters") {
    const std::array<Rational, 3> g{Rational(2), Rational(-3, 5), Rational(-5, 6)};
    const auto cf = bump_closed_form_coefficients<Rational>(g, 9);
    const auto h = complete_homogeneous<Rational>(std::span<const Rational>(g.data(), 3), 11);
    for (int a = 0; a <= 9; ++a)
      for (int b = 0; a + b <= 9; ++b) CHECK(cf[a][b] == schur_two_row(h, a, b));
  }

  TEST_CASE("unramified factor against its truncated series") {
    Sampler rng(42);
    for (int i = 0; i < 8; ++i) {
      const std::int64_t q = std::array<std::int64_t, 4>{2, 3, 5, 7}[i % 4];
      const LocalField F(q, i % 3 == 0 ? 1 : 0);
      const auto Pi = rng.gl3(q, 0.2);
      const EvalPoint pt{Complex(rng.uniform(0.8, 1.4), rng.uniform(-3, 3)), Complex(rng.uniform(0.6, 1.2), rng.uniform(-3, 3))};
      const Complex A = qpow(F.qd(), -(pt.s + pt.w)), B = qpow(F.qd(), -2.0 * pt.s);
      const Complex pre = qpow(F.qd(), static_cast<double>(F.d) * (3.0 * pt.s + pt.w - 2.0));
      const auto part = bump_partial(Pi, A, B, 0, 14, 14, true);
      CHECK(std::abs(j_unramified(Pi, F, pt) - pre * part.value) <= std::abs(pre) * part.tail + 1e-12);
    }
  }

  TEST_CASE("prime of l: the unramified factor minus the head") {
    Sampler rng(43);
    for (int i = 0; i < 8; ++i) {
      const std::int64_t q = std::array<std::int64_t, 4>{2, 3, 5, 7}[i % 4];
      const LocalField F(q);
      const int m = 1 + i % 4;
      const auto Pi = rng.gl3(q, 0.2);
      const EvalPoint pt{Complex(rng.uniform(0.6, 1.2), rng.uniform(-3, 3)), Complex(rng.uniform(0.4, 1.0), rng.uniform(-3, 3))};
      const Complex A = qpow(F.qd(), -(pt.s + pt.w)), B = qpow(F.qd(), -2.0 * pt.s);
      const auto head = bump_partial(Pi, A, B, 0, m - 1, 300, false);
      const auto v = j_divides_l(Pi, F, m, pt, 1e-11);
      CHECK(std::abs(v.value - (j_unramified(Pi, F, pt) - head.value)) <= v.tail_bound + head.tail + 1e-12);
    }
  }

  TEST_CASE("prime of l outside the convergence region") {
    const SatakeGL3 Pi({1.0, 1.0, 1.0});
    CHECK_THROWS_AS(j_divides_l(Pi, LocalField(2), 1, {Complex(0.05), Complex(-0.1)}), TruncationInsufficient);
  }

  TEST_CASE("global product: trace is a running product and never certified") {
    const auto trivial = [](std::int64_t) { return SatakeGL3({1.0, 1.0, 1.0}); };
    const EvalPoint pt{Complex(1.2, 0.5), Complex(1.0, -0.3)};
    const auto d = d_global(trivial, 0.0, IdealFactorization::of_integer(6), pt, 50);
    CHECK_FALSE(d.certified);
    REQUIRE_FALSE(d.trace.empty());
    CHECK(d.trace.back().second == d.value);  // running product starts from the prefactor
    CHECK(d.trace.back().first == 47);
  }

  TEST_CASE("central constants agree exactly") {
    const Complex c(1.5, 0.5), z(4.0, 0.0);
    const auto L = placeholder(c, z);
    const auto trivial = [](const Place&) { return SatakeGL3({1.0, 1.0, 1.0}); };
    const auto R = residue_term(L, trivial, IdealFactorization(), IdealFactorization(), {0.5, 0.5});
    const Complex expected = 2.0 * c * c / z;
    CHECK(R.value == expected);
    CHECK(central_degenerate(L) == expected);
    CHECK(corollary_main_term(L, 11).main == 2.0 * expected);
  }

  TEST_CASE("missing labels are reported") {
    GlobalLValues L;
    L.set(GlobalLValues::kLambdaOne, 1.0);
    CHECK_THROWS_AS(central_degenerate(L), MissingLabel);
    CHECK_THROWS_AS(L.get(GlobalLValues::kXiTwo), MissingLabel);
    CHECK(L.provenance(GlobalLValues::kLambdaOne) == Provenance::UserSupplied);
  }
}
