#include <doctest.h>

#include <cmath>
#include <span>

#include "specrec/errors.hpp"
#include "specrec/hecke.hpp"
#include "specrec/identity_test.hpp"
#include "specrec/sampling.hpp"
#include "specrec/series.hpp"

using namespace specrec;

namespace {

// e_1, e_2 of three variables by brute force, for the h-recursion oracle
template <class T>
std::vector<T> h_by_monomials(const std::array<T, 3>& g, int kmax) {
  std::vector<T> h(static_cast<std::size_t>(kmax) + 1, T(0));
  for (int k = 0; k <= kmax; ++k)
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j <= k; ++j) {
        T m(1);
        for (int a = 0; a < i; ++a) m *= g[0];
        for (int a = 0; a < j; ++a) m *= g[1];
        for (int a = 0; a < k - i - j; ++a) m *= g[2];
        h[k] += m;
      }
  return h;
}

// Schur polynomial s_{(a+b, b, 0)} as a ratio of alternants, exact.
Rational schur_bialternant(const std::array<Rational, 3>& x, int a, int b) {
  const int lam[3] = {a + b, b, 0};
  auto det3 = [](const Rational m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  auto rpow = [](Rational v, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= v;
    return r;
  };
  Rational num[3][3], den[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      num[i][j] = rpow(x[j], lam[i] + 2 - i);
      den[i][j] = rpow(x[j], 2 - i);
    }
  return det3(num) / det3(den);
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("exact inverse of a rational series") {
    std::vector<Rational> a{Rational(2), Rational(-1, 3), Rational(5, 7), Rational(0), Rational(1, 2)};
    const TruncSeries<Rational> A(a);
    const auto P = series_mul(A, series_inv(A));
    CHECK(P[0] == Rational(1));
    for (std::size_t k = 1; k <= P.order(); ++k) CHECK(P[k] == Rational(0));
  }

  TEST_CASE("inverse needs a nonzero constant term") {
    const TruncSeries<Rational> A(std::vector<Rational>{Rational(0), Rational(1)});
    CHECK_THROWS_AS(series_inv(A), ZeroConstantTerm);
  }

  TEST_CASE("geometric series") {
    // 1 / (1 - x) = sum x^k
    const auto inv = series_inv(TruncSeries<Rational>(std::vector<Rational>{Rational(1), Rational(-1), Rational(0),
                                                                           Rational(0), Rational(0), Rational(0)}));
    for (std::size_t k = 0; k <= inv.order(); ++k) CHECK(inv[k] == Rational(1));
  }

  TEST_CASE("product_one_minus expands prod (1 - r x)") {
    const std::array<Rational, 2> r{Rational(2), Rational(3)};
    const auto p = product_one_minus<Rational>(std::span<const Rational>(r.data(), 2), 4);
    CHECK(p[0] == Rational(1));
    CHECK(p[1] == Rational(-5));
    CHECK(p[2] == Rational(6));
    CHECK(p[3] == Rational(0));
  }

  TEST_CASE("identity_test records failures and passes on equal functions") {
    const SampleBox box{0.0, 1.0, -1.0, 1.0, {}};
    const auto same = identity_test([](Complex z) { return z * z; }, [](Complex z) { return z * z; }, box, 20, 1e-12, 5);
    CHECK(same.pass);
    CHECK(same.samples == 20);
    CHECK(same.seed == 5);
    const auto differ = identity_test([](Complex z) { return z; }, [](Complex z) { return z + 1e-3; }, box, 20, 1e-6, 5);
    CHECK_FALSE(differ.pass);
    const auto throws = identity_test([](Complex) -> Complex { throw EvaluationFailure("boom"); },
                                      [](Complex z) { return z; }, box, 5, 1e-6, 5);
    CHECK_FALSE(throws.pass);
    CHECK(throws.failures.size() == 5);
  }

  TEST_CASE("identity_test is reproducible from its seed") {
    const SampleBox box{0.0, 1.0, -1.0, 1.0, {}};
    auto f = [](Complex z) { return std::exp(z); };
    auto g = [](Complex z) { return 1.0 + z; };
    const auto a = identity_test(f, g, box, 10, 1.0, 99), b = identity_test(f, g, box, 10, 1.0, 99);
    CHECK(a.max_diff == b.max_diff);
    CHECK(a.worst_point == b.worst_point);
  }
}

TEST_SUITE("hecke") {
  TEST_CASE("complete homogeneous polynomials against monomial sums") {
    const std::array<Rational, 3> g{Rational(2), Rational(-1, 3), Rational(5, 4)};
    const auto h = complete_homogeneous<Rational>(std::span<const Rational>(g.data(), 3), 8);
    const auto o = h_by_monomials(g, 8);
    for (int k = 0; k <= 8; ++k) CHECK(h[k] == o[k]);
  }

  TEST_CASE("two-row Schur polynomial equals the bialternant") {
    const std::array<Rational, 3> x{Rational(2), Rational(-1, 3), Rational(5, 4)};
    const auto h = complete_homogeneous<Rational>(std::span<const Rational>(x.data(), 3), 12);
    for (int a = 0; a <= 5; ++a)
      for (int b = 0; b <= 5; ++b) CHECK(schur_two_row(h, a, b) == schur_bialternant(x, a, b));
  }

  TEST_CASE("trivial GL(3) parameters give Weyl dimensions") {
    const SatakeGL3 one({1.0, 1.0, 1.0});
    for (int a = 0; a <= 5; ++a)
      for (int b = 0; b <= 5; ++b)
        CHECK(gl3_lambda(one, a, b).real() == doctest::Approx((a + 1) * (b + 1) * (a + b + 2) / 2.0));
  }

  TEST_CASE("table and direct GL(3) eigenvalues agree, also in extended precision") {
    Sampler rng(11);
    for (int i = 0; i < 10; ++i) {
      const auto Pi = rng.gl3(3, 0.2);
      const Gl3EigenvalueTable t(Pi, 20);
      for (int a = 0; a <= 8; ++a)
        for (int b = 0; a + b <= 18; ++b) {
          const Complex d = gl3_lambda(Pi, a, b);
          CHECK(std::abs(t.lambda(a, b) - d) <= 1e-12 * std::max(1.0, std::abs(d)));
          CHECK(std::abs(to_double(t.lambda_ext(a, b)) - d) <= 1e-12 * std::max(1.0, std::abs(d)));
          CHECK(std::abs(d) <= t.magnitude(a, b) * (1 + 1e-12));
        }
    }
  }

  TEST_CASE("GL(2) eigenvalues by conductor") {
    const auto unr = SatakeGL2::from_eigenvalue(1.2);
    CHECK(gl2_lambda(unr, 1).real() == doctest::Approx(1.2));
    CHECK(gl2_lambda(unr, 2).real() == doctest::Approx(1.2 * 1.2 - 1.0));
    const auto c1 = SatakeGL2::conductor_one(Complex(0.6, 0.8));
    CHECK(std::abs(gl2_lambda(c1, 3) - std::pow(Complex(0.6, 0.8), 3)) < 1e-15);
    const auto c2 = SatakeGL2::parameterless(2);
    CHECK(gl2_lambda(c2, 0) == Complex(1.0));
    CHECK(gl2_lambda(c2, 1) == Complex(0.0));
    CHECK_THROWS_AS(gl2_lambda(c2, -1), NegativeIndex);
    const auto ext = gl2_lambda_table_ext(unr, 6);
    const auto dbl = gl2_lambda_table(unr, 6);
    for (int k = 0; k <= 6; ++k) CHECK(std::abs(to_double(ext[k]) - dbl[k]) < 1e-14);
  }

  TEST_CASE("lambda hat: product and divisor-sum forms agree exactly") {
    const std::vector<Rational> p{Rational(3, 2), Rational(2, 3)};
    const std::span<const Rational> sp(p);
    const Rational x(1, 5);
    for (int cond = 0; cond <= 3; ++cond) {
      const auto params = cond == 0 ? sp : (cond == 1 ? sp.subspan(0, 1) : sp.subspan(0, 0));
      for (int n = 0; n <= 5; ++n)
        CHECK(lambda_hat_local_product<Rational>(params, cond, n, x) == lambda_hat_local_divisor<Rational>(params, cond, n, x));
    }
  }

  TEST_CASE("lambda hat over a composite ideal") {
    LocalRepsGL2 reps;
    reps.emplace(Place(2), SatakeGL2::from_eigenvalue(0.7));
    reps.emplace(Place(3), SatakeGL2::conductor_one(Complex(0.0, 1.0)));
    const auto l = IdealFactorization::of_integer(2 * 2 * 2 * 3 * 3);
    const Complex w(0.6, 1.1);
    CHECK(std::abs(lambda_hat(reps, l, w) - lambda_hat_divisor_sum(reps, l, w)) < 1e-13);
    CHECK_THROWS_AS(lambda_hat(reps, IdealFactorization::of_integer(5), w), MissingLocalRep);
  }

  TEST_CASE("Rankin-Selberg series identity") {
    Sampler rng(3);
    for (int i = 0; i < 10; ++i) {
      const auto Pi = rng.tempered_gl3();
      CHECK(rs_series_check(Pi, rng.conductor_one(), 30).max_abs < 1e-10);
      CHECK(rs_series_check(Pi, SatakeGL2::parameterless(2), 30).max_abs == 0.0);
    }
    CHECK_THROWS_AS(rs_series_check(rng.tempered_gl3(), SatakeGL2::unramified(1.0), 10), InvalidArgument);
  }

  TEST_CASE("dual point is an involution fixing the centre") {
    const EvalPoint p{Complex(0.6, 0.3), Complex(0.7, -1.0)};
    const auto d = dual_point(p);
    const auto dd = dual_point(d);
    CHECK(std::abs(dd.s - p.s) < 1e-15);
    CHECK(std::abs(dd.w - p.w) < 1e-15);
    CHECK(std::abs((d.s + d.w) - (p.s + p.w)) < 1e-15);
    const auto c = dual_point({0.5, 0.5});
    CHECK(c.s == Complex(0.5));
    CHECK(c.w == Complex(0.5));
  }

  TEST_CASE("ideal factorization") {
    const auto f = IdealFactorization::of_integer(360);
    CHECK(f.norm() == 360);
    CHECK(f.exponent_at(Place(2)) == 3);
    CHECK(f.exponent_at(Place(3)) == 2);
    CHECK(f.exponent_at(Place(7)) == 0);
    CHECK(f.euler_phi() == doctest::Approx(96.0));
    CHECK(f.coprime_to(IdealFactorization::of_integer(7)));
    CHECK_FALSE(f.coprime_to(IdealFactorization::of_integer(15)));
    CHECK_THROWS_AS(IdealFactorization::of_integer(0), InvalidArgument);
  }

  TEST_CASE("representation validation") {
    CHECK_THROWS(LocalField(6));
    CHECK_THROWS(SatakeGL2({1.0}, 0));
    const auto e = eisenstein_rep(1.0, Complex(0.0, 0.3), LocalField(5));
    CHECK(e.conductor() == 0);
    CHECK(std::abs(e.params()[0] * e.params()[1] - 1.0) < 1e-15);
  }
}
