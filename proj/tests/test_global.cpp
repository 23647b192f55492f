#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specrec/errors.hpp"
#include "specrec/global_q.hpp"
#include "specrec/suites.hpp"

using namespace specrec;

namespace {

// tau(1..N) from prod (1 - q^n)^24 with the pentagonal-number series for
// prod (1 - q^n), squared and then raised to the 12th power by repeated
// multiplication. Independent of the library's cube-based generator.
std::vector<Int128> tau_by_pentagonal(int N) {
  std::vector<Int128> eta(static_cast<std::size_t>(N), 0);  // prod (1 - q^n) mod q^N
  for (int k = 0;; ++k) {
    bool any = false;
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn == -1) continue;
      const long e = static_cast<long>(k) * (3L * k - sgn) / 2;
      if (e < N) {
        eta[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
        any = true;
      }
    }
    if (!any) break;
  }
  auto mul = [N](const std::vector<Int128>& a, const std::vector<Int128>& b) {
    std::vector<Int128> c(static_cast<std::size_t>(N), 0);
    for (int i = 0; i < N; ++i)
      if (a[i] != 0)
        for (int j = 0; i + j < N; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  std::vector<Int128> p(static_cast<std::size_t>(N), 0);
  p[0] = 1;
  for (int i = 0; i < 24; ++i) p = mul(p, eta);
  return p;  // tau(n) = p[n - 1]
}

}  // namespace

TEST_SUITE("global") {
  TEST_CASE("tau against the pentagonal-number generator") {
    const int N = 400;
    const auto t = tau_table(N);
    const auto oracle = tau_by_pentagonal(N);
    for (int n = 1; n <= N; ++n) CHECK(t.tau(n) == oracle[static_cast<std::size_t>(n - 1)]);
  }

  TEST_CASE("tau small values and Ramanujan's congruence") {
    const auto t = tau_table(200);
    CHECK(t.tau(1) == 1);
    CHECK(t.tau(2) == -24);
    CHECK(t.tau(3) == 252);
    CHECK(t.tau(4) == -1472);
    CHECK(t.tau(5) == 4830);
    for (int n = 1; n <= 200; ++n) CHECK(static_cast<std::int64_t>(((t.tau(n) % 691) + 691) % 691) == sigma11_mod(n, 691));
    CHECK_THROWS_AS(t.tau(201), InsufficientCache);
  }

  TEST_CASE("tau is multiplicative with the Hecke recursion") {
    const auto t = tau_table(3 * 3 * 3 * 3 * 3 * 7);
    for (int m = 2; m <= 40; ++m)
      for (int n = 2; n <= 40; ++n)
        if (std::gcd(m, n) == 1) CHECK(t.tau(m * n) == t.tau(m) * t.tau(n));
    const Int128 p11 = 177147;  // 3^11
    CHECK(t.tau(9) == t.tau(3) * t.tau(3) - p11);
    CHECK(t.tau(27) == t.tau(3) * t.tau(9) - p11 * t.tau(3));
  }

  TEST_CASE("int128 text round trip") {
    for (Int128 v : {Int128(0), Int128(-24), Int128(1) << 100, -(Int128(1) << 120) + 7})
      CHECK(int128_from_string(int128_to_string(v)) == v);
    CHECK_THROWS_AS(int128_from_string("12x"), ParseError);
  }

  TEST_CASE("tau cache file round trip") {
    const auto t = tau_table(50);
    const std::string path = "tau_roundtrip_test.csv";
    t.save(path);
    CHECK(TauTable::load(path).values() == t.values());
    std::remove(path.c_str());
    CHECK_THROWS_AS(TauTable::load("does/not/exist.csv"), IoError);
  }

  TEST_CASE("Deligne normalization and Satake data") {
    const auto t = tau_table(30);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
      const double l = delta_lambda(p, t);
      CHECK(std::abs(l) <= 2.0);
      const auto s = delta_satake(p, t);
      CHECK(std::abs(std::abs(s.params()[0]) - 1.0) < 1e-12);
      CHECK(std::abs(s.params()[0] + s.params()[1] - l) < 1e-12);
      const auto g = sym2_satake(p, t);
      CHECK(std::abs(g.gammas()[1] - 1.0) < 1e-15);
    }
    CHECK(delta_lambda(2, t) * delta_lambda(2, t) - 1.0 == doctest::Approx(-1472.0 / 2048.0).epsilon(1e-13));
  }

  TEST_CASE("zeta at 2 and against the alternating-series method") {
    CHECK(std::abs(zeta(2.0) - std::numbers::pi * std::numbers::pi / 6.0) < 1e-10);
    CHECK(std::abs(zeta(4.0) - std::pow(std::numbers::pi, 4) / 90.0) < 1e-10);
    for (Complex s : {Complex(1.6, 3.0), Complex(2.5, -7.0), Complex(0.3, 14.1), Complex(-1.5, 0.0)})
      CHECK(std::abs(zeta(s) - zeta_alternating(s)) < 1e-9);
    CHECK(std::abs(zeta(-1.0) + 1.0 / 12.0) < 1e-10);
    CHECK_THROWS_AS(zeta(1.0), PoleAtOne);
  }

  TEST_CASE("completed zeta: symmetry and residue") {
    for (Complex s : {Complex(0.2, 1.0), Complex(0.7, -9.0), Complex(0.5, 21.0), Complex(2.0, 0.0)})
      CHECK(std::abs(xi_completed(s) - xi_completed(1.0 - s)) < 1e-9);
    CHECK(std::abs(xi_residue_at_one() - 1.0) < 1e-6);
    CHECK(std::abs(xi_completed(2.0) - std::numbers::pi / 6.0) < 1e-10);
  }

  TEST_CASE("Gamma function basics") {
    CHECK(std::abs(complex_gamma(5.0) - 24.0) < 1e-11);
    CHECK(std::abs(complex_gamma(0.5) - std::sqrt(std::numbers::pi)) < 1e-13);
    const Complex z(0.3, 2.0);
    CHECK(std::abs(complex_gamma(z + 1.0) - z * complex_gamma(z)) < 1e-12);
  }

  TEST_CASE("truncated Euler product for the symmetric square") {
    const auto t = tau_table(200);
    const auto r = truncated_L_gl3(t, 3.0, 199);
    CHECK(r.certified);
    CHECK(r.trace.back().first == 199);
    // the p = 2 factor alone
    const auto r2 = truncated_L_gl3(t, 3.0, 2);
    const auto g = sym2_satake(2, t).gammas();
    Complex local = 1.0;
    for (const auto& x : g) local /= 1.0 - x * std::pow(2.0, -3.0);
    CHECK(std::abs(r2.value - local) < 1e-14);
    CHECK_FALSE(truncated_L_gl3(t, 1.0, 100).certified);
  }
}
