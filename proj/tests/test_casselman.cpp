#include <doctest.h>

#include <cmath>

#include "specrec/casselman.hpp"
#include "specrec/errors.hpp"
#include "specrec/hecke.hpp"
#include "specrec/sampling.hpp"

using namespace specrec;

namespace {

double gram_deviation(const SatakeGL2& pi, const LocalField& F, int J) {
  const auto G = gram_matrix(pi, F, J);
  double dev = 0.0;
  for (int a = 0; a <= J; ++a)
    for (int b = 0; b <= J; ++b) dev = std::max(dev, std::abs(G[a][b] - (a == b ? 1.0 : 0.0)));
  return dev;
}

}  // namespace

TEST_SUITE("casselman") {
  TEST_CASE("orthonormal basis: tempered unramified, conductor one and parameterless") {
    Sampler rng(21);
    for (std::int64_t q : {2, 3, 5, 7}) {
      const LocalField F(q);
      for (int i = 0; i < 6; ++i) {
        CHECK(gram_deviation(SatakeGL2::unramified(rng.unit()), F, 4) < 1e-10);
        CHECK(gram_deviation(rng.unramified(q, 7.0 / 64.0), F, 4) < 1e-10);
        CHECK(gram_deviation(rng.conductor_one(), F, 4) < 1e-10);
      }
      for (int cond = 2; cond <= 4; ++cond) CHECK(gram_deviation(SatakeGL2::parameterless(cond), F, 4) < 1e-10);
    }
  }

  TEST_CASE("coefficients vanish below the second subdiagonal") {
    Sampler rng(22);
    const LocalField F(3);
    const auto g = gs_coeffs(rng.unramified(3, 0.1), F, 7);
    for (int j = 0; j <= 7; ++j)
      for (int k = 0; k + 2 < j; ++k) CHECK(g.coeff(j, k) == Complex(0.0));
    CHECK(g.coeff(0, 0) == Complex(1.0));
    CHECK(g.coeff(2, 3) == Complex(0.0));
  }

  TEST_CASE("extended-precision coefficients match the double table") {
    Sampler rng(23);
    for (std::int64_t q : {2, 3, 5}) {
      const LocalField F(q);
      for (const auto& pi : {rng.unramified(q, 0.1), rng.conductor_one(), SatakeGL2::parameterless(3)}) {
        const auto g = gs_coeffs(pi, F, 5);
        const auto e = gs_xi_ext(pi, F, 5);
        for (int j = 0; j <= 5; ++j)
          for (int k = 0; k <= j; ++k) CHECK(std::abs(to_double(e[j][k]) - g.coeff(j, k)) < 1e-13);
      }
    }
  }

  TEST_CASE("alpha_pi on the guard is rejected") {
    // lambda(1) = sqrt(2) (1 + 1/2) makes alpha_pi = 1 at q = 2
    const auto pi = SatakeGL2::from_eigenvalue(std::sqrt(2.0) * 1.5);
    CHECK_THROWS_AS(gs_coeffs(pi, LocalField(2), 2), DegenerateAlpha);
  }

  TEST_CASE("E functions vanish for j >= 2 and E(0,0) = 1") {
    Sampler rng(24);
    for (std::int64_t q : {2, 3, 5}) {
      const LocalField F(q);
      for (int i = 0; i < 5; ++i) {
        const Complex w(rng.uniform(0.41, 0.98), rng.uniform(-5, 5));
        for (int j = 2; j <= 4; ++j)
          for (int k2 = 0; k2 <= j; ++k2) CHECK(std::abs(e_function(F, w, j, k2)) < 1e-9);
        CHECK(e_function(F, w, 0, 0) == Complex(1.0));
      }
    }
  }

  TEST_CASE("S_t recursion against direct sums") {
    Sampler rng(25);
    for (std::int64_t q : {2, 3, 5}) {
      const LocalField F(q);
      const auto pi = rng.unramified(q, 7.0 / 64.0);
      const auto S = s_sequence(pi, F, 5);
      for (int t = 0; t <= 5; ++t)
        CHECK(std::abs(S.values[t] - s_direct(pi, F, t, 4 * S.truncation)) <= 2.0 * S.tail_bound + 1e-12);
    }
    CHECK_THROWS_AS(s_sequence(SatakeGL2::unramified(1.0), LocalField(2), -1), NegativeIndex);
  }
}
