#include "specrec/casselman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specrec/errors.hpp"
#include "specrec/hecke.hpp"

namespace specrec {

Complex gs_alpha(const SatakeGL2& rep, const LocalField& F) {
  const double q = F.qd();
  const int delta = rep.conductor() == 0 ? 1 : 0;
  return gl2_lambda(rep, 1) / (std::sqrt(q) * (1.0 + delta / q));
}

namespace {

// The three-diagonal table shared by both precisions.
template <class C>
std::vector<std::vector<C>> xi_table(C lambda, C alpha, int delta, long double q, int J) {
  using R = typename C::value_type;
  const C one_minus_a2 = C(1) - alpha * alpha;
  if (std::abs(one_minus_a2) < kDegenerateAlphaGuard)
    throw DegenerateAlpha("gs_coeffs: alpha_pi^2 = 1 within guard");
  const C r1 = std::sqrt(one_minus_a2);
  const R qq = static_cast<R>(q);
  const R r2 = std::sqrt(R(1) - static_cast<R>(delta) / (qq * qq));

  std::vector<std::vector<C>> xi(static_cast<std::size_t>(J) + 1);
  for (int j = 0; j <= J; ++j) xi[j].assign(static_cast<std::size_t>(j) + 1, C(0));
  xi[0][0] = C(1);
  if (J >= 1) {
    xi[1][1] = C(1) / r1;
    xi[1][0] = -alpha * std::sqrt(qq) * xi[1][1];
  }
  for (int j = 2; j <= J; ++j) {
    const C diag = C(1) / (r1 * r2);
    xi[j][j] = diag;
    xi[j][j - 1] = -lambda * diag;
    xi[j][j - 2] = static_cast<R>(delta) * diag;
  }
  return xi;
}

}  // namespace

GSData gs_coeffs(const SatakeGL2& rep, const LocalField& F, int J) {
  if (J < 0) throw NegativeIndex("gs_coeffs: negative J");
  GSData g;
  g.delta_pi = rep.conductor() == 0 ? 1 : 0;
  g.lambda = gl2_lambda(rep, 1);
  g.alpha_pi = gs_alpha(rep, F);
  g.norm_W0 = g.delta_pi ? Complex(1.0) : F.zeta(2.0);
  g.J = J;
  g.xi = xi_table<Complex>(g.lambda, g.alpha_pi, g.delta_pi, F.qd(), J);
  return g;
}

std::vector<std::vector<ComplexExt>> gs_xi_ext(const SatakeGL2& rep, const LocalField& F, int J) {
  if (J < 0) throw NegativeIndex("gs_coeffs: negative J");
  const int delta = rep.conductor() == 0 ? 1 : 0;
  const long double q = F.qd();
  const ComplexExt lambda = gl2_lambda_table_ext(rep, 1)[1];
  const ComplexExt alpha = lambda / (std::sqrt(q) * (1.0L + delta / q));
  return xi_table<ComplexExt>(lambda, alpha, delta, q, J);
}

namespace {

constexpr int kMaxSTruncation = 1 << 16;

// Tail of sum_{nu > N} |lambda(nu) lambda(nu + t)| q^{-nu}.
double s_tail(const SatakeGL2& rep, const LocalField& F, int t, int N) {
  const double q = F.qd();
  switch (rep.conductor()) {
    case 0: {
      const double m = rep.max_modulus();
      auto poly = [t](int nu) { return (nu + 1.0) * (nu + t + 1.0); };
      return std::pow(m, t) * poly_geometric_tail(poly, m * m / q, N);
    }
    case 1: {
      const double a = std::abs(rep.params()[0]);
      auto poly = [](int) { return 1.0; };
      return std::pow(a, t) * poly_geometric_tail(poly, a * a / q, N);
    }
    default:
      return 0.0;
  }
}

// L(1, pi x pi) with bilinear parameter products.
Complex rs_self_at_one(const SatakeGL2& rep, const LocalField& F) {
  const auto& p = rep.params();
  Complex denom = 1.0;
  for (const auto& a : p)
    for (const auto& b : p) denom *= 1.0 - a * b / F.qd();
  if (std::abs(denom) < 1e-14) throw PoleAtEvaluationPoint("L(1, pi x pi) has a pole");
  return 1.0 / denom;
}

}  // namespace

Complex s_direct(const SatakeGL2& rep, const LocalField& F, int t, int trunc) {
  if (t < 0) throw NegativeIndex("s_direct: negative t");
  const auto lam = gl2_lambda_table(rep, trunc + t);
  Complex acc = 0.0;
  double qn = 1.0;
  for (int nu = 0; nu <= trunc; ++nu) {
    acc += lam[nu] * lam[nu + t] / qn;
    qn *= F.qd();
  }
  return F.zeta(2.0) / rs_self_at_one(rep, F) * acc;
}

SSequence s_sequence(const SatakeGL2& rep, const LocalField& F, int T, int trunc) {
  if (T < 0) throw NegativeIndex("s_sequence: negative T");
  SSequence out;
  const Complex pref = F.zeta(2.0) / rs_self_at_one(rep, F);
  if (trunc <= 0) {
    trunc = 16;
    while (trunc < kMaxSTruncation && !(std::abs(pref) * s_tail(rep, F, 0, trunc) <= 1e-13)) trunc *= 2;
  }
  out.truncation = trunc;
  out.tail_bound = std::abs(pref) * s_tail(rep, F, 0, trunc);
  if (!(out.tail_bound <= 1e-12))
    throw TruncationInsufficient("s_sequence: S_0 tail bound " + std::to_string(out.tail_bound) +
                                 " exceeds 1e-12 at truncation " + std::to_string(trunc));

  const Complex S0 = s_direct(rep, F, 0, trunc);
  const Complex lambda = gl2_lambda(rep, 1);
  const double delta = rep.conductor() == 0 ? 1.0 : 0.0;
  out.values.assign(static_cast<std::size_t>(T) + 1, 0.0);
  out.values[0] = S0;
  if (T >= 1) out.values[1] = gs_alpha(rep, F) * std::sqrt(F.qd()) * S0;
  for (int t = 2; t <= T; ++t) out.values[t] = lambda * out.values[t - 1] - delta * out.values[t - 2];
  return out;
}

Matrix gram_matrix(const SatakeGL2& rep, const LocalField& F, int J) {
  const GSData g = gs_coeffs(rep, F, J);
  const SSequence S = s_sequence(rep, F, J);
  const double q = F.qd();

  // <W_k, W_l> = q^{-|k-l|/2} S_{|k-l|}
  auto pair = [&](int k, int l) {
    const int t = std::abs(k - l);
    return std::pow(q, -0.5 * t) * S.values[t];
  };

  Matrix G(J + 1, std::vector<Complex>(J + 1, 0.0));
  for (int i = 0; i <= J; ++i) {
    for (int j = 0; j <= J; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k <= i; ++k)
        for (int l = 0; l <= j; ++l)
          acc += g.coeff(i, k) * g.coeff(j, l) * std::pow(q, 0.5 * (k - i)) * std::pow(q, 0.5 * (l - j)) * pair(k, l);
      G[i][j] = acc / g.norm_W0;
    }
  }
  return G;
}

Complex e_function(const LocalField& F, Complex w, int j, int k2) {
  if (j < 0 || k2 < 0) throw NegativeIndex("e_function: negative index");
  if (k2 > j) return 0.0;
  const GSData g = gs_coeffs(degenerate_eisenstein_rep(w, F), F, j);
  const Complex X = qpow(F.qd(), 1.0 - w);
  Complex acc = 0.0, Xk = 1.0;
  for (int k1 = 0; k1 <= j; ++k1) {
    acc += g.coeff(j, k1) * Xk;
    Xk *= X;
  }
  return g.coeff(j, k2) * acc;
}

}  // namespace specrec
