#include "specrec/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <limits>
#include <numbers>
#include <string>

#include "specrec/casselman.hpp"
#include "specrec/errors.hpp"
#include "specrec/series.hpp"

namespace specrec {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

}  // namespace

namespace {

constexpr int kStartTruncation = 16;
constexpr int kMaxTruncation = 4096;
// Order of the continued series; the numerator has degree <= kNumeratorDegree.
constexpr int kContinuedOrder = 28;
constexpr int kNumeratorDegree = 12;

// Growth data of |lambda_pi(nu)| <= poly(nu) rho^nu.
struct Gl2Growth {
  int conductor;
  double rho;

  double poly(int nu) const { return conductor == 0 ? nu + 1.0 : 1.0; }
  bool finite() const { return conductor >= 2 || rho == 0.0; }
};

Gl2Growth gl2_growth(const SatakeGL2& pi) {
  if (pi.conductor() >= 2) return {pi.conductor(), 0.0};
  if (pi.conductor() == 1) return {1, std::abs(pi.params()[0])};
  return {0, pi.max_modulus()};
}

std::vector<ComplexExt> pi_eigenvalues(const SatakeGL2& pi, int N, Conjugation conj) {
  auto lam = gl2_lambda_table_ext(pi, N);
  if (conj == Conjugation::Conjugate)
    for (auto& v : lam) v = std::conj(v);
  return lam;
}

std::vector<ComplexExt> ext_params(const std::vector<Complex>& p) {
  std::vector<ComplexExt> out;
  for (const auto& a : p) out.push_back(to_ext(a));
  return out;
}

// prod (1 - c x) over the given parameters
ComplexExt inverse_factor(const std::vector<ComplexExt>& params, ComplexExt x) {
  ComplexExt r = 1.0L;
  for (const auto& c : params) r *= 1.0L - c * x;
  return r;
}

std::vector<ComplexExt> rs_parameters_ext(const SatakeGL3& Pi, const std::vector<Complex>& pparams) {
  std::vector<ComplexExt> out;
  for (const auto& g : Pi.gammas())
    for (const auto& a : pparams) out.push_back(to_ext(g) * to_ext(a));
  return out;
}

// `weighted` is a sum of term majorants, each scaled by term_rounding_weight,
// for arithmetic done in extended precision. Summation is compensated; the
// last term covers conversion of the result back to double.
double rounding_allowance(double weighted, Complex result) {
  return kEpsExt * (weighted + 8.0 * std::abs(result)) + kEps * std::abs(result);
}

// The nu-double sum of the collapsed formula,
//   T = sum_{nu1} sum_{nu2 <= N} lambda_Pi(nu2 + k2, nu1 + d1) lt(nu2) x^{2 nu1 + nu2},
// with nu1 = 0 only, or 0 <= nu1 <= N when all_nu1.
struct PartialSum {
  ComplexExt value;
  double tail;       // bound on the omitted part
  double magnitude;  // sum of weighted term majorants (for rounding)
};

PartialSum collapsed_nu_sum(const Gl3EigenvalueTable& table, double M, const std::vector<ComplexExt>& lt,
                            const Gl2Growth& growth, ComplexExt x, int k2, int d1, bool all_nu1, int N,
                            int extra_depth) {
  const double r = static_cast<double>(std::abs(x));
  const ComplexExt x2 = x * x;
  PartialSum out{0.0L, 0.0, 0.0};
  const int nu1_max = all_nu1 ? N : 0;
  ComplexExt x2pow = 1.0L;
  double r2pow = 1.0;
  CompensatedSumExt outer;
  for (int nu1 = 0; nu1 <= nu1_max; ++nu1) {
    CompensatedSumExt inner;
    ComplexExt xp = 1.0L;
    double inner_mag = 0.0, rp = 1.0;
    for (int nu2 = 0; nu2 <= N; ++nu2) {
      if (lt[nu2] != 0.0L) {
        inner.add(table.lambda_ext(nu2 + k2, nu1 + d1) * lt[nu2] * xp);
        inner_mag += table.magnitude(nu2 + k2, nu1 + d1) * static_cast<double>(std::abs(lt[nu2])) * rp *
                     term_rounding_weight(2 * (nu1 + d1) + k2 + 2 * nu2 + nu1 + extra_depth);
      }
      xp *= x;
      rp *= r;
    }
    outer.add(inner.value() * x2pow);
    out.magnitude += inner_mag * r2pow;
    x2pow *= x2;
    r2pow *= r * r;
  }
  out.value = outer.value();

  // separable majorant f1(nu1) f2(nu2) of the terms
  auto f1_poly = [d1](int v) { return (v + d1 + 1.0) * (v + d1 + 1.0); };
  auto f2_poly = [k2, &growth](int v) { return (v + k2 + 1.0) * (v + k2 + 1.0) * growth.poly(v); };
  const double rho1 = M * r * r;
  const double rho2 = M * growth.rho * r;
  const double c1 = std::pow(M, d1), c2 = std::pow(M, k2);

  double tail2 = 0.0, full2 = 0.0;
  if (growth.finite()) {
    tail2 = 0.0;
    full2 = f2_poly(0);
  } else {
    tail2 = c2 * poly_geometric_tail(f2_poly, rho2, N);
    full2 = c2 * poly_geometric_full(f2_poly, rho2, N);
  }
  if (all_nu1) {
    const double tail1 = c1 * poly_geometric_tail(f1_poly, rho1, N);
    double part1 = 0.0, rp = 1.0;
    for (int v = 0; v <= N; ++v, rp *= rho1) part1 += c1 * f1_poly(v) * rp;
    out.tail = tail1 * full2 + part1 * tail2;
  } else {
    out.tail = c1 * f1_poly(0) * tail2;
  }
  return out;
}

struct CollapsedTerm {
  int d1, d2, j, k2;
  ComplexExt coeff;  // everything multiplying T, including the 1/<W0,W0> prefactor
  double coeff_mag;  // majorant of the products building coeff
  int depth;         // rounding depth of coeff
};

std::vector<CollapsedTerm> collapsed_terms(const SatakeGL2& pi, const LocalField& F, int n, int n0,
                                           const EvalPoint& pt) {
  const double q = F.qd();
  const long double ql = q;
  const auto xi = gs_xi_ext(pi, F, n - n0);
  const long double norm_W0 = pi.conductor() == 0 ? 1.0L : 1.0L / (1.0L - 1.0L / (ql * ql));
  const ComplexExt x = qpow_ext(q, -pt.s);
  const ComplexExt us = qpow_ext(q, 1.0 - pt.s), uw = qpow_ext(q, 1.0 - pt.w);
  std::vector<CollapsedTerm> terms;
  for (int d2 = 0; d2 <= n; ++d2) {
    const int d1 = n - d2;
    const long double vol = d2 == 0 ? 1.0L : 1.0L / (std::pow(ql, d2 - 1) * (ql + 1.0L));
    for (int j = 0; j <= d2 - n0; ++j) {
      ComplexExt a_j = 0.0L, up = 1.0L;
      double a_mag = 0.0;
      for (int k1 = 0; k1 <= j; ++k1, up *= uw) {
        a_j += xi[j][k1] * up;
        a_mag += static_cast<double>(std::abs(xi[j][k1] * up));
      }
      ComplexExt vp = 1.0L;
      for (int k2 = 0; k2 <= j; ++k2, vp *= us) {
        const ComplexExt pre = vol * std::pow(ql, -j) * std::pow(x, 2 * d1) / norm_W0;
        const ComplexExt c = pre * a_j * xi[j][k2] * vp;
        const double cm = static_cast<double>(std::abs(pre * xi[j][k2] * vp)) * a_mag;
        terms.push_back({d1, d2, j, k2, c, cm, 2 * d1 + 2 * j + 8});
      }
    }
  }
  return terms;
}

WeightValue collapsed_truncated(const SatakeGL3& Pi, const SatakeGL2& pi, const LocalField& F, int n,
                                const EvalPoint& pt, double tol, Conjugation conj,
                                const std::vector<CollapsedTerm>& terms) {
  const ComplexExt x = qpow_ext(F.qd(), -pt.s);
  const double M = Pi.max_modulus();
  const auto growth = gl2_growth(pi);
  const ComplexExt inv_L = inverse_factor(rs_parameters_ext(Pi, pi.params()), x);
  const double inv_L_abs = static_cast<double>(std::abs(inv_L));

  for (int N = kStartTruncation;; N *= 2) {
    Gl3EigenvalueTable table(Pi, 2 * N + 2 * n + 2);
    const auto lt = pi_eigenvalues(pi, N, conj);
    CompensatedSumExt acc;
    double tail = 0.0, mag = 0.0;
    for (const auto& t : terms) {
      const auto T = collapsed_nu_sum(table, M, lt, growth, x, t.k2, t.d1, t.d2 == 0, N, t.depth);
      if (!std::isfinite(T.magnitude)) {
        tail = T.magnitude;
        break;
      }
      acc.add(t.coeff * T.value);
      tail += t.coeff_mag * T.tail;
      mag += t.coeff_mag * T.magnitude;
    }
    const Complex total = to_double(acc.value() * inv_L);
    tail *= inv_L_abs;
    const double bound = tail + rounding_allowance(mag * inv_L_abs, total);
    if (bound <= tol) return {total, bound, N};
    if (std::isfinite(tail) && tail < 1e-3 * tol)
      throw TruncationInsufficient("h_divides_q: rounding allowance " + sci(bound) + " exceeds tol " +
                                   sci(tol) + "; more terms cannot help");
    if (N >= kMaxTruncation || !std::isfinite(tail))
      throw TruncationInsufficient("h_divides_q: tail bound " + sci(bound) + " above tol " +
                                   sci(tol) + " at truncation " + std::to_string(N) +
                                   (std::isfinite(tail) ? "" : " (series does not converge; use the continued method)"));
  }
}

// Coefficients of T(x) = sum_{2 nu1 + nu2 = e} lambda_Pi(nu2 + k2, nu1 + d1) lt(nu2) up to order K,
// and the same with every factor replaced by its majorant.
void collapsed_series(const Gl3EigenvalueTable& table, const std::vector<ComplexExt>& lt, int k2, int d1,
                      bool all_nu1, int K, std::vector<ComplexExt>& coef, std::vector<double>& mag) {
  coef.assign(static_cast<std::size_t>(K) + 1, 0.0L);
  mag.assign(static_cast<std::size_t>(K) + 1, 0.0);
  for (int e = 0; e <= K; ++e) {
    for (int nu1 = 0; 2 * nu1 <= e && (all_nu1 || nu1 == 0); ++nu1) {
      const int nu2 = e - 2 * nu1;
      coef[e] += table.lambda_ext(nu2 + k2, nu1 + d1) * lt[nu2];
      mag[e] += table.magnitude(nu2 + k2, nu1 + d1) * static_cast<double>(std::abs(lt[nu2]));
    }
  }
}

WeightValue collapsed_continued(const SatakeGL3& Pi, const SatakeGL2& pi, const LocalField& F, int n,
                                const EvalPoint& pt, Conjugation conj, const std::vector<CollapsedTerm>& terms) {
  const int K = kContinuedOrder;
  const auto Ks = static_cast<std::size_t>(K);
  const ComplexExt x = qpow_ext(F.qd(), -pt.s);
  Gl3EigenvalueTable table(Pi, K + 2 * n + 2);
  const auto lt = pi_eigenvalues(pi, K, conj);

  // 1/L(s, Pi x pi) and prod (1 - gamma_i^{-1} x^2) as polynomials in x
  // the series runs over conj(lambda_pi) in the conjugate convention, whose
  // generating function has the conjugate parameters
  std::vector<Complex> pparams = pi.params();
  if (conj == Conjugation::Conjugate)
    for (auto& a : pparams) a = std::conj(a);
  const auto rs = rs_parameters_ext(Pi, pparams);
  const auto D1 = product_one_minus<ComplexExt>(rs, Ks);
  std::vector<ComplexExt> d2poly(Ks + 1, 0.0L);
  d2poly[0] = 1.0L;
  for (const auto& g : Pi.gammas()) {
    const ComplexExt ginv = 1.0L / to_ext(g);
    for (std::size_t e = Ks; e >= 2; --e) d2poly[e] -= d2poly[e - 2] * ginv;
  }
  const TruncSeries<ComplexExt> D2(d2poly);
  std::vector<double> d1abs(Ks + 1), d2abs(Ks + 1);
  {
    std::vector<Complex> absroots;
    for (const auto& c : rs) absroots.push_back(-static_cast<double>(std::abs(c)));
    const auto D1m = product_one_minus<Complex>(absroots, Ks);
    std::vector<double> m2(Ks + 1, 0.0);
    m2[0] = 1.0;
    for (const auto& g : Pi.gammas())
      for (std::size_t e = Ks; e >= 2; --e) m2[e] += m2[e - 2] / std::abs(g);
    for (std::size_t e = 0; e <= Ks; ++e) {
      d1abs[e] = std::abs(D1m[e]);
      d2abs[e] = m2[e];
    }
  }

  const ComplexExt D2x = D2.evaluate(x);
  if (std::abs(D2x) < 1e-12L) throw PoleAtEvaluationPoint("h_divides_q: continued denominator vanishes");
  const double D2x_abs = static_cast<double>(std::abs(D2x));

  CompensatedSumExt acc;
  double err = 0.0;
  std::vector<ComplexExt> coef;
  std::vector<double> mag;
  for (const auto& t : terms) {
    const bool all_nu1 = t.d2 == 0;
    collapsed_series(table, lt, t.k2, t.d1, all_nu1, K, coef, mag);
    auto P = TruncSeries<ComplexExt>(coef) * D1;
    if (all_nu1) P = P * D2;
    // majorant of the coefficients of P
    std::vector<double> pm(Ks + 1, 0.0);
    for (std::size_t a = 0; a <= Ks; ++a)
      for (std::size_t b = 0; a + b <= Ks; ++b) pm[a + b] += mag[a] * d1abs[b];
    if (all_nu1) {
      std::vector<double> pm2(Ks + 1, 0.0);
      for (std::size_t a = 0; a <= Ks; ++a)
        for (std::size_t b = 0; a + b <= Ks; ++b) pm2[a + b] += pm[a] * d2abs[b];
      pm = pm2;
    }
    for (int e = kNumeratorDegree + 1; e <= K; ++e) {
      if (static_cast<double>(std::abs(P[e])) > 1e-12 * pm[e] + 1e-300)
        throw ContinuationFailure("h_divides_q: numerator coefficient x^" + std::to_string(e) + " does not vanish (" +
                                  sci(static_cast<double>(std::abs(P[e]))) + ")");
    }
    ComplexExt val = 0.0L, xp = 1.0L;
    double rnd = 0.0, rp = 1.0;
    const double r = static_cast<double>(std::abs(x));
    for (int e = 0; e <= kNumeratorDegree; ++e) {
      val += P[e] * xp;
      rnd += pm[e] * rp;
      xp *= x;
      rp *= r;
    }
    if (all_nu1) {
      val /= D2x;
      rnd /= D2x_abs;
    }
    acc.add(t.coeff * val);
    err += t.coeff_mag * rnd * term_rounding_weight(3 * K + t.depth);
  }
  ComplexExt total = acc.value();
  // P carries the denominator of the summed series; the formula wants 1/L(s, Pi x pi)
  const ComplexExt inv_L = inverse_factor(rs_parameters_ext(Pi, pi.params()), x);
  if (conj == Conjugation::Conjugate) {
    const ComplexExt series_den = TruncSeries<ComplexExt>(D1).evaluate(x);
    if (std::abs(series_den) < 1e-12L) throw PoleAtEvaluationPoint("h_divides_q: conjugate series has a pole");
    const ComplexExt ratio = inv_L / series_den;
    total *= ratio;
    err *= static_cast<double>(std::abs(ratio));
  }
  const Complex value = to_double(total);
  return {value, rounding_allowance(err, value), K};
}

}  // namespace

double congruence_volume(const LocalField& F, int f) {
  if (f < 0) throw NegativeIndex("congruence_volume: negative level");
  if (f == 0) return 1.0;
  return 1.0 / (ipow(F.qd(), f - 1) * (F.qd() + 1.0));
}

Complex h_unramified() { return 1.0; }

Complex h_archimedean(bool spherical) { return spherical ? 1.0 : 0.0; }

Complex h_divides_l(const SatakeGL2& pi, const LocalField& F, int m, Complex w) {
  if (m < 1) throw InvalidArgument("h_divides_l: exponent must be >= 1");
  if (pi.conductor() != 0) return 0.0;
  const Complex y = qpow(F.qd(), -w);
  return std::pow(y, m) * (gl2_lambda(pi, m) - gl2_lambda(pi, m - 1) * y);
}

WeightValue h_divides_q(const SatakeGL3& Pi, const SatakeGL2& pi, const LocalField& F, int n,
                        const EvalPoint& pt, double tol, Conjugation conj, SumMethod method) {
  if (n < 1) throw InvalidArgument("h_divides_q: exponent must be >= 1");
  const int n0 = pi.conductor();
  if (n0 > n) return {0.0, 0.0, 0};  // empty j-range for every d2
  const auto terms = collapsed_terms(pi, F, n, n0, pt);
  if (method == SumMethod::Continued) return collapsed_continued(Pi, pi, F, n, pt, conj, terms);
  return collapsed_truncated(Pi, pi, F, n, pt, tol, conj, terms);
}

WeightValue h_divides_q_oracle(const SatakeGL3& Pi, const SatakeGL2& pi, const LocalField& F, int n,
                               const EvalPoint& pt, double tol, Conjugation conj) {
  if (n < 1) throw InvalidArgument("h_divides_q_oracle: exponent must be >= 1");
  const int n0 = pi.conductor();
  if (n0 > n) return {0.0, 0.0, 0};
  const double q = F.qd();
  const long double ql = q;
  const auto xi = gs_xi_ext(pi, F, n - n0);
  const ComplexExt x = qpow_ext(q, -pt.s);
  const ComplexExt y = qpow_ext(q, -pt.w);
  const double r = static_cast<double>(std::abs(x)), ry = static_cast<double>(std::abs(y));
  const double M = Pi.max_modulus();
  const auto growth = gl2_growth(pi);
  const ComplexExt pref =
      inverse_factor(rs_parameters_ext(Pi, pi.params()), x) * inverse_factor(ext_params(pi.params()), y);
  const double pref_abs = static_cast<double>(std::abs(pref));
  const long double inv_sqrt_norm = pi.conductor() == 0 ? 1.0L : std::sqrt(1.0L - 1.0L / (ql * ql));

  for (int N = kStartTruncation;; N *= 2) {
    const int Nmax = N + n + 1;
    Gl3EigenvalueTable table(Pi, 2 * Nmax + 2);
    const auto lam = gl2_lambda_table_ext(pi, Nmax);

    CompensatedSumExt acc;
    double tail = 0.0, mag = 0.0;
    for (int d2 = 0; d2 <= n; ++d2) {
      const int d1 = n - d2;
      const double vol = congruence_volume(F, d2);
      const long double vol_ext = d2 == 0 ? 1.0L : 1.0L / (std::pow(ql, d2 - 1) * (ql + 1.0L));
      for (int j = 0; j <= d2 - n0; ++j) {
        // eigenvalues of the j-th orthonormal vector
        std::vector<ComplexExt> lj(static_cast<std::size_t>(Nmax) + 1, 0.0L);
        std::vector<ComplexExt> ljt(static_cast<std::size_t>(Nmax) + 1, 0.0L);
        std::vector<double> ljm(static_cast<std::size_t>(Nmax) + 1, 0.0);
        for (int nu = 0; nu <= Nmax; ++nu)
          for (int k = 0; k <= std::min(j, nu); ++k) {
            const ComplexExt c = inv_sqrt_norm * xi[j][k] * std::pow(ql, k - 0.5L * j);
            lj[nu] += c * lam[nu - k];
            ljt[nu] += c * (conj == Conjugation::Conjugate ? std::conj(lam[nu - k]) : lam[nu - k]);
            ljm[nu] += static_cast<double>(std::abs(c * lam[nu - k]));
          }
        // |lambda_{pi,j}(nu)| <= cj poly(nu) rho^nu
        double cj = 0.0;
        for (int k = 0; k <= j; ++k) {
          const double rk = growth.rho > 0.0 ? std::pow(growth.rho, -k) : 1.0;
          cj += static_cast<double>(inv_sqrt_norm * std::abs(xi[j][k])) * std::pow(q, k - 0.5 * j) * rk;
        }

        // mu-sum
        CompensatedSumExt Csum;
        ComplexExt yp = 1.0L;
        double cmag = 0.0, ryp = 1.0;
        for (int mu = 0; mu <= N; ++mu, yp *= y, ryp *= ry) {
          Csum.add(lj[mu] * yp);
          cmag += ljm[mu] * ryp * term_rounding_weight(2 * mu + j + 8);
        }
        const ComplexExt C = Csum.value();
        const double C_abs = static_cast<double>(std::abs(C));
        double tC = 0.0;
        if (!growth.finite())
          tC = cj * poly_geometric_tail([&](int v) { return growth.poly(v); }, growth.rho * ry, N);

        // (nu1, nu2)-sum, nu1 = d1 when d1 < n and nu1 >= n when d1 = n
        const int nu1_lo = d1;
        const int nu1_hi = d1 < n ? d1 : n + N;
        CompensatedSumExt Bsum;
        double bmag = 0.0;
        for (int nu1 = nu1_lo; nu1 <= nu1_hi; ++nu1) {
          const ComplexExt x2 = std::pow(x, 2 * nu1);
          const double rx2 = std::pow(r, 2 * nu1);
          CompensatedSumExt inner;
          ComplexExt xp = 1.0L;
          double rp = 1.0;
          for (int nu2 = 0; nu2 <= N; ++nu2, xp *= x, rp *= r) {
            inner.add(table.lambda_ext(nu2, nu1) * ljt[nu2] * xp);
            bmag += table.magnitude(nu2, nu1) * ljm[nu2] * rp * rx2 *
                    term_rounding_weight(3 * nu1 + 3 * nu2 + j + 8);
          }
          Bsum.add(inner.value() * x2);
        }
        const ComplexExt B = Bsum.value();
        const double B_abs = static_cast<double>(std::abs(B));
        auto f1_poly = [](int v) { return (v + 1.0) * (v + 1.0); };
        auto f2_poly = [&](int v) { return (v + 1.0) * (v + 1.0) * growth.poly(v); };
        const double rho1 = M * r * r;
        const double rho2 = M * growth.rho * r;
        double tail2 = 0.0, full2 = 0.0;
        if (growth.finite()) {
          // lambda_{pi,j}(nu) vanishes for nu > j
          tail2 = 0.0;
          for (int v = 0; v <= std::min(j, N); ++v) full2 += (v + 1.0) * (v + 1.0) * std::pow(M * r, v) * ljm[v];
        } else {
          tail2 = cj * poly_geometric_tail(f2_poly, rho2, N);
          full2 = cj * poly_geometric_full(f2_poly, rho2, N);
        }
        double tB = 0.0;
        if (d1 < n) {
          tB = f1_poly(d1) * std::pow(rho1, d1) * tail2;
        } else {
          double part1 = 0.0;
          for (int v = nu1_lo; v <= nu1_hi; ++v) part1 += f1_poly(v) * std::pow(rho1, v);
          tB = poly_geometric_tail(f1_poly, rho1, nu1_hi) * full2 + part1 * tail2;
        }

        acc.add(vol_ext * B * C);
        tail += vol * (tB * (C_abs + tC) + B_abs * tC);
        mag += vol * (bmag * (C_abs + tC) + (B_abs + tB) * cmag);
      }
    }
    const Complex total = to_double(acc.value() * pref);
    tail *= pref_abs;
    const double bound = tail + rounding_allowance(mag * pref_abs, total);
    if (bound <= tol) return {total, bound, N};
    if (std::isfinite(tail) && tail < 1e-3 * tol)
      throw TruncationInsufficient("h_divides_q_oracle: rounding allowance " + sci(bound) +
                                   " exceeds tol; more terms cannot help");
    if (N >= kMaxTruncation || !std::isfinite(tail) || !std::isfinite(mag))
      throw TruncationInsufficient("h_divides_q_oracle: tail bound " + sci(bound) +
                                   " above tol at truncation " + std::to_string(N));
  }
}

WeightValue d_weight(const SatakeGL3& Pi, const LocalField& F, DegenerateRole role, int exponent,
                     const EvalPoint& pt, double tol, CircleGuard guard) {
  if (!pt.in_holomorphy_region())
    throw RegionViolation("d_weight: needs 1/2 <= Re s and Re w < 1");
  if (exponent < 0) throw InvalidArgument("d_weight: negative exponent");
  if (exponent == 0) return {h_unramified(), 0.0, 0};
  if (role == DegenerateRole::DividesL)
    return {h_divides_l(degenerate_eisenstein_rep(pt.w, F), F, exponent, pt.w), 0.0, 0};

  auto at = [&](Complex w) {
    return h_divides_q(Pi, degenerate_eisenstein_rep(w, F), F, exponent, {pt.s, w}, tol, Conjugation::Plain,
                       SumMethod::Continued);
  };
  auto near_pole = [&](Complex w) {
    const Complex a = gs_alpha(degenerate_eisenstein_rep(w, F), F);
    return std::abs(1.0 - a * a) < guard.trigger;
  };
  if (!near_pole(pt.w)) return at(pt.w);

  // removable singularity: the value at the center is the mean over a circle
  double radius = guard.radius;
  for (int attempt = 0; attempt < 8; ++attempt, radius *= 1.5) {
    bool clear = true;
    std::vector<Complex> nodes;
    for (int k = 0; k < guard.nodes; ++k) {
      const Complex w = pt.w + radius * std::polar(1.0, 2.0 * std::numbers::pi * k / guard.nodes);
      if (near_pole(w)) {
        clear = false;
        break;
      }
      nodes.push_back(w);
    }
    if (!clear) continue;
    Complex mean = 0.0, half = 0.0;
    double bound = 0.0;
    for (int k = 0; k < guard.nodes; ++k) {
      const auto v = at(nodes[k]);
      mean += v.value;
      if (k % 2 == 0) half += v.value;
      bound += v.tail_bound;
    }
    mean /= static_cast<double>(guard.nodes);
    half /= static_cast<double>(guard.nodes / 2);
    // the half-node rule has the larger error; its distance bounds ours
    return {mean, bound / guard.nodes + std::abs(mean - half), kContinuedOrder};
  }
  throw DegenerateAlpha("d_weight: could not place a clear circle around w");
}

namespace {

struct Accumulator {
  Complex value = 1.0;
  double with_err = 1.0;  // prod (|v_i| + t_i)
  double without = 1.0;   // prod |v_i|

  void mul(const WeightValue& v) {
    value *= v.value;
    with_err *= std::abs(v.value) + v.tail_bound;
    without *= std::abs(v.value);
  }
  double bound() const { return std::max(0.0, with_err - without); }
};

}  // namespace

GlobalWeight h_global(const Gl3Provider& Pi, const PiData& pi, const IdealFactorization& q,
                      const IdealFactorization& l, const EvalPoint& pt, double tol, Conjugation conj) {
  if (!q.coprime_to(l)) throw CoprimalityViolation("h_global: q and l must be coprime");
  GlobalWeight out;
  const std::size_t places = q.exponents().size() + 1;
  const double local_tol = tol / static_cast<double>(places);

  Accumulator acc_q, acc_l;
  for (const auto& [place, n] : q.exponents()) {
    auto it = pi.local.find(place);
    if (it == pi.local.end()) throw MissingLocalRep("h_global: no representation at q=" + std::to_string(place.q()));
    const auto v = h_divides_q(Pi(place), it->second, place.field, n, pt, local_tol, conj);
    acc_q.mul(v);
    out.local_values[place.q()] = v.value;
  }
  for (const auto& [place, m] : l.exponents()) {
    auto it = pi.local.find(place);
    if (it == pi.local.end()) throw MissingLocalRep("h_global: no representation at q=" + std::to_string(place.q()));
    const WeightValue v{h_divides_l(it->second, place.field, m, pt.w), 0.0, 0};
    acc_l.mul(v);
    out.local_values[place.q()] = v.value;
  }

  out.phi_factor = q.euler_phi() / (q.norm() * q.norm());
  out.h_q = acc_q.value / out.phi_factor;
  out.l_factor = acc_l.value;
  out.archimedean = h_archimedean(pi.archimedean_spherical);

  Accumulator all;
  all.mul({acc_q.value, acc_q.bound(), 0});
  all.mul({acc_l.value, acc_l.bound(), 0});
  all.mul({out.archimedean, 0.0, 0});
  out.total = {all.value, all.bound(), 0};
  return out;
}

GlobalWeight h_global_transformed(const Gl3Provider& Pi, const PiData& pi, const IdealFactorization& q,
                                  const IdealFactorization& l, const EvalPoint& pt, double tol, Conjugation conj) {
  return h_global(Pi, pi, l, q, pt.dual(), tol, conj);
}

}  // namespace specrec
