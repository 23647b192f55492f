#include "specrec/global_q.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include "specrec/errors.hpp"
#include "specrec/hecke.hpp"

namespace specrec {

std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string out;
  // work with negative values so the minimum is representable
  Int128 x = neg ? v : -v;
  while (x != 0) {
    out.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Int128 int128_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer");
  std::size_t i = 0;
  const bool neg = s[0] == '-';
  if (neg || s[0] == '+') i = 1;
  if (i == s.size()) throw ParseError("malformed integer '" + s + "'");
  Int128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("malformed integer '" + s + "'");
    Int128 next;
    if (__builtin_mul_overflow(v, Int128(10), &next) || __builtin_sub_overflow(next, Int128(s[i] - '0'), &next))
      throw ParseError("integer out of range '" + s + "'");
    v = next;  // accumulated as a non-positive number
  }
  if (!neg) {
    if (v == -v && v != 0) throw ParseError("integer out of range '" + s + "'");
    v = -v;
  }
  return v;
}

TauTable::TauTable(std::vector<Int128> values) : values_(std::move(values)) {}

Int128 TauTable::tau(int n) const {
  if (n < 1) throw InvalidArgument("tau: n must be >= 1");
  if (n > size())
    throw InsufficientCache("tau: table holds " + std::to_string(size()) + " values, need " + std::to_string(n));
  return values_[n - 1];
}

void TauTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write tau cache " + path);
  for (int n = 1; n <= size(); ++n) out << n << ',' << int128_to_string(values_[n - 1]) << '\n';
  if (!out) throw IoError("write failed for tau cache " + path);
}

TauTable TauTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read tau cache " + path);
  std::vector<Int128> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("tau cache line " + std::to_string(lineno) + ": missing comma");
    const int n = std::stoi(line.substr(0, comma));
    if (n != static_cast<int>(values.size()) + 1)
      throw ParseError("tau cache line " + std::to_string(lineno) + ": expected n=" + std::to_string(values.size() + 1));
    values.push_back(int128_from_string(line.substr(comma + 1)));
  }
  return TauTable(std::move(values));
}

TauTable tau_table(int N) {
  if (N < 1) throw InvalidArgument("tau_table: N must be >= 1");
  // q prod (1 - q^k)^24 = q (sum_k (-1)^k (2k+1) q^{k(k+1)/2})^8 (Jacobi), so
  // tau(n) is the coefficient of q^{n-1} in the eighth power of a sparse series
  const int M = N - 1;
  std::vector<std::pair<int, Int128>> cube;
  for (long k = 0; k * (k + 1) / 2 <= M; ++k)
    cube.emplace_back(static_cast<int>(k * (k + 1) / 2), (k % 2 == 0 ? 1 : -1) * (2 * k + 1));

  std::vector<Int128> acc(static_cast<std::size_t>(M) + 1, 0);
  for (const auto& [e, c] : cube) acc[e] = c;
  for (int round = 1; round < 8; ++round) {
    std::vector<Int128> next(acc.size(), 0);
    for (int n = 0; n <= M; ++n) {
      Int128 sum = 0;
      for (const auto& [e, c] : cube) {
        if (e > n) break;
        Int128 t;
        if (__builtin_mul_overflow(acc[n - e], c, &t) || __builtin_add_overflow(sum, t, &sum))
          throw EvaluationFailure("tau_table: 128-bit overflow; N too large");
      }
      next[n] = sum;
    }
    acc = std::move(next);
  }
  return TauTable(std::move(acc));
}

double delta_lambda(std::int64_t p, const TauTable& t) {
  if (!is_prime(p)) throw InvalidArgument("delta_lambda: p must be prime");
  return static_cast<double>(t.tau(static_cast<int>(p))) / std::pow(static_cast<double>(p), 5.5);
}

SatakeGL2 delta_satake(std::int64_t p, const TauTable& t) {
  const double lam = delta_lambda(p, t);
  if (std::abs(lam) > 2.0) throw DeligneViolation("delta_satake: |tau(p)| exceeds 2 p^{11/2} at p=" + std::to_string(p));
  const Complex alpha(lam / 2.0, std::sqrt(std::max(0.0, 1.0 - lam * lam / 4.0)));
  return SatakeGL2({alpha, std::conj(alpha)}, 0);
}

SatakeGL3 sym2_satake(std::int64_t p, const TauTable& t) {
  const Complex a = delta_satake(p, t).params()[0];
  return SatakeGL3({a * a, 1.0, 1.0 / (a * a)}, 0.0);
}

Complex complex_gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleAtEvaluationPoint("complex_gamma: pole at a non-positive integer");
  gsl_sf_result lnr, arg;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  const int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) throw EvaluationFailure("complex_gamma: evaluation failed");
  return std::polar(std::exp(lnr.val), arg.val);
}

Complex gamma_R(Complex s) { return std::pow(Complex(std::numbers::pi), -s / 2.0) * complex_gamma(s / 2.0); }

Complex zeta(Complex s) {
  if (std::abs(s - 1.0) < 1e-15) throw PoleAtOne("zeta: pole at s=1");
  constexpr int K = 20;
  const int N = 20 + static_cast<int>(std::ceil(std::abs(s.imag()) + std::max(0.0, -s.real())));
  Complex acc = 0.0;
  for (int n = 1; n < N; ++n) acc += std::pow(static_cast<double>(n), -s);
  const double Nd = N;
  const Complex Ns = std::pow(Nd, -s);
  acc += Nd * Ns / (s - 1.0) + 0.5 * Ns;
  // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  Complex rising = s;  // s(s+1)...(s+2k-2) for k = 1
  Complex npow = Ns / Nd;
  for (int k = 1; k <= K; ++k) {
    const double coeff = boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(2 * k);
    acc += coeff * rising * npow;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    npow /= Nd * Nd;
  }
  return acc;
}

Complex xi_completed(Complex s) {
  if (std::abs(s) < 1e-15 || std::abs(s - 1.0) < 1e-15) throw PoleAtZeroOrOne("xi: pole at s=0 or s=1");
  return gamma_R(s) * zeta(s);
}

double xi_residue_at_one() {
  const double h = 1e-4;
  // (s-1) xi(s) is even about s = 1 to first order after symmetrizing
  const Complex up = h * xi_completed(1.0 + h);
  const Complex down = -h * xi_completed(1.0 - h);
  return (0.5 * (up + down)).real();
}

Complex sym2_gamma_factor(Complex s) { return gamma_R(s + 1.0) * gamma_R(s + 11.0) * gamma_R(s + 12.0); }

TruncatedLReport truncated_L_gl3(const TauTable& t, Complex s, std::int64_t P) {
  if (P < 2) throw InvalidArgument("truncated_L_gl3: cutoff must be >= 2");
  if (P > t.size()) throw InsufficientCache("truncated_L_gl3: tau table shorter than prime cutoff");
  TruncatedLReport rep;
  Complex value = 1.0, previous = 1.0;
  for (std::int64_t p = 2; p <= P; ++p) {
    if (!is_prime(p)) continue;
    previous = value;
    value *= local_L_gl3(sym2_satake(p, t), s, LocalField(p));
    rep.trace.emplace_back(p, value);
  }
  rep.value = value;
  rep.last_change = std::abs(value / previous - 1.0);
  rep.certified = s.real() > 1.0;
  return rep;
}

MainTerm corollary_main_term(const GlobalLValues& L, std::int64_t p, double vartheta) {
  if (!is_prime(p)) throw InvalidArgument("corollary_main_term: p must be prime");
  const Complex main =
      4.0 * L.get(GlobalLValues::kLambdaOne) * L.get(GlobalLValues::kLambdaZero) / L.get(GlobalLValues::kXiTwo);
  const double pd = static_cast<double>(p);
  return {main, vartheta - 0.5, (pd - 1.0) / (pd * pd)};
}

}  // namespace specrec
