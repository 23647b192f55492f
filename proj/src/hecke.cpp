#include "specrec/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specrec/errors.hpp"

namespace specrec {

Complex gl2_lambda(const SatakeGL2& rep, int nu) {
  return gl2_lambda_generic<Complex>(rep.params(), rep.conductor(), nu);
}

std::vector<Complex> gl2_lambda_table(const SatakeGL2& rep, int N) {
  if (N < 0) throw NegativeIndex("gl2_lambda_table: negative N");
  if (rep.conductor() == 0) {
    const auto& p = rep.params();
    return complete_homogeneous<Complex>(std::span<const Complex>(p.data(), p.size()), N);
  }
  std::vector<Complex> out(static_cast<std::size_t>(N) + 1, 0.0);
  out[0] = 1.0;
  if (rep.conductor() == 1)
    for (int nu = 1; nu <= N; ++nu) out[nu] = out[nu - 1] * rep.params()[0];
  return out;
}

std::vector<ComplexExt> gl2_lambda_table_ext(const SatakeGL2& rep, int N) {
  if (N < 0) throw NegativeIndex("gl2_lambda_table: negative N");
  std::vector<ComplexExt> p;
  for (const auto& a : rep.params()) p.push_back(to_ext(a));
  if (rep.conductor() == 0) return complete_homogeneous<ComplexExt>(std::span<const ComplexExt>(p.data(), p.size()), N);
  std::vector<ComplexExt> out(static_cast<std::size_t>(N) + 1, 0.0L);
  out[0] = 1.0L;
  if (rep.conductor() == 1)
    for (int nu = 1; nu <= N; ++nu) out[nu] = out[nu - 1] * p[0];
  return out;
}

Complex gl3_lambda(const SatakeGL3& rep, int a, int b) {
  if (a < 0 || b < 0) throw NegativeIndex("gl3_lambda: negative index");
  const auto& g = rep.gammas();
  const auto h = complete_homogeneous<Complex>(std::span<const Complex>(g.data(), g.size()), a + b + 1);
  return schur_two_row(h, a, b);
}

Gl3EigenvalueTable::Gl3EigenvalueTable(const SatakeGL3& rep, int kmax) : kmax_(kmax) {
  const auto& g = rep.gammas();
  h_ = complete_homogeneous<Complex>(std::span<const Complex>(g.data(), g.size()), kmax + 1);
  const std::array<ComplexExt, 3> ge{to_ext(g[0]), to_ext(g[1]), to_ext(g[2])};
  h_ext_ = complete_homogeneous<ComplexExt>(std::span<const ComplexExt>(ge.data(), ge.size()), kmax + 1);
  const std::array<double, 3> m{std::abs(g[0]), std::abs(g[1]), std::abs(g[2])};
  // h_k of the moduli bounds every intermediate of the recursion up to a factor 7
  habs_.assign(static_cast<std::size_t>(kmax) + 2, 0.0);
  habs_[0] = 1.0;
  for (double x : m)
    for (int k = 1; k <= kmax + 1; ++k) habs_[k] += x * habs_[k - 1];
}

Complex Gl3EigenvalueTable::lambda(int a, int b) const {
  if (a < 0 || b < 0) throw NegativeIndex("gl3_lambda: negative index");
  if (a + b + 1 > kmax_ + 1) throw InvalidArgument("Gl3EigenvalueTable: index beyond table");
  return schur_two_row(h_, a, b);
}

ComplexExt Gl3EigenvalueTable::lambda_ext(int a, int b) const {
  if (a < 0 || b < 0) throw NegativeIndex("gl3_lambda: negative index");
  if (a + b + 1 > kmax_ + 1) throw InvalidArgument("Gl3EigenvalueTable: index beyond table");
  return schur_two_row(h_ext_, a, b);
}

double Gl3EigenvalueTable::magnitude(int a, int b) const {
  if (b == 0) return habs_[a];
  return habs_[a + b] * habs_[b] + habs_[a + b + 1] * habs_[b - 1];
}

double gl3_lambda_bound(int a, int b, double max_modulus) {
  const double weyl = 0.5 * (a + 1.0) * (b + 1.0) * (a + b + 2.0);
  return weyl * std::pow(max_modulus, a + b);
}

double gl2_lambda_bound(const SatakeGL2& rep, int nu) {
  if (nu == 0) return 1.0;
  switch (rep.conductor()) {
    case 0:
      return (nu + 1.0) * std::pow(rep.max_modulus(), nu);
    case 1:
      return std::pow(std::abs(rep.params()[0]), nu);
    default:
      return 0.0;
  }
}

IdealFactorization::IdealFactorization(std::map<Place, int> exps) : exps_(std::move(exps)) {
  for (const auto& [p, e] : exps_)
    if (e < 1) throw InvalidArgument("IdealFactorization: exponents must be >= 1");
}

IdealFactorization IdealFactorization::of_integer(std::int64_t n) {
  if (n < 1) throw InvalidArgument("IdealFactorization: n must be >= 1");
  std::map<Place, int> exps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      exps[Place(p)] += 1;
      n /= p;
    }
  }
  if (n > 1) exps[Place(n)] += 1;
  return IdealFactorization(std::move(exps));
}

int IdealFactorization::exponent_at(const Place& p) const {
  auto it = exps_.find(p);
  return it == exps_.end() ? 0 : it->second;
}

double IdealFactorization::norm() const {
  double n = 1.0;
  for (const auto& [p, e] : exps_) n *= ipow(p.field.qd(), e);
  return n;
}

bool IdealFactorization::coprime_to(const IdealFactorization& other) const {
  for (const auto& [p, e] : exps_)
    if (other.exps_.count(p)) return false;
  return true;
}

double IdealFactorization::euler_phi() const {
  double r = 1.0;
  for (const auto& [p, e] : exps_) r *= euler_phi_prime_power(p.q(), e);
  return r;
}

namespace {

const SatakeGL2& rep_at(const LocalRepsGL2& reps, const Place& p) {
  auto it = reps.find(p);
  if (it == reps.end()) throw MissingLocalRep("no local representation at q=" + std::to_string(p.q()));
  return it->second;
}

}  // namespace

Complex lambda_hat(const LocalRepsGL2& reps, const IdealFactorization& l, Complex w) {
  Complex r = 1.0;
  for (const auto& [p, n] : l.exponents()) {
    const auto& rep = rep_at(reps, p);
    r *= lambda_hat_local_product<Complex>(rep.params(), rep.conductor(), n, qpow(p.field.qd(), -w));
  }
  return r;
}

Complex lambda_hat_divisor_sum(const LocalRepsGL2& reps, const IdealFactorization& l, Complex w) {
  // Enumerate squarefree divisors a of l: each prime is either in a or not.
  std::vector<std::pair<Place, int>> primes(l.exponents().begin(), l.exponents().end());
  const std::size_t k = primes.size();
  Complex total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Complex term = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& [p, n] = primes[i];
      const auto& rep = rep_at(reps, p);
      const bool in_a = (mask >> i) & 1U;
      const Complex lam = gl2_lambda(rep, in_a ? n - 1 : n);
      term *= in_a ? -qpow(p.field.qd(), -w) * lam : lam;
    }
    total += term;
  }
  return total;
}

namespace {

Complex inverse_product(const std::vector<Complex>& params, Complex x, const char* what) {
  Complex denom = 1.0;
  for (const auto& g : params) {
    const Complex f = 1.0 - g * x;
    if (std::abs(f) < 1e-14) throw PoleAtEvaluationPoint(std::string(what) + ": pole at evaluation point");
    denom *= f;
  }
  return 1.0 / denom;
}

}  // namespace

Complex local_L_gl2(const SatakeGL2& rep, Complex s, const LocalField& F) {
  return inverse_product(rep.params(), qpow(F.qd(), -s), "local_L_gl2");
}

Complex local_L_gl3(const SatakeGL3& rep, Complex s, const LocalField& F) {
  const auto& g = rep.gammas();
  return inverse_product({g.begin(), g.end()}, qpow(F.qd(), -s), "local_L_gl3");
}

std::vector<Complex> rs_parameters(const SatakeGL3& Pi, const SatakeGL2& pi) {
  std::vector<Complex> out;
  for (const auto& g : Pi.gammas())
    for (const auto& a : pi.params()) out.push_back(g * a);
  return out;
}

Complex local_L_rs(const SatakeGL3& Pi, const SatakeGL2& pi, Complex s, const LocalField& F) {
  return inverse_product(rs_parameters(Pi, pi), qpow(F.qd(), -s), "local_L_rs");
}

Complex local_L_adjoint(const SatakeGL2& rep, Complex s, const LocalField& F) {
  if (rep.conductor() != 0)
    throw RamifiedAdjointUnsupported("local_L_adjoint: only unramified representations are supported");
  const Complex a = rep.params()[0];
  return inverse_product({a * a, 1.0, 1.0 / (a * a)}, qpow(F.qd(), -s), "local_L_adjoint");
}

SeriesDeviation rs_series_check(const SatakeGL3& Pi, const SatakeGL2& pi, int order) {
  if (pi.conductor() < 1) throw InvalidArgument("rs_series_check: needs a ramified GL(2) representation");
  if (order < 0) throw NegativeIndex("rs_series_check: negative order");
  const auto N = static_cast<std::size_t>(order);

  Gl3EigenvalueTable table(Pi, order + 1);
  std::vector<Complex> lhs(N + 1);
  for (int nu = 0; nu <= order; ++nu) lhs[nu] = table.lambda(nu, 0) * gl2_lambda(pi, nu);

  const auto params = rs_parameters(Pi, pi);
  const auto rhs = series_inv(product_one_minus<Complex>(params, N));

  SeriesDeviation dev;
  dev.order = order;
  for (std::size_t k = 0; k <= N; ++k) {
    const double d = std::abs(lhs[k] - rhs[k]);
    dev.max_abs = std::max(dev.max_abs, d);
    dev.max_rel = std::max(dev.max_rel, d / std::max(1.0, std::abs(rhs[k])));
  }
  return dev;
}

}  // namespace specrec
