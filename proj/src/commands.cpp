#include "specrec/commands.hpp"

#include <chrono>
#include <filesystem>
#include <regex>
#include <sstream>

#include "specrec/degenerate.hpp"
#include "specrec/errors.hpp"
#include "specrec/global_q.hpp"
#include "specrec/weights.hpp"

namespace specrec {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();  // getline drops a trailing empty field
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ParseError("not a number: '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + text + "'");
  }
  if (used != text.size()) throw ParseError("not an integer: '" + text + "'");
  return v;
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

CheckRecord value_record(std::string name, Complex value, double bound, double tol, std::string note = {}) {
  auto r = make_check(std::move(name), value, bound, tol, 0, 0, std::move(note));
  return r;
}

CheckRecord estimate_record(std::string name, Complex value, double bound, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.status = CheckStatus::Estimate;
  r.value = value;
  r.bound = bound;
  r.note = std::move(note);
  return r;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

Complex parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  static const std::regex pure_real(R"(^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");
  static const std::regex pure_imag(R"(^([+-]?((\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?)i$)");
  static const std::regex full(R"(^([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)([+-](\d+\.?\d*|\.\d+)?([eE][+-]?\d+)?)i$)");
  std::smatch m;
  if (std::regex_match(text, pure_real)) return parse_double(text);
  if (std::regex_match(text, m, pure_imag)) {
    const std::string c = m[1].str();
    if (c.empty() || c == "+") return Complex(0.0, 1.0);
    if (c == "-") return Complex(0.0, -1.0);
    return Complex(0.0, parse_double(c));
  }
  if (std::regex_match(text, m, full)) {
    std::string im = m[4].str();
    if (im == "+" || im == "-") im += "1";
    return Complex(parse_double(m[1].str()), parse_double(im));
  }
  throw ParseError("not a complex number: '" + raw + "'");
}

IdealFactorization parse_ideal(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw ParseError("empty ideal");
  std::map<Place, int> exps;
  for (const auto& factor : split(text, '*')) {
    const auto parts = split(trim(factor), '^');
    if (parts.empty() || parts.size() > 2) throw ParseError("malformed factor '" + factor + "'");
    const std::int64_t base = parse_int(trim(parts[0]));
    const std::int64_t e = parts.size() == 2 ? parse_int(trim(parts[1])) : 1;
    if (base < 1 || e < 0) throw ParseError("factor must be a positive integer power: '" + factor + "'");
    const auto f = IdealFactorization::of_integer(base);
    for (const auto& [place, k] : f.exponents()) exps[place] += k * static_cast<int>(e);
  }
  return IdealFactorization(exps);
}

LocalRepsGL2 parse_gl2_spec(const std::string& text) {
  LocalRepsGL2 out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto fields = split(trim(item), ':');
    if (fields.empty()) throw ParseError("empty representation item");
    const std::int64_t p = parse_int(trim(fields[0]));
    if (!is_prime(p)) throw ParseError("representation data must be attached to a prime, got " + fields[0]);
    std::optional<int> cond;
    std::optional<Complex> alpha, lambda;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto kv = split(fields[i], '=');
      if (kv.size() != 2) throw ParseError("expected key=value in '" + fields[i] + "'");
      const std::string key = trim(kv[0]);
      if (key == "cond") cond = static_cast<int>(parse_int(trim(kv[1])));
      else if (key == "alpha") alpha = parse_complex(kv[1]);
      else if (key == "lambda") lambda = parse_complex(kv[1]);
      else throw ParseError("unknown key '" + key + "'");
    }
    if (!cond) throw ParseError("missing cond= for prime " + std::to_string(p));
    const Place place(p);
    if (out.count(place)) throw ParseError("prime " + std::to_string(p) + " given twice");
    if (*cond == 0) {
      if (alpha && lambda) throw ParseError("give alpha or lambda, not both");
      if (alpha) out.emplace(place, SatakeGL2::unramified(*alpha));
      else if (lambda) out.emplace(place, SatakeGL2::from_eigenvalue(*lambda));
      else throw ParseError("unramified data needs alpha= or lambda=");
    } else if (*cond == 1) {
      if (!alpha) throw ParseError("conductor 1 needs alpha=");
      out.emplace(place, SatakeGL2::conductor_one(*alpha));
    } else if (*cond >= 2) {
      if (alpha || lambda) throw ParseError("conductor >= 2 takes no parameters");
      out.emplace(place, SatakeGL2::parameterless(*cond));
    } else {
      throw ParseError("negative conductor");
    }
  }
  return out;
}

std::map<std::int64_t, SatakeGL3> parse_gl3_spec(const std::string& text) {
  std::map<std::int64_t, SatakeGL3> out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto fields = split(trim(item), ':');
    if (fields.size() != 3) throw ParseError("expected p:g1:g2 in '" + item + "'");
    const std::int64_t p = parse_int(trim(fields[0]));
    if (!is_prime(p)) throw ParseError("GL(3) data must be attached to a prime, got " + fields[0]);
    const auto rep = SatakeGL3::from_two(parse_complex(fields[1]), parse_complex(fields[2]), 0.0);
    // record the effective exponent so tail bounds see the true growth
    out.insert_or_assign(p, SatakeGL3(rep.gammas(), std::min(0.499, rep.effective_theta(p))));
  }
  return out;
}

RunReport cmd_verify(const std::string& suite, const SuiteOptions& opt) {
  Timer timer;
  RunReport r;
  r.command = "verify";
  r.parameters = {{"suite", suite}, {"seed", opt.seed}, {"trunc", opt.trunc}};
  if (opt.tol) r.parameters["tol"] = *opt.tol;
  r.checks = run_suite(suite, opt);
  r.sort();
  r.wall_time = timer.seconds();
  return r;
}

RunReport cmd_weight(const WeightArgs& a) {
  Timer timer;
  RunReport r;
  r.command = "weight";
  r.parameters = {{"q", a.q}, {"l", a.l}, {"pi", a.pi}, {"gl3", a.gl3}, {"s", complex_json(a.s)},
                  {"w", complex_json(a.w)}, {"tol", a.tol}};
  const auto q = parse_ideal(a.q);
  const auto l = parse_ideal(a.l);
  PiData pd;
  pd.local = parse_gl2_spec(a.pi);
  const auto gl3 = parse_gl3_spec(a.gl3);
  const Gl3Provider Pi = [&gl3](const Place& v) {
    auto it = gl3.find(v.q());
    return it == gl3.end() ? SatakeGL3({1.0, 1.0, 1.0}) : it->second;
  };
  const auto g = h_global(Pi, pd, q, l, {a.s, a.w}, a.tol);
  r.checks.push_back(value_record("weight.total", g.total.value, g.total.tail_bound, a.tol, "tail bound of the product"));
  r.checks.push_back(value_record("weight.phi_factor", g.phi_factor, 0.0, a.tol, "phi(Nq)/Nq^2"));
  r.checks.push_back(value_record("weight.q_part", g.h_q, 0.0, a.tol, "prod over v | q of H_v / phi factor"));
  r.checks.push_back(value_record("weight.l_part", g.l_factor, 0.0, a.tol, "prod over v | l of H_v"));
  r.checks.push_back(value_record("weight.archimedean", g.archimedean, 0.0, a.tol));
  for (const auto& [p, v] : g.local_values)
    r.checks.push_back(value_record("weight.local." + std::to_string(p), v, 0.0, a.tol));
  r.sort();
  r.wall_time = timer.seconds();
  return r;
}

RunReport cmd_tau(int N, const std::string& cache) {
  Timer timer;
  RunReport r;
  r.command = "tau";
  r.parameters = {{"N", N}, {"cache", cache}};
  if (N < 1) throw InvalidArgument("tau: N must be >= 1");
  bool reused = false;
  TauTable table;
  if (std::filesystem::exists(cache)) {
    table = TauTable::load(cache);
    reused = table.size() >= N;
  }
  if (!reused) {
    table = tau_table(N);
    table.save(cache);
  }
  const auto reloaded = TauTable::load(cache);
  const bool roundtrip = reloaded.values() == table.values();
  r.checks.push_back(make_check("tau.cache_roundtrip", static_cast<double>(reloaded.size()), roundtrip ? 0.0 : 1.0, 0.0,
                                0, 0, reused ? "cache already covered N; left unchanged" : "cache written"));
  if (N >= 3) {
    const bool ok = table.tau(1) == 1 && table.tau(2) == -24 && table.tau(3) == 252;
    r.checks.push_back(make_check("tau.small_values", static_cast<double>(table.tau(2)), ok ? 0.0 : 1.0, 0.0, 3, 0,
                                  "tau(1), tau(2), tau(3) = 1, -24, 252"));
  }
  int bad = 0;
  const int upto = std::min(N, 200);
  for (int n = 1; n <= upto; ++n)
    if (((table.tau(n) % 691) + 691) % 691 != sigma11_mod(n, 691)) ++bad;
  r.checks.push_back(make_check("tau.congruence_691", 0.0, bad, 0.0, upto, 0, "tau(n) = sigma_11(n) mod 691"));
  r.sort();
  r.wall_time = timer.seconds();
  return r;
}

RunReport cmd_central(std::int64_t p, std::int64_t P, const std::optional<std::string>& cache) {
  Timer timer;
  RunReport r;
  r.command = "central";
  r.parameters = {{"p", p}, {"prime_cutoff", P}, {"cache", cache ? *cache : ""}};
  if (!is_prime(p)) throw InvalidArgument("central: p must be prime");
  if (P < 4) throw InvalidArgument("central: prime cutoff must be >= 4");
  TauTable t;
  if (cache) {
    t = TauTable::load(*cache);
    if (t.size() < P)
      throw InsufficientCache("central: cache holds " + std::to_string(t.size()) + " values, cutoff is " +
                              std::to_string(P));
  } else {
    t = tau_table(static_cast<int>(P));
  }

  // Lambda(1, sym^2 Delta) from the Euler product at s = 1: conditionally
  // convergent, so every derived constant is an estimate
  auto lambda_one = [&](std::int64_t cutoff) {
    return sym2_gamma_factor(1.0) * truncated_L_gl3(t, 1.0, cutoff).value;
  };
  const Complex L1 = lambda_one(P), L1_half = lambda_one(P / 2);
  const double drift = std::abs(L1 - L1_half);

  GlobalLValues L;
  L.set(GlobalLValues::kLambdaOne, L1, Provenance::Computed);
  // sym^2 Delta is self-dual with root number 1
  L.set(GlobalLValues::kLambdaOneDual, L1, Provenance::Computed);
  L.declare_self_dual();
  L.set(GlobalLValues::kXiTwo, xi_completed(2.0), Provenance::Computed);
  L.set(GlobalLValues::kDiscriminant, 1.0);

  const auto main = corollary_main_term(L, p);
  const Complex D = central_degenerate(L);
  const auto trivial = [](const Place&) { return SatakeGL3({1.0, 1.0, 1.0}); };
  const auto R = residue_term(L, trivial, IdealFactorization(), IdealFactorization(), {0.5, 0.5});

  const double rel_drift = drift / std::abs(L1);
  r.checks.push_back(estimate_record("central.lambda_one", L1, drift, "Lambda(1, sym^2 Delta); bound is the drift from P/2 to P"));
  r.checks.push_back(estimate_record("central.main_term", main.main, 4.0 * rel_drift * std::abs(main.main),
                                     "4 Lambda(1,Pi) Lambda(0,Pi) / xi(2)"));
  r.checks.push_back(estimate_record("central.residue_constant", R.value, 2.0 * rel_drift * std::abs(R.value),
                                     "residue term at s = w = 1/2"));
  r.checks.push_back(estimate_record("central.degenerate_constant", D, 2.0 * rel_drift * std::abs(D),
                                     "degenerate term at s = w = 1/2"));
  const double consistency = std::abs(R.value - D) + std::abs(R.value - 0.5 * main.main);
  r.checks.push_back(make_check("central.consistency", R.value, consistency, 1e-12 * std::abs(main.main), 0, 0,
                                "residue constant = degenerate constant = main term / 2"));
  const double pd = static_cast<double>(p);
  r.checks.push_back(make_check("central.weight_prefactor", main.weight_prefactor,
                                std::abs(main.weight_prefactor - (pd - 1.0) / (pd * pd)), 1e-15, 0, 0, "phi(p)/p^2"));
  r.checks.push_back(make_check("central.error_exponent", main.error_exponent,
                                std::abs(main.error_exponent - (7.0 / 64.0 - 0.5)), 1e-15, 0, 0, "vartheta - 1/2"));
  r.sort();
  r.wall_time = timer.seconds();
  return r;
}

}  // namespace specrec
