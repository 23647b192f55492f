#pragma once

// The commands behind the specrec executable, and the parsers for their
// textual arguments. Each command returns a RunReport; printing and exit
// codes are left to the caller.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "specrec/hecke.hpp"
#include "specrec/report.hpp"
#include "specrec/suites.hpp"

namespace specrec {

/// "0.5", "-2", "0.5+1.2i", "0.5-3i", "2i". Throws ParseError.
Complex parse_complex(const std::string& text);

/// "1", "12", "2^2*3". Rational integers only. Throws ParseError.
IdealFactorization parse_ideal(const std::string& text);

/// Comma-separated local GL(2) data, one item per prime:
///   "2:cond=1:alpha=0.5", "3:cond=0:lambda=1.2", "3:cond=0:alpha=0.9+0.1i", "5:cond=2".
LocalRepsGL2 parse_gl2_spec(const std::string& text);

/// Comma-separated GL(3) data "p:g1:g2" (third parameter 1/(g1 g2)); primes
/// not listed get trivial parameters.
std::map<std::int64_t, SatakeGL3> parse_gl3_spec(const std::string& text);

RunReport cmd_verify(const std::string& suite, const SuiteOptions& opt);

struct WeightArgs {
  std::string q = "1";
  std::string l = "1";
  std::string pi;
  std::string gl3;
  Complex s = 0.5;
  Complex w = 0.5;
  double tol = 1e-10;
};

RunReport cmd_weight(const WeightArgs& args);

/// Writes tau(1..N) to `cache` unless it already holds at least N values.
RunReport cmd_tau(int N, const std::string& cache);

/// Central-value constants for sym^2 Delta. Reads tau from `cache` when given.
RunReport cmd_central(std::int64_t p, std::int64_t prime_cutoff, const std::optional<std::string>& cache);

}  // namespace specrec
