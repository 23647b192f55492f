#pragma once

// Verification suites run by `specrec verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specrec/identity_test.hpp"
#include "specrec/report.hpp"

namespace specrec {

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;  // overrides the per-check floating tolerances
  int trunc = 0;              // series truncation order; 0 keeps the defaults (30 and 12)
};

/// hecke, casselman, weights, degenerate, residue, global.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws UnknownSuite.
std::vector<CheckRecord> run_suite(const std::string& name, const SuiteOptions& opt = {});

/// Riemann zeta through Borwein's accelerated alternating series; used as an
/// oracle independent of the Euler-Maclaurin evaluator.
Complex zeta_alternating(Complex s, int terms = 60);

/// sigma_11(n) mod m.
std::int64_t sigma11_mod(std::int64_t n, std::int64_t m);

}  // namespace specrec
