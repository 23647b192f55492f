#pragma once

// Structured run reports: JSON for machines, a table for people.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "specrec/series.hpp"

namespace specrec {

inline constexpr const char* kReportSchema = "specrec-report/1";

enum class CheckStatus { Pass, Fail, Estimate };

const char* to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  Complex value{};
  double bound = 0.0;      // truncation / tail bound or measured deviation
  double tolerance = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string note;
};

/// Pass iff `measured` is finite and below `tolerance`.
CheckRecord make_check(std::string name, Complex value, double measured, double tolerance, int samples = 0,
                       std::uint64_t seed = 0, std::string note = {});

struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<CheckRecord> checks;
  double wall_time = 0.0;

  /// Checks ordered by name.
  void sort();
  /// True iff no non-estimate check failed.
  bool ok() const;
  nlohmann::json to_json() const;
  void print_table(std::ostream& os) const;
};

}  // namespace specrec
