#include "specrec/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace specrec {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Estimate: return "estimate";
  }
  return "fail";
}

CheckRecord make_check(std::string name, Complex value, double measured, double tolerance, int samples,
                       std::uint64_t seed, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.value = value;
  r.bound = measured;
  r.tolerance = tolerance;
  r.samples = samples;
  r.seed = seed;
  r.note = std::move(note);
  r.status = (std::isfinite(measured) && measured <= tolerance) ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

void RunReport::sort() {
  std::stable_sort(checks.begin(), checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
}

bool RunReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::Fail; });
}

namespace {

// JSON has no infinity; non-finite numbers become strings.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["parameters"] = parameters;
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json r;
    r["name"] = c.name;
    r["status"] = to_string(c.status);
    r["value"] = {{"re", number(c.value.real())}, {"im", number(c.value.imag())}};
    r["bound"] = number(c.bound);
    r["tolerance"] = number(c.tolerance);
    r["samples"] = c.samples;
    r["seed"] = c.seed;
    if (!c.note.empty()) r["note"] = c.note;
    arr.push_back(std::move(r));
  }
  j["checks"] = std::move(arr);
  j["wall_time"] = wall_time;
  return j;
}

void RunReport::print_table(std::ostream& os) const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(8) << "status"
     << std::setw(26) << "value" << std::setw(12) << "bound" << "tolerance\n";
  for (const auto& c : checks) {
    std::ostringstream val;
    val << std::setprecision(8) << c.value.real();
    if (c.value.imag() != 0.0) val << (c.value.imag() < 0 ? "-" : "+") << std::abs(c.value.imag()) << "i";
    os << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << std::setw(8) << to_string(c.status)
       << std::setw(26) << val.str() << std::setw(12) << std::setprecision(3) << c.bound << c.tolerance << '\n';
    if (!c.note.empty()) os << std::string(width + 2, ' ') << c.note << '\n';
  }
  os << "wall time " << std::setprecision(3) << wall_time << " s, " << (ok() ? "all certified checks pass" : "FAILURES")
     << '\n';
}

}  // namespace specrec
