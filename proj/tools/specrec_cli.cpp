#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "specrec/commands.hpp"
#include "specrec/errors.hpp"

namespace {

int emit(const specrec::RunReport& report, bool json_only) {
  std::cout << report.to_json().dump(2) << std::endl;
  if (!json_only) report.print_table(std::cerr);
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local and global weights for a GL(3) x GL(2) spectral reciprocity"};
  app.require_subcommand(1);
  bool json_only = false;
  app.add_flag("--json-only", json_only, "suppress the table on standard error");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  specrec::SuiteOptions opt;
  double tol = 0.0;
  verify->add_option("--suite", suite, "hecke|casselman|weights|degenerate|residue|global|all")->capture_default_str();
  verify->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  auto* tol_opt = verify->add_option("--tol", tol, "override the floating tolerances");
  verify->add_option("--trunc", opt.trunc, "series truncation order for the identity checks");

  auto* weight = app.add_subcommand("weight", "evaluate the weight function H at (s, w)");
  specrec::WeightArgs wa;
  std::string s_text = "0.5", w_text = "0.5";
  weight->add_option("--q", wa.q, "level, e.g. 2^2*3")->capture_default_str();
  weight->add_option("--l", wa.l, "twist ideal, coprime to q")->capture_default_str();
  weight->add_option("--pi", wa.pi, "local GL(2) data, e.g. 2:cond=1:alpha=0.5,3:cond=0:lambda=1.2");
  weight->add_option("--gl3", wa.gl3, "GL(3) Satake data p:g1:g2 (default trivial)");
  weight->add_option("s", s_text, "s, e.g. 0.5+1i")->capture_default_str();
  weight->add_option("w", w_text, "w")->capture_default_str();
  weight->add_option("--tol", wa.tol, "tail tolerance")->capture_default_str();

  auto* tau = app.add_subcommand("tau", "build or reuse the tau cache");
  int tau_n = 0;
  std::string cache = "tau_cache.csv";
  tau->add_option("N", tau_n, "number of coefficients")->required();
  tau->add_option("--cache", cache, "cache file")->capture_default_str();

  auto* central = app.add_subcommand("central", "central-value constants for sym^2 Delta");
  std::int64_t p = 11, cutoff = 1000;
  std::string central_cache;
  central->add_option("p", p, "prime level")->capture_default_str();
  central->add_option("--prime-cutoff", cutoff, "Euler product cutoff P")->capture_default_str();
  central->add_option("--cache", central_cache, "tau cache file (computed in memory if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      if (*tol_opt) opt.tol = tol;
      return emit(specrec::cmd_verify(suite, opt), json_only);
    }
    if (*weight) {
      wa.s = specrec::parse_complex(s_text);
      wa.w = specrec::parse_complex(w_text);
      return emit(specrec::cmd_weight(wa), json_only);
    }
    if (*tau) return emit(specrec::cmd_tau(tau_n, cache), json_only);
    if (*central) {
      std::optional<std::string> c;
      if (!central_cache.empty()) c = central_cache;
      return emit(specrec::cmd_central(p, cutoff, c), json_only);
    }
  } catch (const specrec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
