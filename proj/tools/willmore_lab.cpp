// willmore-lab: run verification suites over parametric surfaces and emit
// JSON reports / CSV tables.
//
// Exit codes: 0 all checks pass, 1 some checks fail, 2 config error,
// 3 numerical abort (partial report retained when possible).

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "willmore/errors.hpp"
#include "willmore/report.hpp"

namespace {

using willmore::SuiteConfig;

void add_common_options(CLI::App* cmd, SuiteConfig* cfg, std::string* grid_spec) {
  cmd->add_option("--surface", cfg->surface,
                  "zoo surface, e.g. sphere, ellipsoid(1,1,2), inverted-catenoid");
  cmd->add_option("--dsl-file", cfg->dsl_file, "file with a (s,s,s) immersion expression");
  cmd->add_option("--grid", *grid_spec, "quadrature grid AxB (default 64x64)");
  cmd->add_option("--jet-order", cfg->jet_order, "jet order K in [2,6] (default 5)");
  cmd->add_option("--precision", [cfg](const std::vector<std::string>& vals) {
        if (vals.empty()) return false;
        if (vals[0] == "double") cfg->extended_precision = false;
        else if (vals[0] == "extended") cfg->extended_precision = true;
        else return false;
        return true;
      },
      "double | extended");
  cmd->add_option("--radii", [cfg](const std::vector<std::string>& vals) {
        if (vals.empty()) return false;
        cfg->radii = vals[0];
        return true;
      },
      "radius ladder r0:ratio:count for fits");
  cmd->add_option("--out", cfg->out_path, "JSON report path (default stdout)");
  cmd->add_option("--csv", cfg->csv_path,
                  "CSV table path (quartic scan: u,v,|q|,arg q,|dzbar q|,scaled_q,disk_factor; "
                  "branch: r,sup|Phi|,sup|grad Phi|,sup|H|)");
  cmd->add_option("--levels", cfg->convergence_levels, "refinement levels (convergence suite)");
  cmd->add_flag("--timings", cfg->with_timings,
                "attach wall-clock timings (breaks byte-determinism)");
}

bool parse_grid(const std::string& spec, willmore::GridSpec* grid) {
  if (spec.empty()) return true;
  const auto x = spec.find('x');
  if (x == std::string::npos) return false;
  try {
    grid->nu = std::stoi(spec.substr(0, x));
    grid->nv = std::stoi(spec.substr(x + 1));
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "willmore-lab: conformal Gauss map / Bryant quartic verification suites.\n"
      "Suites: identities, energies, willmore, quartic, branch, monotonicity, convergence."};
  app.require_subcommand(0, 1);

  const std::vector<std::string> suites = {"identities", "energies",     "willmore", "quartic",
                                           "branch",     "monotonicity", "convergence"};
  SuiteConfig cfg;
  std::string grid_spec;
  std::string suite_flag;
  app.add_option("--suite", suite_flag, "suite name (alternative to the subcommand form)");
  add_common_options(&app, &cfg, &grid_spec);
  for (const auto& s : suites) {
    CLI::App* sub = app.add_subcommand(s, s + " suite");
    sub->parse_complete_callback([&cfg, s] { cfg.suite = s; });
    add_common_options(sub, &cfg, &grid_spec);
  }

  CLI11_PARSE(app, argc, argv);
  if (cfg.suite.empty()) cfg.suite = suite_flag;

  try {
    if (cfg.suite.empty()) throw willmore::ConfigError("no suite selected (see --help)");
    if (!parse_grid(grid_spec, &cfg.grid))
      throw willmore::ConfigError("malformed --grid, expected AxB");
    const willmore::Report rep = willmore::run_suite(cfg);
    willmore::write_report(rep, cfg);
    return rep.all_pass ? 0 : 1;
  } catch (const willmore::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const willmore::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
