// collent: sweeps, field grids and self checks for collective-operator
// entanglement. Exit codes: 0 ok, 1 validation failure, 2 usage or domain
// error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "collent/block_geometry.hpp"
#include "collent/cli_args.hpp"
#include "collent/errors.hpp"
#include "collent/field_continuum.hpp"
#include "collent/lattice_correlations.hpp"
#include "collent/report.hpp"
#include "collent/sweep.hpp"
#include "collent/validate.hpp"

namespace {

using namespace collent;

constexpr int kExitValidation = 1;
constexpr int kExitDomain = 2;
constexpr int kExitNumerical = 3;

struct CommonOutput {
  std::string format = "csv";
  std::string out;
};

void add_output_options(CLI::App* cmd, CommonOutput& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Write to FILE instead of stdout");
}

void write_table(const report::Table& table, const CommonOutput& o) {
  report::emit(report::render(table, report::parse_format(o.format)), o.out, std::cout);
}

struct CorrelationsArgs {
  double alpha = 0.5;
  std::size_t l_max = 10;
  std::size_t oracle_n = 0;
  double tol = SeriesOptions{}.tolerance;
  CommonOutput output;
};

void run_correlations(const CorrelationsArgs& args) {
  const Coupling alpha(args.alpha);
  SeriesOptions series;
  series.tolerance = args.tol;
  const auto table = correlation_table(alpha, args.l_max, series);
  report::Table out;
  out.schema = "collent-correlations/1";
  out.columns = {"l", "g", "h"};
  FiniteChainCorrelations fin;
  if (args.oracle_n != 0) {
    // Validation only: finite periodic chain of oracle_n sites.
    fin = finite_correlations(alpha, args.l_max, args.oracle_n);
    out.columns.insert(out.columns.end(), {"g_fin", "h_fin"});
  }
  for (std::size_t l = 0; l <= args.l_max; ++l) {
    std::vector<report::Cell> row = {static_cast<std::int64_t>(l), table.g(l), table.h(l)};
    if (args.oracle_n != 0) row.insert(row.end(), {fin.g[l], fin.h[l]});
    out.add_row(std::move(row));
  }
  write_table(out, args.output);
}

struct SweepArgs {
  std::string alphas = "0.5";
  std::string m = "1";
  std::string s = "1";
  std::string d = "0";
  std::size_t l_max = 0;
  std::size_t oracle_n = 0;
  double tol = SeriesOptions{}.tolerance;
  std::size_t jobs = 1;
  bool approx = false;
  CommonOutput output;
};

void run_sweep_command(const SweepArgs& args) {
  SweepConfig config;
  config.alphas = cli::parse_real_list(args.alphas, "alpha");
  const auto ms = cli::parse_size_list(args.m, "m");
  const auto ss = cli::parse_size_list(args.s, "s");
  const auto ds = cli::parse_size_list(args.d, "d");
  for (auto m : ms) {
    for (auto s : ss) {
      for (auto d : ds) config.specs.push_back({m, s, d});
    }
  }
  config.series.tolerance = args.tol;
  config.l_max = args.l_max;
  config.oracle_chain = args.oracle_n;
  config.approx = args.approx;
  config.jobs = args.jobs;
  const auto rows = run_sweep(config);
  write_table(sweep_table(rows, config), args.output);
}

struct FieldArgs {
  std::string mass = "1";
  std::string length = "1";
  std::string r = "2";
  double tol = QuadratureOptions{}.abs_tol;
  CommonOutput output;
};

void run_field(const FieldArgs& args) {
  const auto masses = cli::parse_real_list(args.mass, "mass");
  const auto lengths = cli::parse_real_list(args.length, "length");
  const auto distances = cli::parse_real_list(args.r, "r");
  QuadratureOptions opts;
  opts.abs_tol = args.tol;
  report::Table out;
  out.schema = "collent-field/1";
  out.columns = {"mass", "length", "r", "D_phi0", "D_pi0", "D_phi_r", "D_pi_r", "epsilon"};
  for (double m : masses) {
    for (double length : lengths) {
      for (double r : distances) {
        const FieldRegionSpec spec{m, length, r};
        validate(spec);
        const auto cov = field_covariance(spec, opts);
        report::Cell epsilon;  // undefined while the windows overlap
        if (r > length) epsilon = report::clean_epsilon(negativity(cov).epsilon);
        out.add_row({m, length, r, static_cast<double>(cov.g_diag), static_cast<double>(cov.h_diag),
                     static_cast<double>(cov.g_cross), static_cast<double>(cov.h_cross), epsilon});
      }
    }
  }
  write_table(out, args.output);
}

struct ValidateArgs {
  std::size_t oracle_n = ValidateOptions{}.oracle_chain;
  double tol = ValidateOptions{}.oracle_tolerance;
  std::string fault = "none";
  bool json = false;
  std::string out;
};

int run_validate(const ValidateArgs& args) {
  ValidateOptions opts;
  opts.oracle_chain = args.oracle_n;
  opts.oracle_tolerance = args.tol;
  opts.fault = args.fault == "g1-sign" ? Fault::kFlipG1Sign : Fault::kNone;
  const auto results = run_validation(opts);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  std::string text;
  if (args.json) {
    nlohmann::ordered_json doc;
    doc["schema"] = "collent-validate/1";
    doc["passed"] = all;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    doc["checks"] = std::move(checks);
    text = doc.dump(2) + "\n";
  } else {
    for (const auto& r : results) {
      text += (r.passed ? "[PASS] " : "[FAIL] ") + r.name + ": " + r.detail + "\n";
    }
    text += all ? "all checks passed\n" : "validation FAILED\n";
  }
  report::emit(text, args.out, std::cout);
  return all ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective-operator entanglement in harmonic chains and smeared fields"};
  app.require_subcommand(1);

  CorrelationsArgs corr;
  auto* corr_cmd = app.add_subcommand("correlations", "Ground-state correlations g_l, h_l");
  corr_cmd->add_option("--alpha", corr.alpha, "Coupling in (0, 1)")->required();
  corr_cmd->add_option("--l-max", corr.l_max, "Largest lag")->capture_default_str();
  corr_cmd->add_option("--oracle-n", corr.oracle_n,
                       "Add finite-chain columns g_fin, h_fin for an N-site chain");
  corr_cmd->add_option("--tol", corr.tol, "Hypergeometric series tolerance")
      ->capture_default_str();
  add_output_options(corr_cmd, corr.output);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Negativity degree over an (alpha, m, s, d) grid");
  sweep_cmd->add_option("--alpha,--alphas", sweep.alphas, "Couplings: list and/or a..b:step")
      ->capture_default_str();
  sweep_cmd->add_option("--m", sweep.m, "Subblocks per block: list and/or a..b")
      ->capture_default_str();
  sweep_cmd->add_option("--s", sweep.s, "Sites per subblock")->capture_default_str();
  sweep_cmd->add_option("--d", sweep.d, "Gap between subblocks")->capture_default_str();
  sweep_cmd->add_option("--l-max", sweep.l_max, "Correlation table length (default: as needed)");
  sweep_cmd->add_option("--oracle-n", sweep.oracle_n,
                        "Add epsilon_finite from an N-site finite chain");
  sweep_cmd->add_option("--tol", sweep.tol, "Hypergeometric series tolerance")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_flag("--approx", sweep.approx, "Add the nearest-neighbour estimate (d = 0)");
  add_output_options(sweep_cmd, sweep.output);

  FieldArgs field;
  auto* field_cmd = app.add_subcommand("field", "Smeared Klein-Gordon windows");
  field_cmd->add_option("--mass", field.mass, "Field mass(es)")->capture_default_str();
  field_cmd->add_option("--length", field.length, "Window length(s)")->capture_default_str();
  field_cmd->add_option("--r", field.r, "Centre distance(s)")->capture_default_str();
  field_cmd->add_option("--tol", field.tol, "Absolute tolerance per propagator")
      ->capture_default_str();
  add_output_options(field_cmd, field.output);

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Run the built-in self checks");
  val_cmd->add_option("--oracle-n", val.oracle_n, "Finite-chain size for the oracle check")
      ->capture_default_str();
  val_cmd->add_option("--tol", val.tol, "Oracle agreement tolerance")->capture_default_str();
  val_cmd->add_option("--inject-fault", val.fault, "Corrupt the production table on purpose")
      ->check(CLI::IsMember({"none", "g1-sign"}))
      ->capture_default_str();
  val_cmd->add_flag("--json", val.json, "JSON report");
  val_cmd->add_option("--out", val.out, "Write to FILE instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomain;
  }

  try {
    if (*corr_cmd) run_correlations(corr);
    if (*sweep_cmd) run_sweep_command(sweep);
    if (*field_cmd) run_field(field);
    if (*val_cmd) return run_validate(val);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
