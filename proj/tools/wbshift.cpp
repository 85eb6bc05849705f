// Command-line runner for weighted backward shift experiments.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "wbshift/catalog.hpp"
#include "wbshift/config.hpp"
#include "wbshift/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wbshift::ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void warn_if_discontinuous(const wbshift::ExperimentConfig& cfg) {
  const wbshift::ShiftOperator B = wbshift::make_operator(cfg);
  const auto r = wbshift::continuity_check(B.space, B.weights, {-1000, 1000}, 6);
  if (!r.certified())
    std::cerr << "warning: continuity not witnessed on [-1000, 1000] with K = 6; verdicts may be meaningless\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon chaos certificates for weighted backward shifts"};
  std::string config_path, example, check_kind, out_path, format;
  wbshift::Index horizon = 0;
  bool export_only = false, list = false;
  auto* cfg_opt = app.add_option("--config", config_path, "Experiment document (JSON, schema_version 1)");
  auto* ex_opt = app.add_option("--example", example, "Catalog entry to run");
  cfg_opt->excludes(ex_opt);
  app.add_option("--check", check_kind, "Run only checks of this kind (expected verdicts are ignored)");
  app.add_option("--horizon", horizon, "Override every horizon / N_max parameter");
  app.add_option("--out", out_path, "Output path (default: stdout)");
  app.add_option("--format", format, "report, csv or json")->check(CLI::IsMember({"report", "csv", "json"}));
  app.add_flag("--export", export_only, "Print the example as a config document instead of running it");
  app.add_flag("--list", list, "List catalog entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wbshift::kExitError;
  }

  try {
    if (list) {
      for (const auto& n : wbshift::catalog_names())
        std::cout << n << "  " << wbshift::build_example(n).summary << "\n";
      return wbshift::kExitOk;
    }
    wbshift::ExperimentConfig cfg;
    if (!example.empty()) {
      wbshift::CatalogEntry entry;
      try {
        entry = wbshift::build_example(example);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return wbshift::kExitError;
      }
      if (export_only) {
        const std::string doc = wbshift::export_config(entry);
        if (out_path.empty()) {
          std::cout << doc;
        } else {
          std::ofstream(out_path, std::ios::binary) << doc;
        }
        return wbshift::kExitOk;
      }
      cfg = entry.config;
    } else if (!config_path.empty()) {
      if (export_only) throw wbshift::ConfigError("--export needs --example");
      cfg = wbshift::parse_config(read_file(config_path), config_path);
    } else {
      std::cerr << "error: give --config <path> or --example <name>\n" << app.help();
      return wbshift::kExitError;
    }

    bool use_expectations = true;
    if (!check_kind.empty()) {
      std::vector<wbshift::CheckSpec> kept;
      for (const auto& c : cfg.checks)
        if (c.kind == check_kind) kept.push_back(c);
      if (kept.empty()) throw wbshift::ConfigError("no check of kind '" + check_kind + "' in the experiment");
      cfg.checks = std::move(kept);
      cfg.doc.reset();
      use_expectations = false;
    }
    if (app.count("--horizon")) wbshift::override_horizon(cfg, horizon);
    if (format.empty()) format = cfg.output.format;
    if (out_path.empty()) out_path = cfg.output.path;

    // Validate every check before computing anything.
    wbshift::prepare_all(cfg, wbshift::make_operator(cfg));
    warn_if_discontinuous(cfg);
    const auto outcomes = wbshift::run_checks(cfg, use_expectations);
    const int status = wbshift::exit_status(outcomes);
    if (out_path.empty()) {
      wbshift::write_outcomes(std::cout, outcomes, cfg, format);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw wbshift::ConfigError(out_path + ": cannot write output");
      wbshift::write_outcomes(out, outcomes, cfg, format);
    }
    for (const auto& o : outcomes)
      if (!o.report) std::cerr << "error in " << o.spec.label << ": " << o.error << "\n";
    return status;
  } catch (const wbshift::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return wbshift::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wbshift::kExitError;
  }
}
