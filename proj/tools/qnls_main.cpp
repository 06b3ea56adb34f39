#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "qnls/errors.hpp"
#include "qnls/io/config.hpp"
#include "qnls/io/runner.hpp"
#include "qnls/io/validation.hpp"

namespace {

enum Exit : int { ok = 0, failed = 1, config = 2, io = 3, numeric = 4, fit = 5 };

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  validation check failed\n"
    "  2  configuration error\n"
    "  3  I/O error (files, checkpoints)\n"
    "  4  numerical or solver error\n"
    "  5  fit rejected or CSV schema error\n";

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw qnls::ConfigError("'" + item + "' in --N is not a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral toolkit for the 1d quintic NLS"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Evolve the data in a config file, writing CSV and checkpoints");
  run->add_option("config", config_path, "JSON config file")->required();

  std::string sweep_config, n_list, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Tabulate |E(I_N u(T)) - E(I_N u(0))| over a list of N");
  sweep->add_option("config", sweep_config, "JSON config file")->required();
  sweep->add_option("--N", n_list, "Comma-separated N values (default: diagnostics.N_list)");
  sweep->add_option("-o,--out", sweep_out, "CSV file for the decay table");

  std::string csv_path, model_name = "scaling";
  std::optional<double> hint;
  auto* fit = app.add_subcommand("fit", "Fit a blow-up rate law to the gradnorm column of a run CSV");
  fit->add_option("csv", csv_path, "CSV written by `qnls run`")->required();
  fit->add_option("--model", model_name, "scaling, loglog or free_exponent")->capture_default_str();
  fit->add_option("--t-star", hint, "Initial guess for T* (must exceed the last time)");

  bool list = false;
  std::size_t validate_n = qnls::io::kDefaultValidationN;
  auto* validate = app.add_subcommand("validate", "Run the analytic-oracle checks");
  validate->add_flag("--list", list, "Print the checks without running them");
  validate->add_option("--n", validate_n, "Grid size for the checks (L = 40)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      qnls::io::run(qnls::io::load_config(config_path), std::cout);
    } else if (*sweep) {
      const auto cfg = qnls::io::load_config(sweep_config);
      const auto Ns = n_list.empty() ? cfg.diagnostics.N_list : parse_list(n_list);
      std::optional<std::filesystem::path> out;
      if (!sweep_out.empty()) out = sweep_out;
      qnls::io::sweep(cfg, Ns, out, std::cout);
    } else if (*fit) {
      qnls::io::fit(csv_path, qnls::parse_rate_model(model_name), hint, std::cout);
    } else if (*validate) {
      if (list) {
        for (const auto& c : qnls::io::validation_checks()) std::cout << c.name << ": " << c.description << '\n';
        return ok;
      }
      return qnls::io::run_validation(validate_n, std::cout) ? ok : failed;
    }
  } catch (const qnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config;
  } catch (const qnls::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return io;
  } catch (const qnls::FitRejected& e) {
    std::cerr << "fit rejected: " << e.what() << '\n';
    return Exit::fit;
  } catch (const qnls::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return Exit::fit;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return io;
  } catch (const qnls::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return numeric;
  }
  return ok;
}
