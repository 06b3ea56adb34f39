#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "qnls/i_operator.hpp"
#include "qnls/io/config.hpp"
#include "qnls/rate_fit.hpp"
#include "qnls/solver.hpp"

namespace qnls::io {

struct BlowupReport {
  BlowupEstimate estimate;
  std::optional<RateFit> scaling;
  std::optional<RateFit> loglog;
  std::optional<RateFit> free_exponent;
};

struct RunResult {
  Termination termination = Termination::reached_stop_time;
  std::optional<Field> final_state;
  std::size_t steps = 0;
  std::size_t csv_rows = 0;
  std::vector<std::filesystem::path> checkpoints;
  std::optional<BlowupReport> blowup;
};

/// Evolves the configured data, writes the CSV and checkpoints, and prints
/// a summary (with blow-up fits when the run ends on a fuse) to report.
RunResult run(const RunConfig& cfg, std::ostream& report);

/// Fits T* and all three rate models to a (t, gradnorm) series; the fits
/// that fail are left empty.
BlowupReport analyse_blowup(const std::vector<std::pair<double, double>>& series);

/// decay_sweep with the config's data and s; the horizon is stop_time minus
/// the initial time. One CSV row (N, increment) per N when out is set.
std::vector<DecayRow> sweep(const RunConfig& cfg, const std::vector<double>& N_list,
                            const std::optional<std::filesystem::path>& out, std::ostream& report);

/// Reads t and gradnorm from a run CSV, fits the requested model on the
/// monotone tail plus the free exponent, and prints both.
struct FitReport {
  RateFit fit;
  std::optional<RateFit> free_exponent;
  std::optional<RateFit> other_model;
};

FitReport fit(const std::filesystem::path& csv, RateModel model, std::optional<double> T_star_hint,
              std::ostream& report);

}  // namespace qnls::io
