#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qnls/diagnostics.hpp"
#include "qnls/field.hpp"
#include "qnls/solver.hpp"

namespace qnls::io {

struct SolitonData {
  double lambda = 1.0;
  double center = 0.0;
  /// Multiplies the profile; 1.2 gives the standard blow-up datum.
  double amplitude = 1.0;
};

/// amplitude * exp(-((x - center)/width)^2) * exp(i chirp (x - center)^2)
struct GaussianData {
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
  double chirp = 0.0;
};

/// Q(x) + ripple_amp * exp(i ripple_freq x) * exp(-x^2)
struct RippleData {
  double ripple_amp = 0.3;
  double ripple_freq = 40.0;
};

struct CheckpointData {
  std::filesystem::path path;
};

using InitialData = std::variant<SolitonData, GaussianData, RippleData, CheckpointData>;

struct DiagnosticsConfig {
  double s = 0.95;
  std::vector<double> N_list;
  GammaProfile gamma_profile = GammaProfile::log_e_plus_inverse;
  std::vector<double> widths;
  std::size_t stride = 1;
};

struct OutputConfig {
  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> checkpoint_dir;
  /// Accepted steps between checkpoints; 0 writes only the final state.
  std::size_t checkpoint_stride = 0;
};

struct RunConfig {
  std::size_t n = 0;
  double L = 0.0;
  InitialData initial_data;
  SolverConfig solver;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
};

/// Parses JSON text. Unknown keys, missing required fields and wrong types
/// raise ConfigError naming the offending field (or the line for syntax
/// errors). Relative paths are resolved against base_dir.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path);

std::string to_json(const RunConfig& cfg);

Field make_initial_field(const RunConfig& cfg);

}  // namespace qnls::io
