#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qnls/diagnostics.hpp"

namespace qnls::io {

/// t, mass, energy, gradnorm, hs_norm, max_amp, dt, then
/// mod_energy_N<N>, mod_kinetic_N<N> per N, then rho_w<w>, y_w<w> per width.
std::vector<std::string> diagnostics_header(const DiagnosticsSpec& spec);

/// Joins cells with commas; numbers use 17 significant digits.
std::string format_row(const std::vector<double>& values);
std::string format_number(double v);

std::vector<double> diagnostics_row(const DiagnosticsRecord& rec, double dt);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws SchemaError when absent.
  std::size_t column(const std::string& name) const;
};

/// Reads a numeric CSV with a header row. Throws IoError or SchemaError.
CsvTable read_csv(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace qnls::io
