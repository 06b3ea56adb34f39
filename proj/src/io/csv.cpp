#include "qnls/io/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qnls/errors.hpp"

namespace qnls::io {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<std::string> diagnostics_header(const DiagnosticsSpec& spec) {
  std::vector<std::string> h{"t", "mass", "energy", "gradnorm", "hs_norm", "max_amp", "dt"};
  for (double N : spec.N_list) {
    h.push_back("mod_energy_N" + short_number(N));
    h.push_back("mod_kinetic_N" + short_number(N));
  }
  for (double w : spec.widths) {
    h.push_back("rho_w" + short_number(w));
    h.push_back("y_w" + short_number(w));
  }
  return h;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

std::vector<double> diagnostics_row(const DiagnosticsRecord& rec, double dt) {
  std::vector<double> row{rec.time, rec.mass, rec.energy, rec.gradnorm, rec.hs_norm, rec.max_amp, dt};
  for (std::size_t i = 0; i < rec.mod_energy.size(); ++i) {
    row.push_back(rec.mod_energy[i]);
    row.push_back(rec.mod_kinetic[i]);
  }
  for (const auto& r : rec.rho_at_widths) {
    row.push_back(r.rho);
    row.push_back(r.y);
  }
  return row;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw SchemaError("CSV has no '" + name + "' column");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("CSV file " + path.string() + " is empty");
  table.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw SchemaError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(table.header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size()) {
        throw SchemaError(path.string() + ":" + std::to_string(line_no) + ": '" + c + "' is not a number");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write CSV file " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) out << format_row(r) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace qnls::io
