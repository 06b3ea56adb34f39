#include "qnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnls/errors.hpp"
#include "qnls/ground_state.hpp"
#include "qnls/i_operator.hpp"
#include "qnls/spectral.hpp"
#include "spectral_detail.hpp"

namespace qnls {

std::vector<double> cell_masses(const Field& f) {
  const Grid& g = f.grid;
  const std::size_t n = g.size();
  const std::size_t big_n = 2 * n;
  const double L = g.length();
  const Spectrum u = to_spectrum(f);

  // |u|^2 has modes up to |m| = n, so the doubled grid represents it exactly
  // apart from the +-n pair, whose integral over any cell vanishes.
  auto density = detail::coeffs_to_values(detail::zero_extend(g, u.coeffs, big_n), L);
  for (auto& v : density) v = std::norm(v);
  auto dens_hat = detail::values_to_coeffs(density, L);

  const double mean_part = dens_hat[0].real() * g.spacing() / std::sqrt(L);
  const double two_pi_over_L = 2.0 * std::numbers::pi / L;
  dens_hat[0] = 0.0;
  dens_hat[n] = 0.0;
  for (std::size_t j = 1; j < big_n; ++j) {
    if (j == n) continue;
    const double m = j < n ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(big_n);
    dens_hat[j] /= cplx(0.0, m * two_pi_over_L);
  }
  const auto primitive = detail::coeffs_to_values(dens_hat, L);

  std::vector<double> cells(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = primitive[2 * j].real();
    const double hi = primitive[(2 * j + 2) % big_n].real();
    cells[j] = std::max(0.0, mean_part + hi - lo);
  }
  return cells;
}

RhoResult concentration_rho_cells(std::span<const double> cell_mass, double dx, double origin, double width) {
  const std::size_t n = cell_mass.size();
  if (n == 0) throw UndefinedInputError("concentration_rho: no cells");
  if (!(dx > 0.0)) throw ConfigError("concentration_rho: dx must be positive");
  if (!(width >= dx * (1.0 - 1e-12))) throw ResolutionError("concentration_rho: width below one grid cell");

  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  const auto w = std::clamp<std::ptrdiff_t>(std::llround(width / dx), 1, std::max<std::ptrdiff_t>(half, 1));

  std::vector<double> prefix(3 * n + 1, 0.0);
  for (std::size_t i = 0; i < 3 * n; ++i) prefix[i + 1] = prefix[i] + cell_mass[i % n];
  const auto sn = static_cast<std::ptrdiff_t>(n);
  auto window = [&](std::ptrdiff_t c) { return prefix[sn + c + w] - prefix[sn + c - w]; };

  double best = -1.0;
  for (std::ptrdiff_t c = 0; c < sn; ++c) best = std::max(best, window(c));
  const double tie = 1e-13 * prefix[n];
  std::ptrdiff_t arg = 0;
  for (std::ptrdiff_t c = 0; c < sn; ++c) {
    if (window(c) >= best - tie) {
      arg = c;
      break;
    }
  }
  return {best, origin + static_cast<double>(arg) * dx, static_cast<double>(w) * dx};
}

RhoResult concentration_rho(const Field& f, double width) {
  if (width < f.grid.spacing() * (1.0 - 1e-12)) {
    throw ResolutionError("concentration_rho: width below one grid cell");
  }
  const auto cells = cell_masses(f);
  return concentration_rho_cells(cells, f.grid.spacing(), f.grid.origin(), width);
}

HolderReport rho_monotone_holder_check(const Field& f, std::span<const double> widths, double r) {
  if (widths.size() < 3) throw ConfigError("rho_monotone_holder_check: need at least three widths");
  if (!(r > 2.0)) throw ConfigError("rho_monotone_holder_check: r must exceed 2");
  for (std::size_t i = 1; i < widths.size(); ++i) {
    if (!(widths[i] > widths[i - 1])) throw ConfigError("rho_monotone_holder_check: widths must increase");
  }
  const auto cells = cell_masses(f);
  HolderReport rep;
  for (double w : widths) {
    rep.values.push_back(concentration_rho_cells(cells, f.grid.spacing(), f.grid.origin(), w));
  }
  const double lr = lp_norm(f, r);
  const double expo = (r - 2.0) / r;
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    if (i > 0 && rep.values[i].rho < rep.values[i - 1].rho) rep.monotone = false;
    for (std::size_t j = i + 1; j < rep.values.size(); ++j) {
      const double gap = std::abs(rep.values[j].width - rep.values[i].width);
      if (gap == 0.0 || lr == 0.0) continue;
      const double q = std::abs(rep.values[j].rho - rep.values[i].rho) / (lr * lr * std::pow(gap, expo));
      rep.max_quotient = std::max(rep.max_quotient, q);
    }
  }
  return rep;
}

double lemma5_ratio(const Field& f, double width) {
  const double m = mass(f);
  if (m == 0.0) throw UndefinedInputError("lemma5_ratio: zero field");
  const RhoResult r = concentration_rho(f, width);
  const double l6 = std::pow(lp_norm(f, 6.0), 6.0);
  const double g = gradient_norm(f);
  return l6 / (r.rho * r.rho * (g * g + m / (r.width * r.width)));
}

DiagnosticsRecord make_record(const Field& f, const DiagnosticsSpec& spec) {
  DiagnosticsRecord rec;
  rec.time = f.time;
  rec.mass = mass(f);
  rec.energy = energy(f, spec.sign);
  rec.gradnorm = gradient_norm(f);
  rec.hs_norm = sobolev_norm(f, spec.s);
  rec.max_amp = lp_norm(f, kInfinity);
  for (double N : spec.N_list) {
    const auto me = modified_energy(f, IMultiplier{N, spec.s}, spec.sign);
    rec.mod_kinetic.push_back(me.kinetic);
    rec.mod_energy.push_back(me.energy);
  }
  if (!spec.widths.empty()) {
    const auto cells = cell_masses(f);
    for (double w : spec.widths) {
      const auto r = concentration_rho_cells(cells, f.grid.spacing(), f.grid.origin(), w);
      rec.rho_at_widths.push_back({w, r.rho, r.y_star});
    }
  }
  return rec;
}

std::string_view to_string(GammaProfile g) {
  switch (g) {
    case GammaProfile::log_e_plus_inverse: return "log_e_plus_inverse";
    case GammaProfile::quarter_log: return "quarter_log";
    case GammaProfile::constant: return "constant";
  }
  return "unknown";
}

GammaProfile parse_gamma_profile(std::string_view name) {
  if (name == "log_e_plus_inverse") return GammaProfile::log_e_plus_inverse;
  if (name == "quarter_log") return GammaProfile::quarter_log;
  if (name == "constant") return GammaProfile::constant;
  throw ConfigError("unknown gamma profile '" + std::string(name) +
                    "' (expected log_e_plus_inverse, quarter_log or constant)");
}

double gamma_value(GammaProfile g, double x) {
  if (!(x > 0.0)) throw DomainError("gamma_value: argument must be positive");
  switch (g) {
    case GammaProfile::log_e_plus_inverse: return std::log(std::numbers::e + 1.0 / x);
    case GammaProfile::quarter_log: return std::pow(std::abs(std::log(x)), 0.25);
    case GammaProfile::constant: return 1.0;
  }
  return 1.0;
}

std::vector<WindowRow> concentration_window_series(std::span<const Field> snapshots, double T_star, double s,
                                                   GammaProfile gamma) {
  std::vector<WindowRow> rows;
  for (const auto& f : snapshots) {
    const double gap = T_star - f.time;
    if (!(gap > 0.0)) continue;
    WindowRow row;
    row.time = f.time;
    row.width = std::pow(gap, 0.5 * s) * gamma_value(gamma, gap);
    const double dx = f.grid.spacing();
    row.resolution_limited = row.width < dx;
    const auto r = concentration_rho(f, std::max(row.width, dx));
    row.rho = r.rho;
    row.y = r.y_star;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qnls
