#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qnls/equation.hpp"
#include "qnls/field.hpp"

namespace qnls {

struct RhoResult {
  double rho = 0.0;
  /// Window center; the smallest one among (numerically) tied maxima.
  double y_star = 0.0;
  /// Half-width actually used: the requested width rounded to whole cells.
  double width = 0.0;
};

/// sup_y of the mass of u in |x - y| < width. Windows are centered on grid
/// points and span a whole number of cells; cell masses are exact integrals
/// of |u|^2 for the trigonometric interpolant. Throws ResolutionError for
/// width < dx.
RhoResult concentration_rho(const Field& f, double width);

/// The same sliding-window maximum over explicit periodic cell masses:
/// cell j covers [origin + j dx, origin + (j+1) dx].
RhoResult concentration_rho_cells(std::span<const double> cell_mass, double dx, double origin, double width);

/// Integrals of |u|^2 over every grid cell of the interpolant.
std::vector<double> cell_masses(const Field& f);

struct HolderReport {
  bool monotone = true;
  /// max over width pairs of |rho(a) - rho(b)| / (||u||_{L^r}^2 |a - b|^{(r-2)/r})
  double max_quotient = 0.0;
  std::vector<RhoResult> values;
};

/// Needs at least three increasing widths and r > 2.
HolderReport rho_monotone_holder_check(const Field& f, std::span<const double> widths, double r);

/// int |u|^6 / (rho(u, w)^2 (int |u_x|^2 + w^{-2} int |u|^2)), with w the
/// cell-rounded width. Throws UndefinedInputError for the zero field.
double lemma5_ratio(const Field& f, double width);

struct RhoSample {
  double width = 0.0;
  double rho = 0.0;
  double y = 0.0;
};

struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double gradnorm = 0.0;
  double hs_norm = 0.0;
  double max_amp = 0.0;
  /// One entry per N, in the order requested.
  std::vector<double> mod_kinetic;
  std::vector<double> mod_energy;
  std::vector<RhoSample> rho_at_widths;
};

struct DiagnosticsSpec {
  Sign sign = Sign::focusing;
  double s = 0.5;
  std::vector<double> N_list;
  std::vector<double> widths;
};

DiagnosticsRecord make_record(const Field& f, const DiagnosticsSpec& spec);

enum class GammaProfile { log_e_plus_inverse, quarter_log, constant };

std::string_view to_string(GammaProfile g);
GammaProfile parse_gamma_profile(std::string_view name);

/// gamma(x) for x > 0: log(e + 1/x), |log x|^{1/4}, or 1.
double gamma_value(GammaProfile g, double x);

struct WindowRow {
  double time = 0.0;
  double width = 0.0;
  double rho = 0.0;
  double y = 0.0;
  /// width < dx: rho is reported at one cell and should not be trusted.
  bool resolution_limited = false;
};

/// For each snapshot with t < T_star: width = (T* - t)^{s/2} gamma(T* - t)
/// and rho, y at that width.
std::vector<WindowRow> concentration_window_series(std::span<const Field> snapshots, double T_star, double s,
                                                   GammaProfile gamma);

}  // namespace qnls
