#pragma once

#include <numbers>

#include "qnls/equation.hpp"
#include "qnls/field.hpp"

namespace qnls {

/// Closed-form constants of the ground state Q(x) = 3^{1/4} / sqrt(cosh 2x).
struct GroundStateConstants {
  /// ||Q||_{L^2}^2 = sqrt(3) pi / 2.
  static constexpr double mass_squared = std::numbers::sqrt3 * std::numbers::pi / 2.0;
  /// Sharp Gagliardo-Nirenberg constant ||Q||_{L^2}^{-4} = 4 / (3 pi^2).
  static constexpr double gn_constant = 4.0 / (3.0 * std::numbers::pi * std::numbers::pi);
  /// Q(0) = 3^{1/4}.
  static constexpr double q_peak = 1.3160740129524924608;
  /// ||Q||_{L^6}^6 = 3 sqrt(3) pi / 4.
  static constexpr double l6_power = 3.0 * std::numbers::sqrt3 * std::numbers::pi / 4.0;
};

/// Q(x), evaluated without overflow for large |x|.
double eval_Q(double x);

/// lambda^{-1/2} Q((x - center) / lambda) sampled on the grid.
Field sample_Q(const Grid& g, double center = 0.0, double scale = 1.0);

/// Periodic image sum sum_m lambda^{-1/2} Q((x - center + mL) / lambda).
/// This is the smooth periodic representative of Q on the box; the plain
/// sample has a derivative kink of size ~Q(L/2) at the seam.
Field sample_Q_periodic(const Grid& g, double center = 0.0, double scale = 1.0);

/// (1/2) ||u_x||^2.
double kinetic_energy(const Field& f);

/// (1/6) ||u||_{L^6}^6.
double potential_energy(const Field& f);

/// E(u) = (1/2)||u_x||^2 - (1/6)||u||_6^6 (focusing) or + (defocusing).
double energy(const Field& f, Sign sign);

/// (C/2)||u_x||^2 ||u||_2^4 - (1/6)||u||_6^6 with the sharp constant C.
/// Nonnegative for every H^1 function on the line, zero at Q and its
/// rescalings. Throws UndefinedInputError for the zero field.
double gn_slack(const Field& f);

struct OdeResidual {
  double max_residual;
  /// Set when the grid is below the resolution this check is meant for
  /// (n < 1024 or L < 30); the residual is still computed.
  bool under_resolved;
};

/// max_j |Q_xx - Q + Q^5| with spectral Q_xx on the periodic sample of Q.
OdeResidual ode_residual(const Grid& g);

}  // namespace qnls
