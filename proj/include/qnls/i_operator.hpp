#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qnls/equation.hpp"
#include "qnls/field.hpp"
#include "qnls/solver.hpp"

namespace qnls {

/// m(xi) = 1 for |xi| <= N and (|xi|/N)^{s-1} for |xi| >= 2N. In between,
/// log m is the cubic in log2(|xi|/N) matching both branches to first order.
struct IMultiplier {
  double N = 1.0;
  double s = 0.5;

  void validate() const;
};

double multiplier_value(const IMultiplier& M, double xi);

Field apply_I(const Field& f, const IMultiplier& M);

/// r1 = ||u||_{H^{s0}} / ||Iu||_{H^{s0+1-s}},
/// r2 = ||Iu||_{H^{s0+1-s}} / (N^{1-s} ||u||_{H^{s0}}).
std::pair<double, double> smoothing_ratio_check(const Field& f, const IMultiplier& M, double s0);

struct ModifiedEnergy {
  /// (1/2) ||(Iu)_x||^2
  double kinetic = 0.0;
  /// E(Iu)
  double energy = 0.0;
};

ModifiedEnergy modified_energy(const Field& f, const IMultiplier& M, Sign sign);

/// ||I <grad> u||_{L^2} with <k> = 1 + |k|.
double modified_sobolev_norm(const Field& f, const IMultiplier& M);

/// Instantaneous dE(Iu)/dt along the flow through f:
///   Im int conj(sign * I u_xx + I(|u|^4 u)) (I(|u|^4 u) - Iu |Iu|^4) dx,
/// with both quintic products computed on a 3x padded grid.
double energy_flux_rate(const Field& f, const IMultiplier& M, Sign sign);

/// Trapezoid rule in time of energy_flux_rate over consecutive snapshots.
/// Throws AccuracyError for fewer than 16 steps.
double increment_flux(std::span<const Field> snapshots, const IMultiplier& M, Sign sign);

struct DecayRow {
  double N = 0.0;
  double increment = 0.0;
};

/// Evolves u0 over the horizon once and tabulates |E(I_N u(horizon)) - E(I_N u0)|.
std::vector<DecayRow> decay_sweep(const Field& u0, double s, std::span<const double> N_list, double horizon,
                                  const SolverConfig& cfg);

/// p(s) = 24(1 - s) / (10 s - 8). Throws DomainError for s <= 4/5.
double p_exponent(double s);

/// N(Lambda) = Lambda^{12/(10 s - 8)}. Throws DomainError for s <= 4/5 or Lambda < 1.
double n_of_lambda(double lambda, double s);

}  // namespace qnls
