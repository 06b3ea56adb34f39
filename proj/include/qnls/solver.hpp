#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qnls/equation.hpp"
#include "qnls/field.hpp"

namespace qnls {

struct SolverConfig {
  Sign sign = Sign::focusing;
  /// Largest step; also the step used while dt_init <= accuracy_target/||u||_inf^4.
  double dt_init = 1e-3;
  /// An adaptive step below this ends the run with Termination::dt_underflow.
  double dt_min = 1e-12;
  /// Bound on the nonlinear phase increment dt * ||u||_inf^4.
  double accuracy_target = 1e-3;
  /// Blow-up threshold on ||u_x||_{L^2}; unset means stop_gradnorm_factor
  /// times the initial value.
  std::optional<double> stop_gradnorm;
  double stop_gradnorm_factor = 50.0;
  /// Absolute end time; a run from a checkpoint continues to the same end.
  double stop_time = 1.0;
  double dealias_fraction = 1.0 / 3.0;
  /// Resolution fuse: stop when the top decade of the retained band holds
  /// more than this fraction of the spectral mass. Non-positive disables it.
  double tail_threshold = 1e-6;
  /// Keep a Field snapshot every this many accepted steps.
  std::size_t snapshot_stride = 100;
  /// Number of most recent steps kept so that blow-up runs end with dense
  /// snapshots.
  std::size_t tail_snapshots = 256;
  /// Call the step observer every this many accepted steps.
  std::size_t observer_stride = 1;
  /// Multiplies the nonlinearity; 0 gives the free Schrodinger flow.
  double nonlinear_scale = 1.0;

  void validate() const;
};

enum class Termination { reached_stop_time, gradnorm_exceeded, resolution_exceeded, dt_underflow };

std::string_view to_string(Termination t);

/// Cheap observables recorded for every accepted step.
struct StepRecord {
  std::size_t step = 0;
  double time = 0.0;
  /// Step that produced this state (0 for the initial record).
  double dt = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double gradnorm = 0.0;
  double max_amp = 0.0;
  /// Fraction of spectral mass in the top decade of the retained band.
  double tail_fraction = 0.0;
};

struct Trajectory {
  std::vector<StepRecord> records;
  /// Increasing in time; always holds the initial and final state.
  std::vector<Field> snapshots;
  Termination termination = Termination::reached_stop_time;
  double stop_gradnorm = 0.0;

  const Field& final_state() const { return snapshots.back(); }
  /// (t, ||u_x||) for every record.
  std::vector<std::pair<double, double>> gradnorm_series() const;
};

using StepObserver = std::function<void(const Field&, const StepRecord&)>;

/// One Strang step N(dt/2) L(dt) N(dt/2). N is the exact nonlinear phase
/// rotation and L the exact free flow; the spectrum is dealiased after each
/// nonlinear half-step. Negative dt runs the flow backwards.
/// Throws NumericError if the result is not finite.
Field step(const Field& f, double dt, const SolverConfig& cfg);

/// Adaptive evolution with dt = min(dt_init, accuracy_target/||u||_inf^4).
/// The observer sees the initial state, every observer_stride-th accepted
/// step and the final state.
Trajectory evolve(const Field& u0, const SolverConfig& cfg, const StepObserver& observer = {});

/// e^{it} Q(x_j), an exact solution of the focusing equation.
Field soliton_solution(const Grid& g, double t);

/// lambda^{-1/2} f(x/lambda) by trigonometric interpolation; samples that
/// map outside the box are zero. Throws ResolutionError when the profile
/// would leave the box (lambda > 1) or exceed the grid's band (lambda < 1).
Field scale_solution(const Field& f, double lambda);

/// |t|^{-1/2} e^{i x^2/(4t)} conj(f(x/t)), where f is a solution at time 1/t;
/// the result solves the same equation at time t. Throws DomainError for
/// t = 0 and ResolutionError when the chirp is under-resolved at the box edge.
Field pseudoconformal_transform(const Field& f, double t);

struct BlowupEstimate {
  double t_star = 0.0;
  /// Coefficient of determination of the affine fit.
  double fit_quality = 0.0;
  std::size_t samples_used = 0;
};

/// Under the scaling law ||u_x||^{-2} is affine in t; fits the trailing
/// window (at least 8 samples) and returns its root.
/// Throws FitRejected if the window is not strictly increasing.
BlowupEstimate estimate_blowup_time(std::span<const std::pair<double, double>> series,
                                    double window_fraction = 0.3);

}  // namespace qnls
