#include "qnls/io/validation.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "qnls/ground_state.hpp"
#include "qnls/i_operator.hpp"
#include "qnls/io/csv.hpp"
#include "qnls/solver.hpp"
#include "qnls/spectral.hpp"

namespace qnls::io {

namespace {

using GS = GroundStateConstants;

CheckResult bound(const char* what, double value, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s = %.3e (tolerance %.1e)", what, value, tol);
  return {std::abs(value) < tol, buf};
}

Grid grid_for(std::size_t n) { return Grid(n, kValidationLength); }

CheckResult parseval(std::size_t n) {
  const Grid g = grid_for(n);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Field f(g, 0.0);
  for (auto& v : f.values) v = {normal(rng), normal(rng)};
  const Spectrum s = to_spectrum(f);
  double spec = 0.0;
  for (auto c : s.coeffs) spec += std::norm(c);
  const double m = mass(f);
  return bound("relative Parseval defect", (spec - m) / m, 1e-12);
}

CheckResult q_mass(std::size_t n) {
  return bound("||Q||^2 - sqrt(3) pi/2", mass(sample_Q(grid_for(n))) - GS::mass_squared, 1e-8);
}

CheckResult pohozaev(std::size_t n) {
  const Field q = sample_Q_periodic(grid_for(n));
  const double grad2 = 2.0 * kinetic_energy(q);
  const double l6 = 6.0 * potential_energy(q);
  const double defect = std::max(std::abs(grad2 - l6 / 3.0), std::abs(mass(q) - 2.0 * l6 / 3.0));
  return bound("Pohozaev defect", defect, 1e-8);
}

CheckResult energy_zero(std::size_t n) { return bound("E(Q)", energy(sample_Q(grid_for(n)), Sign::focusing), 1e-8); }

CheckResult gn_equality(std::size_t n) { return bound("GN slack at Q", gn_slack(sample_Q(grid_for(n))), 1e-8); }

CheckResult ode_check(std::size_t n) {
  const auto r = ode_residual(grid_for(n));
  CheckResult res = bound("max |Q'' - Q + Q^5|", r.max_residual, 1e-8);
  if (r.under_resolved) {
    res.passed = false;
    res.detail += ", grid flagged under-resolved";
  }
  return res;
}

CheckResult soliton_regression(std::size_t n) {
  const Grid g = grid_for(n);
  SolverConfig cfg;
  cfg.stop_time = 1.0;
  cfg.dt_init = std::ldexp(1.0, -13);
  cfg.tail_snapshots = 0;
  const Trajectory traj = evolve(soliton_solution(g, 0.0), cfg);
  const Field exact = soliton_solution(g, traj.final_state().time);
  Field diff = traj.final_state();
  for (std::size_t j = 0; j < diff.size(); ++j) diff.values[j] -= exact.values[j];
  const double err = std::sqrt(mass(diff));
  const double drift = traj.records.back().mass - traj.records.front().mass;
  char buf[160];
  std::snprintf(buf, sizeof buf, "L2 error %.3e (tol 1e-6), mass drift %.3e (tol 1e-10), termination %s", err, drift,
                std::string(to_string(traj.termination)).c_str());
  return {err < 1e-6 && std::abs(drift) < 1e-10 && traj.termination == Termination::reached_stop_time, buf};
}

CheckResult flux_identity(std::size_t n) {
  const Grid g = grid_for(n);
  Field u0(g, 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    u0.values[j] = eval_Q(x) + 0.3 * std::exp(-x * x) * std::polar(1.0, 80.0 * x);
  }
  SolverConfig cfg;
  cfg.stop_time = 0.05;
  cfg.accuracy_target = 4e-4;
  cfg.dealias_fraction = 1.0;
  cfg.tail_threshold = 0.0;
  cfg.snapshot_stride = 1;
  const Trajectory traj = evolve(u0, cfg);
  double dt_max = 0.0;
  for (const auto& r : traj.records) dt_max = std::max(dt_max, r.dt);
  const double steps = static_cast<double>(traj.records.size() - 1);
  const double tol = 5.0 * dt_max * dt_max * steps;
  double worst = 0.0;
  for (double N : {16.0, 64.0}) {
    const IMultiplier M{N, 0.95};
    const double de = modified_energy(traj.final_state(), M, Sign::focusing).energy -
                      modified_energy(traj.snapshots.front(), M, Sign::focusing).energy;
    const double flux = increment_flux(traj.snapshots, M, Sign::focusing);
    worst = std::max(worst, std::abs(de - flux));
  }
  return bound("max |dE(Iu) - flux| over N in {16, 64}", worst, tol);
}

}  // namespace

const std::vector<ValidationCheck>& validation_checks() {
  static const std::vector<ValidationCheck> checks{
      {"parseval", "sum |u|^2 dx equals sum |c_k|^2 for a random field", parseval},
      {"q_mass", "||Q||_2^2 = sqrt(3) pi / 2", q_mass},
      {"pohozaev", "int Q'^2 = int Q^6 / 3 and int Q^2 = 2/3 int Q^6", pohozaev},
      {"energy_zero", "E(Q) = 0", energy_zero},
      {"gn_equality", "Gagliardo-Nirenberg equality at Q", gn_equality},
      {"ode_residual", "Q'' - Q + Q^5 = 0 on the grid", ode_check},
      {"soliton_regression", "e^{it} Q reproduced to t = 1", soliton_regression},
      {"flux_identity", "E(Iu) increment equals the integrated flux on a rough run", flux_identity},
  };
  return checks;
}

bool run_validation(std::size_t n, std::ostream& report) {
  bool ok = true;
  for (const auto& c : validation_checks()) {
    CheckResult r;
    try {
      r = c.run(n);
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    ok = ok && r.passed;
    report << (r.passed ? "PASS " : "FAIL ") << c.name << ": " << r.detail << '\n';
  }
  report << (ok ? "all checks passed" : "validation failed") << '\n';
  return ok;
}

}  // namespace qnls::io
