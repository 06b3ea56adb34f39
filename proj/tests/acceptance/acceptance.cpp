// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: qnls_acceptance [name ...]  (runs only the named criteria)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "../support/oracles.hpp"
#include "qnls/diagnostics.hpp"
#include "qnls/ground_state.hpp"
#include "qnls/i_operator.hpp"
#include "qnls/io/checkpoint.hpp"
#include "qnls/io/config.hpp"
#include "qnls/io/runner.hpp"
#include "qnls/rate_fit.hpp"
#include "qnls/solver.hpp"
#include "qnls/spectral.hpp"

using namespace qnls;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Field scaled(const Field& f, double a) {
  Field out = f;
  for (auto& v : out.values) v *= a;
  return out;
}

// --- ground state -----------------------------------------------------------

Outcome ground_state_constants() {
  const Grid g(4096, 40.0);
  const Field q = sample_Q(g);
  const double exact = std::numbers::sqrt3 * std::numbers::pi / 2.0;
  const double quad = oracle::integrate([](double x) { return oracle::Q(x) * oracle::Q(x); }, -20.0, 20.0);
  const double e_mass = std::max(std::abs(mass(q) - exact), std::abs(quad - exact));
  const double res = ode_residual(g).max_residual;
  const double e_energy = std::abs(energy(q, Sign::focusing));
  const double e_gn = std::abs(gn_slack(q));
  const bool ok = e_mass < 1e-8 && res < 1e-8 && e_energy < 1e-8 && e_gn < 1e-8;
  return {ok, fmt("mass err %.2e, ode residual %.2e, |E(Q)| %.2e, |gn slack| %.2e (tol 1e-8)", e_mass, res,
                  e_energy, e_gn)};
}

Outcome sharp_gn_inequality() {
  const Grid g(2048, 80.0);
  oracle::Gen gen(20240611);
  double worst = 1e300;
  std::string worst_kind;
  for (int i = 0; i < 500; ++i) {
    Field f(g);
    std::string kind;
    switch (i % 5) {
      case 0:
      case 1:
        f = gen.bumps(g, 3.0, 5.0);
        kind = "bumps";
        break;
      case 2:
        f = scaled(sample_Q(g, gen.uniform(-3.0, 3.0), gen.uniform(0.5, 2.0)), gen.uniform(0.2, 3.0));
        kind = "rescaled Q";
        break;
      case 3: {
        f = sample_Q(g);
        const Field p = gen.bumps(g, 1.0, 2.0);
        const double eps = std::pow(10.0, gen.uniform(-6.0, -1.0));
        for (std::size_t j = 0; j < g.size(); ++j) f.values[j] += eps * p.values[j];
        kind = "perturbed Q";
        break;
      }
      default: {
        // random trigonometric polynomial under a Gaussian envelope
        const int modes = gen.integer(1, 60);
        Spectrum c(g);
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (std::abs(g.mode(j)) <= modes) c.coeffs[j] = {gen.normal(), gen.normal()};
        }
        f = from_spectrum(c);
        const double w = gen.uniform(1.0, 6.0);
        for (std::size_t j = 0; j < g.size(); ++j) f.values[j] *= std::exp(-std::pow(g.point(j) / w, 2));
        kind = "enveloped trig polynomial";
        break;
      }
    }
    const double s = gn_slack(f);
    if (s < worst) {
      worst = s;
      worst_kind = kind;
    }
  }
  return {worst >= -1e-8, fmt("min slack %.3e over 500 fields (at %s), tol -1e-8", worst, worst_kind.c_str())};
}

// --- solver -----------------------------------------------------------------

struct SolitonRun {
  double error = 0.0;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
};

SolitonRun soliton_run(double dt) {
  const Grid g(4096, 40.0);
  SolverConfig cfg;
  cfg.dt_init = dt;
  cfg.accuracy_target = 1.0;
  cfg.stop_time = 1.0;
  cfg.snapshot_stride = 1u << 20;
  const Trajectory traj = evolve(soliton_solution(g, 0.0), cfg);
  SolitonRun r;
  r.error = oracle::l2_distance(traj.final_state(), soliton_solution(g, 1.0));
  const auto& r0 = traj.records.front();
  for (const auto& rec : traj.records) {
    r.mass_drift = std::max(r.mass_drift, std::abs(rec.mass - r0.mass));
    r.energy_drift = std::max(r.energy_drift, std::abs(rec.energy - r0.energy));
  }
  return r;
}

Outcome soliton_regression() {
  const SolitonRun fine = soliton_run(std::ldexp(1.0, -13));
  const SolitonRun coarse = soliton_run(std::ldexp(1.0, -12));
  const double ratio = coarse.error / fine.error;
  const bool ok = fine.error < 1e-6 && fine.mass_drift < 1e-10 && fine.energy_drift < 1e-8 && ratio >= 3.5 &&
                  ratio <= 4.5;
  return {ok, fmt("L2 err %.2e (<1e-6), mass drift %.1e (<1e-10), energy drift %.1e (<1e-8), halving ratio %.3f "
                  "in [3.5,4.5]",
                  fine.error, fine.mass_drift, fine.energy_drift, ratio)};
}

Outcome scaling_commutation() {
  const Grid g(8192, 80.0);
  Field u0(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    u0.values[j] = std::exp(-x * x) * std::polar(1.0, 0.5 * x);
  }
  const double T = 0.5, h = 1e-3;
  auto flow = [](const Field& u, double t_end, double dt) {
    SolverConfig cfg;
    cfg.dt_init = dt;
    cfg.accuracy_target = 1e3;
    cfg.stop_time = t_end;
    cfg.snapshot_stride = 1u << 20;
    return evolve(u, cfg).final_state();
  };
  const Field base = flow(u0, T, h);
  std::string detail;
  bool ok = true;
  for (double lambda : {0.5, 2.0}) {
    const Field a = scale_solution(base, lambda);
    const Field b = flow(scale_solution(u0, lambda), lambda * lambda * T, lambda * lambda * h);
    const double err = oracle::l2_distance(a, b);
    ok = ok && err < 1e-5;
    detail += fmt("lambda=%g: %.2e  ", lambda, err);
  }
  return {ok, detail + "(tol 1e-5)"};
}

Outcome pseudoconformal() {
  double unit_err = 0.0;
  {
    const Grid g(2048, 40.0);
    oracle::Gen gen(77);
    for (int i = 0; i < 40; ++i) {
      const Field f = gen.bumps(g, 2.0, 3.0);
      for (double t : {0.5, 0.8, 1.0, -0.5, -1.0}) {
        const double m0 = mass(f);
        unit_err = std::max(unit_err, std::abs(mass(pseudoconformal_transform(f, t)) - m0) / m0);
      }
    }
  }
  const Grid g(8192, 40.0);
  const double t0 = 1.0, h = 1e-3;
  auto v = [&](double t) { return pseudoconformal_transform(soliton_solution(g, 1.0 / t), t); };
  const Field vp = v(t0 + h), vm = v(t0 - h), v0 = v(t0);
  const Field vxx = derivative(v0, 2);
  double acc = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const cplx vt = (vp.values[j] - vm.values[j]) / (2.0 * h);
    const cplx u = v0.values[j];
    const cplx r = cplx(0.0, 1.0) * vt + vxx.values[j] + std::norm(u) * std::norm(u) * u;
    acc += std::norm(r);
  }
  const double residual = std::sqrt(acc * g.spacing());
  const bool ok = unit_err < 1e-8 && residual < 1e-4;
  return {ok, fmt("max relative mass change %.2e (tol 1e-8), ||i v_t + v_xx + |v|^4 v||_2 = %.2e at t=1 (tol 1e-4)",
                  unit_err, residual)};
}

// --- I-operator -------------------------------------------------------------

Field q_plus_ripple(const Grid& g, double freq) {
  Field u(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    u.values[j] = eval_Q(x) + 0.3 * std::exp(-x * x) * std::polar(1.0, freq * x);
  }
  return u;
}

Outcome modified_energy_flux_identity() {
  const Grid g(4096, 40.0);
  SolverConfig cfg;
  cfg.stop_time = 0.05;
  cfg.accuracy_target = 4e-4;
  cfg.dealias_fraction = 1.0;
  cfg.tail_threshold = 0.0;
  cfg.snapshot_stride = 1;
  const Trajectory traj = evolve(q_plus_ripple(g, 80.0), cfg);
  double dt_max = 0.0;
  for (const auto& r : traj.records) dt_max = std::max(dt_max, r.dt);
  const double steps = static_cast<double>(traj.records.size() - 1);
  const double tol = 5.0 * dt_max * dt_max * steps;
  bool ok = true;
  std::string detail;
  for (double N : {16.0, 64.0}) {
    const IMultiplier M{N, 0.95};
    const double de = modified_energy(traj.final_state(), M, Sign::focusing).energy -
                      modified_energy(traj.snapshots.front(), M, Sign::focusing).energy;
    const double flux = increment_flux(traj.snapshots, M, Sign::focusing);
    ok = ok && std::abs(de - flux) <= tol;
    detail += fmt("N=%g: dE %.4e flux %.4e diff %.1e; ", N, de, flux, std::abs(de - flux));
  }
  return {ok, detail + fmt("tol 5 dt^2 steps = %.2e (%g steps)", tol, steps)};
}

Outcome modified_energy_decay() {
  const Grid g(4096, 40.0);
  SolverConfig cfg;
  cfg.accuracy_target = 1e-3;
  const std::vector<double> Ns{8, 16, 32, 64};
  const auto rows = decay_sweep(q_plus_ripple(g, 40.0), 0.95, Ns, 0.05, cfg);
  bool ok = true;
  std::string detail = "increments";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail += fmt(" %.3e", rows[i].increment);
    if (i > 0 && rows[i].increment > 2.0 * rows[i - 1].increment) ok = false;
  }
  const double last_ratio = rows[rows.size() - 2].increment / rows.back().increment;
  ok = ok && last_ratio >= 2.0;
  return {ok, detail + fmt("; N=32/N=64 ratio %.3g (>= 2)", last_ratio)};
}

Outcome exponent_arithmetic() {
  bool ok = p_exponent(1.0) == 0.0 && p_exponent(10.0 / 11.0) == 2.0;
  int mismatches = 0;
  for (int i = 1; i <= 1000; ++i) {
    const double s = 0.8 + 0.2 * i / 1000.0;
    if ((p_exponent(s) < 2.0) != (s > 10.0 / 11.0)) ++mismatches;
  }
  ok = ok && mismatches == 0;
  return {ok, fmt("p(1)=%g, p(10/11)=%.17g, lattice mismatches %d/1000", p_exponent(1.0), p_exponent(10.0 / 11.0),
                  mismatches)};
}

// --- blow-up ----------------------------------------------------------------

const Trajectory& blowup_run(std::size_t n) {
  static std::map<std::size_t, Trajectory> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const Grid g(n, 40.0);
  SolverConfig cfg;
  cfg.stop_time = 1.0;
  cfg.snapshot_stride = 50;
  return cache.emplace(n, evolve(scaled(sample_Q(g), 1.2), cfg)).first->second;
}

struct BlowupFit {
  RateFit free_fit;
  std::size_t tail_samples = 0;
  double tail_start = 0.0;
};

BlowupFit fit_blowup(const Trajectory& traj) {
  const auto series = traj.gradnorm_series();
  const auto tail = monotone_tail(series);
  const BlowupEstimate est = estimate_blowup_time(tail);
  const double last = tail.back().first;
  const double hint = est.t_star > last ? est.t_star : last + 1e-3;
  return {fit_rate(tail, RateModel::free_exponent, hint), tail.size(), tail.front().first};
}

Outcome blowup_phenomenology() {
  const Grid g(8192, 40.0);
  const double e0 = energy(scaled(sample_Q(g), 1.2), Sign::focusing);
  const double e_ref = -1.0515392986;
  const Trajectory& traj = blowup_run(8192);
  const bool fuse = traj.termination == Termination::gradnorm_exceeded ||
                    traj.termination == Termination::resolution_exceeded;
  const BlowupFit bf = fit_blowup(traj);
  const double T = bf.free_fit.T_star, alpha = bf.free_fit.alpha;
  const IMultiplier M{16.0, 0.95};
  double pmin = 1e300, pmax = 0.0;
  std::size_t count = 0;
  for (const auto& snap : traj.snapshots) {
    if (snap.time < bf.tail_start || snap.time >= T) continue;
    const double p = modified_sobolev_norm(snap, M) * std::pow(T - snap.time, 0.95 / 2.0);
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
    ++count;
  }
  const bool ok = std::abs(e0 - e_ref) < 1e-6 && fuse && alpha >= 0.45 && alpha <= 0.75 && count >= 10 &&
                  pmin > 0.0 && pmin >= 0.2 * pmax;
  return {ok, fmt("E(1.2Q)=%.10f (ref %.10f), stop %s at t=%.6f after %zu steps; free fit T*=%.6f alpha=%.4f "
                  "(in [0.45,0.75], %zu samples); sigma (T*-t)^(s/2) in [%.3f, %.3f] over %zu snapshots "
                  "(min >= 0.2 max)",
                  e0, e_ref, std::string(to_string(traj.termination)).c_str(), traj.final_state().time,
                  traj.records.size() - 1, T, alpha, bf.tail_samples, pmin, pmax, count)};
}

struct WindowSummary {
  double running_max = 0.0;
  double last_rho = 0.0;
  double max_center = 0.0;
  double dx = 0.0;
  std::size_t rows = 0;
};

WindowSummary window_summary(std::size_t n) {
  const Trajectory& traj = blowup_run(n);
  const BlowupFit bf = fit_blowup(traj);
  const auto rows = concentration_window_series(traj.snapshots, bf.free_fit.T_star, 0.95,
                                                GammaProfile::log_e_plus_inverse);
  WindowSummary s;
  s.dx = traj.final_state().grid.spacing();
  for (const auto& r : rows) {
    if (r.resolution_limited) continue;
    s.running_max = std::max(s.running_max, r.rho);
    s.last_rho = r.rho;
    s.max_center = std::max(s.max_center, std::abs(r.y));
    ++s.rows;
  }
  return s;
}

Outcome concentration_window() {
  const double M = GroundStateConstants::mass_squared;
  const WindowSummary a = window_summary(8192);
  const WindowSummary b = window_summary(16384);
  const double gap_a = std::abs(a.last_rho - M) / M, gap_b = std::abs(b.last_rho - M) / M;
  const bool ok = a.rows > 0 && b.rows > 0 && a.running_max >= 0.8 * M && b.running_max >= 0.8 * M &&
                  gap_b < gap_a && a.max_center < 5.0 * a.dx && b.max_center < 5.0 * b.dx;
  return {ok, fmt("n=8192: max rho/M %.4f, final rho/M %.4f, max|y|/dx %.1f; n=16384: max rho/M %.4f, final rho/M "
                  "%.4f, max|y|/dx %.1f; gap %.4f -> %.4f",
                  a.running_max / M, a.last_rho / M, a.max_center / a.dx, b.running_max / M, b.last_rho / M,
                  b.max_center / b.dx, gap_a, gap_b)};
}

// --- rho machinery ----------------------------------------------------------

double k_emp(std::size_t n, std::uint64_t seed) {
  const Grid g(n, 64.0);
  oracle::Gen gen(seed);
  double k = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Field f = gen.bumps(g, 2.0, 5.0);
    for (double w : {0.25, 1.0, 4.0}) k = std::max(k, lemma5_ratio(f, w));
  }
  return k;
}

Outcome rho_machinery() {
  const std::vector<double> widths{0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  const double holder_bound = std::sqrt(2.0);
  bool monotone = true;
  double qmax = 0.0;
  {
    const Grid g(2048, 40.0);
    oracle::Gen gen(4242);
    for (int i = 0; i < 200; ++i) {
      const Field f = gen.bumps(g, 2.0, 5.0);
      const HolderReport rep = rho_monotone_holder_check(f, widths, 4.0);
      monotone = monotone && rep.monotone;
      qmax = std::max(qmax, rep.max_quotient);
    }
  }
  double q_coarse = 0.0, q_fine = 0.0;
  for (std::size_t n : {2048u, 8192u}) {
    const Grid g(n, 40.0);
    const double q = rho_monotone_holder_check(sample_Q(g), widths, 4.0).max_quotient;
    (n == 2048 ? q_coarse : q_fine) = q;
  }
  const double q_change = std::abs(q_fine - q_coarse) / q_fine;

  const Grid g(8192, 64.0);
  const double base = lemma5_ratio(sample_Q(g), 1.0);
  double inv_err = 0.0;
  for (double lambda : {0.5, 2.0}) {
    const double r = lemma5_ratio(sample_Q(g, 0.0, lambda), lambda);
    inv_err = std::max(inv_err, std::abs(r - base) / base);
  }
  const double k1 = k_emp(2048, 99), k2 = k_emp(4096, 99);
  const double k_change = std::abs(k2 - k1) / k1;

  const bool ok = monotone && qmax <= holder_bound * (1.0 + 1e-6) && q_change < 0.1 && inv_err < 1e-6 &&
                  k_change < 0.2;
  return {ok, fmt("monotone %s; max Holder quotient %.4f (<= sqrt 2), Q quotient change 2048->8192 %.1e; "
                  "scale invariance err %.1e (tol 1e-6); K_emp %.5f -> %.5f (change %.1e < 0.2)",
                  monotone ? "yes" : "NO", qmax, q_change, inv_err, k1, k2, k_change)};
}

// --- determinism and persistence ---------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism_and_persistence() {
  const fs::path dir = fs::temp_directory_path() / fmt("qnls_acceptance_%d", static_cast<int>(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  io::RunConfig cfg;
  cfg.n = 1024;
  cfg.L = 40.0;
  cfg.initial_data = io::RippleData{0.3, 10.0};
  cfg.solver.dt_init = std::ldexp(1.0, -12);
  cfg.solver.accuracy_target = 1.0;
  cfg.solver.stop_time = 1.0;
  cfg.diagnostics.N_list = {8.0, 32.0};
  cfg.diagnostics.widths = {0.5, 2.0};
  cfg.diagnostics.stride = 16;
  std::ostringstream sink;

  cfg.output.csv_path = dir / "a.csv";
  cfg.output.checkpoint_dir = dir / "full";
  const auto full = io::run(cfg, sink);
  cfg.output.csv_path = dir / "b.csv";
  io::run(cfg, sink);
  const bool identical = slurp(dir / "a.csv") == slurp(dir / "b.csv") && !slurp(dir / "a.csv").empty();

  cfg.output.csv_path.reset();
  cfg.output.checkpoint_dir = dir / "half";
  cfg.solver.stop_time = 0.5;
  io::run(cfg, sink);
  const Field half = io::load_checkpoint(dir / "half" / "checkpoint_final.bin");
  const bool exact_io = io::decode_checkpoint(io::encode_checkpoint(half)).values == half.values;
  cfg.initial_data = io::CheckpointData{dir / "half" / "checkpoint_final.bin"};
  cfg.output.checkpoint_dir = dir / "resumed";
  cfg.solver.stop_time = 1.0;
  const auto resumed = io::run(cfg, sink);
  const double err = oracle::l2_distance(*full.final_state, *resumed.final_state);
  fs::remove_all(dir);
  const bool ok = identical && exact_io && err < 1e-12 && half.time == 0.5 &&
                  full.final_state->time == resumed.final_state->time;
  return {ok, fmt("repeat CSV bit-identical: %s; checkpoint encode/decode exact: %s; restart at t=0.5 vs "
                  "uninterrupted, L2 diff %.1e (tol 1e-12)",
                  identical ? "yes" : "NO", exact_io ? "yes" : "NO", err)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"ground_state_constants", 1.0, ground_state_constants},
      {"sharp_gn_inequality", 10.0, sharp_gn_inequality},
      {"soliton_regression", 30.0, soliton_regression},
      {"scaling_commutation", 60.0, scaling_commutation},
      {"pseudoconformal", 60.0, pseudoconformal},
      {"modified_energy_flux_identity", 120.0, modified_energy_flux_identity},
      {"modified_energy_decay", 300.0, modified_energy_decay},
      {"exponent_arithmetic", 1.0, exponent_arithmetic},
      {"blowup_phenomenology", 600.0, blowup_phenomenology},
      {"concentration_window", 1200.0, concentration_window},
      {"rho_machinery", 300.0, rho_machinery},
      {"determinism_and_persistence", 60.0, determinism_and_persistence},
  };
  std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs <= c.budget_seconds;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail
              << fmt(" [%.2f s, budget %g s]", secs, c.budget_seconds) << std::endl;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
