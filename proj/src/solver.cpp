#include "qnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "fft.hpp"
#include "qnls/errors.hpp"
#include "qnls/ground_state.hpp"
#include "qnls/spectral.hpp"

namespace qnls {

void SolverConfig::validate() const {
  if (!(dt_init > 0.0)) throw ConfigError("solver.dt_init must be positive");
  if (!(dt_min > 0.0) || !(dt_min < dt_init)) throw ConfigError("solver.dt_min must satisfy 0 < dt_min < dt_init");
  if (!(accuracy_target > 0.0)) throw ConfigError("solver.accuracy_target must be positive");
  if (stop_gradnorm && !(*stop_gradnorm > 0.0)) throw ConfigError("solver.stop_gradnorm must be positive");
  if (!(stop_gradnorm_factor > 1.0)) throw ConfigError("solver.stop_gradnorm_factor must exceed 1");
  if (!std::isfinite(stop_time)) throw ConfigError("solver.stop_time must be finite");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw ConfigError("solver.dealias_fraction must lie in (0, 1]");
  }
  if (snapshot_stride == 0) throw ConfigError("solver.snapshot_stride must be positive");
  if (observer_stride == 0) throw ConfigError("solver.observer_stride must be positive");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_stop_time: return "reached_stop_time";
    case Termination::gradnorm_exceeded: return "gradnorm_exceeded";
    case Termination::resolution_exceeded: return "resolution_exceeded";
    case Termination::dt_underflow: return "dt_underflow";
  }
  return "unknown";
}

std::vector<std::pair<double, double>> Trajectory::gradnorm_series() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(records.size());
  for (const auto& r : records) out.emplace_back(r.time, r.gradnorm);
  return out;
}

namespace {

// Strang stepper with preallocated buffers. After advance() the buffer
// spectrum_ holds the (dealiased, normalized) spectrum of the new state.
class SplitStepper {
 public:
  SplitStepper(const Grid& g, const SolverConfig& cfg)
      : grid_(g),
        cfg_(cfg),
        coupling_(sign_factor(cfg.sign) * cfg.nonlinear_scale),
        spectrum_(g.size()),
        scratch_(g.size()),
        propagator_(g.size()) {
    const double n = static_cast<double>(g.size());
    to_coeffs_ = std::sqrt(g.length()) / n;
  }

  void advance(std::vector<cplx>& u, double dt) {
    nonlinear(u, 0.5 * dt);
    detail::fft_forward(u, scratch_);
    update_propagator(dt);
    dealias_in_place(grid_, scratch_, cfg_.dealias_fraction);
    for (std::size_t j = 0; j < u.size(); ++j) scratch_[j] *= propagator_[j];
    detail::fft_backward(scratch_, u);
    // Forward and backward transforms together scale by n.
    const double n_inv = 1.0 / static_cast<double>(u.size());
    for (auto& v : u) v *= n_inv;
    nonlinear(u, 0.5 * dt);
    refresh_spectrum(u);
  }

  // With project set, u is replaced by its dealiased projection.
  void refresh_spectrum(std::vector<cplx>& u, bool project = true) {
    detail::fft_forward(u, spectrum_);
    if (project && cfg_.dealias_fraction < 1.0) {
      dealias_in_place(grid_, spectrum_, cfg_.dealias_fraction);
      detail::fft_backward(spectrum_, u);
      const double n_inv = 1.0 / static_cast<double>(u.size());
      for (auto& v : u) v *= n_inv;
    }
    for (auto& c : spectrum_) c *= to_coeffs_;
  }

  std::span<const cplx> spectrum() const { return spectrum_; }

 private:
  void nonlinear(std::vector<cplx>& u, double tau) const {
    if (coupling_ == 0.0) return;
    const double c = coupling_ * tau;
    for (auto& v : u) {
      const double a2 = std::norm(v);
      v *= std::polar(1.0, c * a2 * a2);
    }
  }

  void update_propagator(double dt) {
    if (dt == propagator_dt_) return;
    const auto k = grid_.wavenumbers();
    for (std::size_t j = 0; j < k.size(); ++j) propagator_[j] = std::polar(1.0, -k[j] * k[j] * dt);
    propagator_dt_ = dt;
  }

  Grid grid_;
  SolverConfig cfg_;
  double coupling_;
  double to_coeffs_ = 1.0;
  std::vector<cplx> spectrum_;
  std::vector<cplx> scratch_;
  std::vector<cplx> propagator_;
  double propagator_dt_ = std::numeric_limits<double>::quiet_NaN();
};

bool all_finite(std::span<const cplx> v) {
  return std::all_of(v.begin(), v.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

StepRecord make_step_record(const Grid& g, std::span<const cplx> u, std::span<const cplx> spectrum,
                            const SolverConfig& cfg) {
  StepRecord r;
  const double dx = g.spacing();
  double m = 0.0, l6 = 0.0, peak = 0.0;
  for (auto z : u) {
    const double a2 = std::norm(z);
    m += a2;
    l6 += a2 * a2 * a2;
    peak = std::max(peak, a2);
  }
  r.mass = m * dx;
  r.max_amp = std::sqrt(peak);
  const auto k = g.wavenumbers();
  const double cutoff = cfg.dealias_fraction * static_cast<double>(g.size()) / 2.0;
  double grad2 = 0.0, total = 0.0, tail = 0.0;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double p = std::norm(spectrum[j]);
    total += p;
    if (std::abs(static_cast<double>(g.mode(j))) > 0.9 * cutoff) tail += p;
    if (j != g.nyquist_index()) grad2 += k[j] * k[j] * p;
  }
  r.gradnorm = std::sqrt(grad2);
  r.tail_fraction = total > 0.0 ? tail / total : 0.0;
  r.energy = 0.5 * grad2 - sign_factor(cfg.sign) * l6 * dx / 6.0;
  return r;
}

double max_abs4(std::span<const cplx> u) {
  double peak = 0.0;
  for (auto z : u) peak = std::max(peak, std::norm(z));
  return peak * peak;
}

}  // namespace

Field step(const Field& f, double dt, const SolverConfig& cfg) {
  if (dt == 0.0 || !std::isfinite(dt)) throw ConfigError("step: dt must be finite and nonzero");
  if (!f.is_finite()) throw NumericError("step: non-finite input field");
  SplitStepper stepper(f.grid, cfg);
  Field out = f;
  stepper.advance(out.values, dt);
  if (!out.is_finite()) throw NumericError("step: non-finite result, dt too large");
  out.time = f.time + dt;
  return out;
}

Trajectory evolve(const Field& u0, const SolverConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  if (!u0.is_finite()) throw NumericError("evolve: non-finite initial field");
  const Grid& g = u0.grid;
  SplitStepper stepper(g, cfg);

  Trajectory traj;
  std::vector<cplx> u = u0.values;
  double t = u0.time;
  const double t_end = cfg.stop_time;
  stepper.refresh_spectrum(u, false);

  StepRecord rec = make_step_record(g, u, stepper.spectrum(), cfg);
  rec.time = t;
  traj.records.push_back(rec);
  traj.stop_gradnorm = cfg.stop_gradnorm.value_or(cfg.stop_gradnorm_factor * rec.gradnorm);
  traj.snapshots.emplace_back(g, u, t);
  if (observer) observer(traj.snapshots.back(), rec);

  std::deque<Field> tail;
  std::size_t steps = 0;
  bool final_observed = true;
  auto stop = [&](Termination why) { traj.termination = why; };

  while (true) {
    const double remaining = t_end - t;
    if (remaining <= 1e-14 * std::max(1.0, std::abs(t_end))) {
      stop(Termination::reached_stop_time);
      break;
    }
    const double a4 = max_abs4(u);
    const double adaptive = a4 > 0.0 ? cfg.accuracy_target / a4 : cfg.dt_init;
    if (adaptive < cfg.dt_min) {
      stop(Termination::dt_underflow);
      break;
    }
    double dt = std::min(cfg.dt_init, adaptive);
    const bool last = dt >= remaining;
    if (last) dt = remaining;

    stepper.advance(u, dt);
    if (!all_finite(u)) throw NumericError("evolve: non-finite state after step " + std::to_string(steps + 1));
    t = last ? t_end : t + dt;
    ++steps;

    rec = make_step_record(g, u, stepper.spectrum(), cfg);
    rec.step = steps;
    rec.time = t;
    rec.dt = dt;
    traj.records.push_back(rec);

    const bool blew_up = rec.gradnorm > traj.stop_gradnorm;
    const bool unresolved = cfg.tail_threshold > 0.0 && rec.tail_fraction > cfg.tail_threshold;
    const bool done = last || blew_up || unresolved;

    if (steps % cfg.snapshot_stride == 0 && !done) traj.snapshots.emplace_back(g, u, t);
    if (cfg.tail_snapshots > 0) {
      tail.emplace_back(g, u, t);
      if (tail.size() > cfg.tail_snapshots) tail.pop_front();
    }
    final_observed = steps % cfg.observer_stride == 0;
    if (observer && final_observed) observer(Field(g, u, t), rec);

    if (blew_up || unresolved) {
      stop(blew_up ? Termination::gradnorm_exceeded : Termination::resolution_exceeded);
      // Densify: every step in the tail buffer that is newer than the last
      // stored snapshot joins the snapshot list.
      const double last_time = traj.snapshots.back().time;
      for (auto& f : tail) {
        if (f.time > last_time) traj.snapshots.push_back(std::move(f));
      }
      if (traj.snapshots.back().time != t) traj.snapshots.emplace_back(g, u, t);
      break;
    }
    if (last) {
      stop(Termination::reached_stop_time);
      break;
    }
  }

  if (traj.snapshots.back().time != t) traj.snapshots.emplace_back(g, u, t);
  if (observer && !final_observed) observer(traj.snapshots.back(), traj.records.back());
  return traj;
}

Field soliton_solution(const Grid& g, double t) {
  Field f = sample_Q(g);
  const cplx phase = std::polar(1.0, t);
  for (auto& v : f.values) v *= phase;
  f.time = t;
  return f;
}

namespace {

// Relative spectral mass above |k| > k_limit.
double spectral_mass_above(const Field& f, double k_limit) {
  const Spectrum s = to_spectrum(f);
  const auto k = f.grid.wavenumbers();
  double total = 0.0, above = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double p = std::norm(s.coeffs[j]);
    total += p;
    if (std::abs(k[j]) > k_limit) above += p;
  }
  return total > 0.0 ? above / total : 0.0;
}

// Relative mass of f at |x| >= half_width.
double mass_outside(const Field& f, double half_width) {
  double total = 0.0, outside = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double p = std::norm(f.values[j]);
    total += p;
    if (std::abs(f.grid.point(j)) >= half_width) outside += p;
  }
  return total > 0.0 ? outside / total : 0.0;
}

// f evaluated at x_j / a for every grid point, zero where x_j / a leaves the box.
std::vector<cplx> sample_dilated(const Field& f, double a) {
  const Grid& g = f.grid;
  const double half = 0.5 * g.length();
  std::vector<double> inside_points;
  std::vector<std::size_t> inside_index;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double y = g.point(j) / a;
    if (y >= -half && y < half) {
      inside_points.push_back(y);
      inside_index.push_back(j);
    }
  }
  const auto vals = interpolate(f, inside_points);
  std::vector<cplx> out(g.size(), cplx(0.0));
  for (std::size_t i = 0; i < vals.size(); ++i) out[inside_index[i]] = vals[i];
  return out;
}

constexpr double kEscapeTolerance = 1e-12;

}  // namespace

Field scale_solution(const Field& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("scale_solution: lambda must be positive");
  if (lambda == 1.0) return f;
  const Grid& g = f.grid;
  if (lambda > 1.0 && mass_outside(f, 0.5 * g.length() / lambda) > kEscapeTolerance) {
    throw ResolutionError("scale_solution: rescaled profile leaves the box");
  }
  if (lambda < 1.0 && spectral_mass_above(f, lambda * g.max_wavenumber()) > kEscapeTolerance) {
    throw ResolutionError("scale_solution: rescaled profile exceeds the grid band");
  }
  Field out(g, sample_dilated(f, lambda), f.time);
  const double amp = 1.0 / std::sqrt(lambda);
  for (auto& v : out.values) v *= amp;
  return out;
}

Field pseudoconformal_transform(const Field& f, double t) {
  if (t == 0.0 || !std::isfinite(t)) throw DomainError("pseudoconformal_transform: t must be finite and nonzero");
  const Grid& g = f.grid;
  const double edge = 0.5 * g.length();
  if (edge * g.spacing() / (4.0 * std::abs(t)) > std::numbers::pi / 4.0) {
    throw ResolutionError("pseudoconformal_transform: chirp x^2/(4t) under-resolved at the box edge");
  }
  Field out(g, sample_dilated(f, t), t);
  const double amp = 1.0 / std::sqrt(std::abs(t));
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j);
    out.values[j] = amp * std::polar(1.0, x * x / (4.0 * t)) * std::conj(out.values[j]);
  }
  return out;
}

BlowupEstimate estimate_blowup_time(std::span<const std::pair<double, double>> series, double window_fraction) {
  constexpr std::size_t kMinSamples = 8;
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw ConfigError("estimate_blowup_time: window fraction must lie in (0, 1]");
  }
  if (series.size() < kMinSamples) throw FitRejected("estimate_blowup_time: need at least 8 samples");
  const auto want = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(series.size())));
  const std::size_t count = std::clamp(want, kMinSamples, series.size());
  const auto window = series.subspan(series.size() - count);
  for (std::size_t i = 1; i < window.size(); ++i) {
    if (!(window[i].second > window[i - 1].second) || !(window[i].first > window[i - 1].first)) {
      throw FitRejected("estimate_blowup_time: gradient norm is not strictly increasing in the fitted tail");
    }
  }
  // Least squares y = a t + b with y = g^{-2}, centered for conditioning.
  double tm = 0.0, ym = 0.0;
  for (const auto& [t, gn] : window) {
    tm += t;
    ym += 1.0 / (gn * gn);
  }
  tm /= static_cast<double>(count);
  ym /= static_cast<double>(count);
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (const auto& [t, gn] : window) {
    const double dt = t - tm, dy = 1.0 / (gn * gn) - ym;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt == 0.0) throw FitRejected("estimate_blowup_time: degenerate time samples");
  const double a = sty / stt;
  if (!(a < 0.0)) throw FitRejected("estimate_blowup_time: ||u_x||^{-2} does not decrease");
  BlowupEstimate est;
  est.t_star = tm - ym / a;
  est.fit_quality = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  est.samples_used = count;
  return est;
}

}  // namespace qnls
