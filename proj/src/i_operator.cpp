#include "qnls/i_operator.hpp"

#include <cmath>
#include <numbers>

#include "qnls/errors.hpp"
#include "qnls/ground_state.hpp"
#include "qnls/spectral.hpp"
#include "spectral_detail.hpp"

namespace qnls {

void IMultiplier::validate() const {
  if (!(N > 0.0) || !std::isfinite(N)) throw ConfigError("multiplier N must be positive");
  if (!(s > 0.0 && s < 1.0)) throw ConfigError("multiplier s must lie in (0, 1)");
}

double multiplier_value(const IMultiplier& M, double xi) {
  const double a = std::abs(xi);
  if (a <= M.N) return 1.0;
  if (a >= 2.0 * M.N) return std::pow(a / M.N, M.s - 1.0);
  const double tau = std::log2(a / M.N);
  return std::exp((M.s - 1.0) * std::numbers::ln2 * tau * tau * (2.0 - tau));
}

namespace {

std::vector<double> multiplier_table(const Grid& g, const IMultiplier& M) {
  const auto k = g.wavenumbers();
  std::vector<double> m(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) m[j] = multiplier_value(M, k[j]);
  return m;
}

double weighted_norm(const Spectrum& s, double order) {
  double acc = 0.0;
  const auto k = s.grid.wavenumbers();
  for (std::size_t j = 0; j < s.size(); ++j) acc += std::pow(1.0 + std::abs(k[j]), 2.0 * order) * std::norm(s.coeffs[j]);
  return std::sqrt(acc);
}

}  // namespace

Field apply_I(const Field& f, const IMultiplier& M) {
  M.validate();
  Spectrum s = to_spectrum(f);
  const auto m = multiplier_table(f.grid, M);
  for (std::size_t j = 0; j < s.size(); ++j) s.coeffs[j] *= m[j];
  return from_spectrum(s);
}

std::pair<double, double> smoothing_ratio_check(const Field& f, const IMultiplier& M, double s0) {
  M.validate();
  Spectrum u = to_spectrum(f);
  const double base = weighted_norm(u, s0);
  if (base == 0.0) throw UndefinedInputError("smoothing_ratio_check: zero field");
  const auto m = multiplier_table(f.grid, M);
  for (std::size_t j = 0; j < u.size(); ++j) u.coeffs[j] *= m[j];
  const double smoothed = weighted_norm(u, s0 + 1.0 - M.s);
  return {base / smoothed, smoothed / (std::pow(M.N, 1.0 - M.s) * base)};
}

ModifiedEnergy modified_energy(const Field& f, const IMultiplier& M, Sign sign) {
  const Field v = apply_I(f, M);
  return {kinetic_energy(v), energy(v, sign)};
}

double modified_sobolev_norm(const Field& f, const IMultiplier& M) {
  M.validate();
  Spectrum u = to_spectrum(f);
  const auto m = multiplier_table(f.grid, M);
  for (std::size_t j = 0; j < u.size(); ++j) u.coeffs[j] *= m[j];
  return weighted_norm(u, 1.0);
}

namespace {

// Spectrum of |v|^4 v on the 3x padded grid, restricted back to g.
std::vector<cplx> padded_quintic(const Grid& g, std::span<const cplx> coeffs) {
  const std::size_t big_n = 3 * g.size();
  auto values = detail::coeffs_to_values(detail::zero_extend(g, coeffs, big_n), g.length());
  for (auto& v : values) {
    const double a2 = std::norm(v);
    v *= a2 * a2;
  }
  return detail::restrict_modes(detail::values_to_coeffs(values, g.length()), g);
}

}  // namespace

double energy_flux_rate(const Field& f, const IMultiplier& M, Sign sign) {
  M.validate();
  const Grid& g = f.grid;
  const Spectrum u = to_spectrum(f);
  const auto m = multiplier_table(g, M);
  const auto k = g.wavenumbers();
  const double sigma = sign_factor(sign);

  const auto F = padded_quintic(g, u.coeffs);
  std::vector<cplx> Iu(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) Iu[j] = m[j] * u.coeffs[j];
  const auto G = padded_quintic(g, Iu);

  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const cplx IF = m[j] * F[j];
    const cplx commutator = IF - G[j];
    const cplx a = sigma * (-k[j] * k[j]) * Iu[j] + IF;
    acc += (std::conj(a) * commutator).imag();
  }
  return acc;
}

double increment_flux(std::span<const Field> snapshots, const IMultiplier& M, Sign sign) {
  constexpr std::size_t kMinSteps = 16;
  if (snapshots.size() < kMinSteps + 1) {
    throw AccuracyError("increment_flux: need at least 16 steps in the segment, got " +
                        std::to_string(snapshots.empty() ? 0 : snapshots.size() - 1));
  }
  double total = 0.0;
  double prev = energy_flux_rate(snapshots[0], M, sign);
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    const double h = snapshots[i].time - snapshots[i - 1].time;
    if (!(h > 0.0)) throw AccuracyError("increment_flux: snapshot times must increase");
    const double cur = energy_flux_rate(snapshots[i], M, sign);
    total += 0.5 * h * (prev + cur);
    prev = cur;
  }
  return total;
}

std::vector<DecayRow> decay_sweep(const Field& u0, double s, std::span<const double> N_list, double horizon,
                                  const SolverConfig& cfg) {
  if (N_list.empty()) throw ConfigError("decay_sweep: N_list is empty");
  if (!(horizon > 0.0)) throw ConfigError("decay_sweep: horizon must be positive");
  for (double N : N_list) IMultiplier{N, s}.validate();
  SolverConfig run = cfg;
  run.stop_time = u0.time + horizon;
  run.tail_snapshots = 0;
  run.snapshot_stride = std::numeric_limits<std::size_t>::max();
  const Trajectory traj = evolve(u0, run);
  if (traj.termination != Termination::reached_stop_time) {
    throw NumericError(std::string("decay_sweep: evolution ended early (") +
                       std::string(to_string(traj.termination)) + ")");
  }
  const Field& u1 = traj.final_state();
  std::vector<DecayRow> rows;
  rows.reserve(N_list.size());
  for (double N : N_list) {
    const IMultiplier M{N, s};
    const double e0 = modified_energy(u0, M, cfg.sign).energy;
    const double e1 = modified_energy(u1, M, cfg.sign).energy;
    rows.push_back({N, std::abs(e1 - e0)});
  }
  return rows;
}

namespace {

// u = 11 s - 10 vanishes at the threshold s = 10/11; in this variable
// 1 - s = (1 - u)/11 and 10 s - 8 = (12 + 10 u)/11, and the double nearest
// 10/11 maps to u = 0 exactly.
double threshold_offset(double s) { return 11.0 * s - 10.0; }

}  // namespace

double p_exponent(double s) {
  if (!(s > 0.8) || !std::isfinite(s)) throw DomainError("p_exponent: requires s > 4/5");
  const double u = threshold_offset(s);
  return 24.0 * (1.0 - u) / (12.0 + 10.0 * u);
}

double n_of_lambda(double lambda, double s) {
  if (!(s > 0.8) || !std::isfinite(s)) throw DomainError("n_of_lambda: requires s > 4/5");
  if (!(lambda >= 1.0)) throw DomainError("n_of_lambda: requires Lambda >= 1");
  return std::pow(lambda, 132.0 / (12.0 + 10.0 * threshold_offset(s)));
}

}  // namespace qnls
