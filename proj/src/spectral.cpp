#include "qnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "spectral_detail.hpp"
#include "qnls/errors.hpp"

namespace qnls {

Field::Field(Grid g, std::vector<cplx> v, double t) : grid(std::move(g)), values(std::move(v)), time(t) {
  if (values.size() != grid.size()) throw ConfigError("field length does not match grid size");
}

Field::Field(Grid g, double t) : grid(std::move(g)), values(grid.size()), time(t) {}

bool Field::is_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Spectrum::Spectrum(Grid g, std::vector<cplx> c, double t) : grid(std::move(g)), coeffs(std::move(c)), time(t) {
  if (coeffs.size() != grid.size()) throw ConfigError("spectrum length does not match grid size");
}

Spectrum::Spectrum(Grid g, double t) : grid(std::move(g)), coeffs(grid.size()), time(t) {}

bool Spectrum::is_finite() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Spectrum to_spectrum(const Field& f) {
  if (!f.is_finite()) throw NumericError("to_spectrum: non-finite field values");
  Spectrum s(f.grid, f.time);
  detail::fft_forward(f.values, s.coeffs);
  const double scale = std::sqrt(f.grid.length()) / static_cast<double>(f.size());
  for (auto& c : s.coeffs) c *= scale;
  return s;
}

Field from_spectrum(const Spectrum& s) {
  if (!s.is_finite()) throw NumericError("from_spectrum: non-finite coefficients");
  Field f(s.grid, s.time);
  detail::fft_backward(s.coeffs, f.values);
  const double scale = 1.0 / std::sqrt(s.grid.length());
  for (auto& v : f.values) v *= scale;
  return f;
}

Field derivative(const Field& f, int order) {
  if (order < 1) throw ConfigError("derivative order must be positive");
  Spectrum s = to_spectrum(f);
  const auto k = f.grid.wavenumbers();
  for (std::size_t j = 0; j < s.size(); ++j) {
    s.coeffs[j] *= std::pow(cplx(0.0, k[j]), order);
  }
  if (order % 2 == 1) s.coeffs[f.grid.nyquist_index()] = 0.0;
  return from_spectrum(s);
}

Field fractional_derivative(const Field& f, double s) {
  if (!(s > 0.0)) throw ConfigError("fractional derivative order must be positive");
  Spectrum sp = to_spectrum(f);
  const auto k = f.grid.wavenumbers();
  for (std::size_t j = 0; j < sp.size(); ++j) sp.coeffs[j] *= std::pow(std::abs(k[j]), s);
  return from_spectrum(sp);
}

double sobolev_norm(const Field& f, double s) {
  const Spectrum sp = to_spectrum(f);
  const auto k = f.grid.wavenumbers();
  double sum = 0.0;
  for (std::size_t j = 0; j < sp.size(); ++j) {
    sum += std::pow(1.0 + std::abs(k[j]), 2.0 * s) * std::norm(sp.coeffs[j]);
  }
  return std::sqrt(sum);
}

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw ConfigError("lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (auto z : f.values) m = std::max(m, std::abs(z));
    return m;
  }
  double sum = 0.0;
  for (auto z : f.values) sum += std::pow(std::abs(z), p);
  return std::pow(sum * f.grid.spacing(), 1.0 / p);
}

double mass(const Field& f) {
  double sum = 0.0;
  for (auto z : f.values) sum += std::norm(z);
  return sum * f.grid.spacing();
}

double gradient_norm(const Field& f) {
  const Spectrum sp = to_spectrum(f);
  const auto k = f.grid.wavenumbers();
  double sum = 0.0;
  for (std::size_t j = 0; j < sp.size(); ++j) {
    if (j == f.grid.nyquist_index()) continue;
    sum += k[j] * k[j] * std::norm(sp.coeffs[j]);
  }
  return std::sqrt(sum);
}

void dealias_in_place(const Grid& g, std::span<cplx> coeffs, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("dealias fraction must lie in (0, 1]");
  if (fraction == 1.0) return;
  const double cutoff = fraction * static_cast<double>(g.size()) / 2.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (std::abs(static_cast<double>(g.mode(j))) > cutoff) coeffs[j] = 0.0;
  }
}

Spectrum dealias(const Spectrum& s, double fraction) {
  Spectrum out = s;
  dealias_in_place(out.grid, out.coeffs, fraction);
  return out;
}

namespace detail {

std::vector<cplx> zero_extend(const Grid& g, std::span<const cplx> coeffs, std::size_t big_n) {
  const std::size_t n = g.size();
  std::vector<cplx> out(big_n, cplx(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    if (j == g.nyquist_index()) continue;
    const long m = g.mode(j);
    out[static_cast<std::size_t>((m + static_cast<long>(big_n)) % static_cast<long>(big_n))] = coeffs[j];
  }
  const cplx half = 0.5 * coeffs[g.nyquist_index()];
  out[n / 2] += half;
  out[big_n - n / 2] += half;
  return out;
}

std::vector<cplx> restrict_modes(std::span<const cplx> big, const Grid& target) {
  const std::size_t n = target.size();
  const long big_n = static_cast<long>(big.size());
  std::vector<cplx> out(n, cplx(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    if (j == target.nyquist_index()) continue;
    const long m = target.mode(j);
    out[j] = big[static_cast<std::size_t>((m + big_n) % big_n)];
  }
  return out;
}

std::vector<cplx> coeffs_to_values(std::span<const cplx> coeffs, double length) {
  std::vector<cplx> values(coeffs.size());
  fft_backward(coeffs, values);
  const double scale = 1.0 / std::sqrt(length);
  for (auto& v : values) v *= scale;
  return values;
}

std::vector<cplx> values_to_coeffs(std::span<const cplx> values, double length) {
  std::vector<cplx> coeffs(values.size());
  fft_forward(values, coeffs);
  const double scale = std::sqrt(length) / static_cast<double>(values.size());
  for (auto& c : coeffs) c *= scale;
  return coeffs;
}

}  // namespace detail

Spectrum pad(const Spectrum& s, std::size_t factor) {
  if (!is_power_of_two(factor)) throw ConfigError("pad factor must be a power of two");
  if (factor == 1) return s;
  Grid big(s.size() * factor, s.grid.length());
  return Spectrum(big, detail::zero_extend(s.grid, s.coeffs, big.size()), s.time);
}

Spectrum truncate(const Spectrum& s, const Grid& target) {
  if (target.length() != s.grid.length() || target.size() > s.size()) {
    throw ConfigError("truncate: target grid must be coarser with the same length");
  }
  return Spectrum(target, detail::restrict_modes(s.coeffs, target), s.time);
}

Spectrum quintic_product_padded(const Spectrum& s) {
  const std::size_t big_n = 3 * s.size();
  const double length = s.grid.length();
  auto values = detail::coeffs_to_values(detail::zero_extend(s.grid, s.coeffs, big_n), length);
  for (auto& v : values) {
    const double a2 = std::norm(v);
    v *= a2 * a2;
  }
  const auto big = detail::values_to_coeffs(values, length);
  return Spectrum(s.grid, detail::restrict_modes(big, s.grid), s.time);
}

std::vector<cplx> interpolate(const Field& f, std::span<const double> points) {
  const Spectrum s = to_spectrum(f);
  const Grid& g = f.grid;
  const std::size_t n = g.size();
  const double dk = 2.0 * std::numbers::pi / g.length();
  const double inv_sqrt_l = 1.0 / std::sqrt(g.length());
  // Horner evaluation of the positive and negative frequency halves; the
  // Nyquist term is split evenly between +n/2 and -n/2.
  std::vector<cplx> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double phase = dk * (points[p] - g.origin());
    const cplx z = std::polar(1.0, phase);
    const cplx zc = std::conj(z);
    cplx pos = 0.0;
    for (std::size_t m = n / 2; m-- > 1;) pos = pos * z + s.coeffs[m];
    pos = pos * z + s.coeffs[0];
    cplx neg = 0.0;
    for (std::size_t m = n / 2; m >= 1; --m) neg = neg * zc + s.coeffs[n - m];
    neg *= zc;
    const double nyq_phase = phase * static_cast<double>(n / 2);
    const cplx nyq = s.coeffs[g.nyquist_index()] * std::cos(nyq_phase);
    out[p] = inv_sqrt_l * (pos + neg - s.coeffs[g.nyquist_index()] * std::polar(1.0, -nyq_phase) + nyq);
  }
  return out;
}

}  // namespace qnls
