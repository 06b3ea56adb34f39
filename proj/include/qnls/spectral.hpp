#pragma once

#include <limits>
#include <span>

#include "qnls/field.hpp"

namespace qnls {

Spectrum to_spectrum(const Field& f);
Field from_spectrum(const Spectrum& s);

/// d^order/dx^order via multiplication by (ik)^order. The Nyquist mode is
/// zeroed for odd orders.
Field derivative(const Field& f, int order);

/// The operator with symbol |k|^s, s > 0.
Field fractional_derivative(const Field& f, double s);

/// (sum_k <k>^{2s} |c_k|^2)^{1/2} with <k> = 1 + |k|.
double sobolev_norm(const Field& f, double s);

/// (sum_j |u_j|^p dx)^{1/p}; p = infinity gives max_j |u_j|.
double lp_norm(const Field& f, double p);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// sum_j |u_j|^2 dx.
double mass(const Field& f);

/// ||u_x||_{L^2}, computed spectrally.
double gradient_norm(const Field& f);

/// Zeroes coefficients with |m| > fraction * n/2. fraction in (0, 1].
Spectrum dealias(const Spectrum& s, double fraction);
void dealias_in_place(const Grid& g, std::span<cplx> coeffs, double fraction);

/// Zero-extends (factor > 1) a spectrum onto a grid with factor*n points
/// and the same length. The Nyquist coefficient is split symmetrically.
Spectrum pad(const Spectrum& s, std::size_t factor);

/// Restricts a spectrum to a grid with fewer points and the same length.
/// The Nyquist coefficient of the target grid is set to zero.
Spectrum truncate(const Spectrum& s, const Grid& target);

/// Spectrum of |u|^4 u computed on a grid padded by a factor 3 and
/// truncated back, so every retained mode is free of aliasing.
Spectrum quintic_product_padded(const Spectrum& s);

/// Evaluates the trigonometric interpolant of f at arbitrary points.
/// Points outside [-L/2, L/2) wrap periodically.
std::vector<cplx> interpolate(const Field& f, std::span<const double> points);

}  // namespace qnls
