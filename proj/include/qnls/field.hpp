#pragma once

#include <vector>

#include "qnls/grid.hpp"

namespace qnls {

/// Samples u(x_j) of a complex field on a grid, stamped with a time.
struct Field {
  Field(Grid g, std::vector<cplx> v, double t = 0.0);
  explicit Field(Grid g, double t = 0.0);

  Grid grid;
  std::vector<cplx> values;
  double time = 0.0;

  std::size_t size() const { return values.size(); }
  bool is_finite() const;
};

/// Fourier coefficients in FFT order, normalized so that
///   sum_j |u(x_j)|^2 dx == sum_k |c_k|^2
/// and u(x) = L^{-1/2} sum_k c_k exp(i k_k (x - x_0)) with x_0 = -L/2.
/// With this scaling the coefficients of a band-limited function do not
/// depend on the number of grid points, so padding is a zero extension.
struct Spectrum {
  Spectrum(Grid g, std::vector<cplx> c, double t = 0.0);
  explicit Spectrum(Grid g, double t = 0.0);

  Grid grid;
  std::vector<cplx> coeffs;
  double time = 0.0;

  std::size_t size() const { return coeffs.size(); }
  bool is_finite() const;
};

}  // namespace qnls
