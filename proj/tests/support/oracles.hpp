// Reference computations that share no code with the library.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "qnls/field.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson quadrature of f on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Closed form of the ground state, written independently of the library.
inline double Q(double x) { return std::pow(3.0, 0.25) / std::sqrt(std::cosh(2.0 * x)); }

inline double Qprime(double x) {
  return -std::pow(3.0, 0.25) * std::sinh(2.0 * x) / std::pow(std::cosh(2.0 * x), 1.5);
}

// O(n^2) DFT with the library's normalization c_k = sqrt(L)/n sum_j u_j e^{-2 pi i jk/n}.
inline std::vector<cplx> direct_dft(const std::vector<cplx>& u, double L) {
  const std::size_t n = u.size();
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double arg = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += u[j] * std::polar(1.0, arg);
    }
    c[k] = acc * std::sqrt(L) / static_cast<double>(n);
  }
  return c;
}

// Evaluates sum_k c_k e^{i k (x - x0)} / sqrt(L) with the Nyquist term as a cosine.
inline cplx trig_eval(const std::vector<cplx>& c, double L, double x) {
  const std::size_t n = c.size();
  const double x0 = -0.5 * L;
  cplx acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double m = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    const double k = 2.0 * std::numbers::pi * m / L;
    if (j == n / 2) {
      acc += c[j] * std::cos(k * (x - x0));
    } else {
      acc += c[j] * std::polar(1.0, k * (x - x0));
    }
  }
  return acc / std::sqrt(L);
}

// Wavenumber of FFT index j.
inline double wavenumber(std::size_t j, std::size_t n, double L) {
  const double m = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
  return 2.0 * std::numbers::pi * m / L;
}

// Random field generators for property tests.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  double normal() { return std::normal_distribution<double>()(rng); }

  // Sum of 1-4 chirped Gaussian bumps: smooth and localized.
  qnls::Field bumps(const qnls::Grid& g, double max_amp = 2.0, double max_center = 5.0) {
    qnls::Field f(g, 0.0);
    const int count = integer(1, 4);
    for (int b = 0; b < count; ++b) {
      const double amp = uniform(0.1, max_amp);
      const double width = uniform(0.4, 3.0);
      const double center = uniform(-max_center, max_center);
      const double freq = uniform(-3.0, 3.0);
      const double chirp = uniform(-0.5, 0.5);
      const double phase = uniform(0.0, 2.0 * std::numbers::pi);
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double y = g.point(j) - center;
        f.values[j] += amp * std::exp(-(y / width) * (y / width)) *
                       std::polar(1.0, phase + freq * y + chirp * y * y);
      }
    }
    return f;
  }

  // Random coefficients on modes |m| <= max_mode, zero elsewhere.
  qnls::Field bandlimited(const qnls::Grid& g, int max_mode) {
    std::vector<cplx> c(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (std::abs(g.mode(j)) <= max_mode) c[j] = {normal(), normal()};
    }
    qnls::Field f(g, 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) f.values[j] = trig_eval(c, g.length(), g.point(j));
    return f;
  }

  // White noise on every sample.
  qnls::Field noise(const qnls::Grid& g) {
    qnls::Field f(g, 0.0);
    for (auto& v : f.values) v = {normal(), normal()};
    return f;
  }
};

inline double l2_distance(const qnls::Field& a, const qnls::Field& b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a.values[j] - b.values[j]);
  return std::sqrt(acc * a.grid.spacing());
}

}  // namespace oracle
