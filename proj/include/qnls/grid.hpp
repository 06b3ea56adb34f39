#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qnls {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L/2, L/2).
///
/// Points are x_j = -L/2 + j*dx. Wavenumbers are stored in FFT order:
/// index j carries mode m_j = j for j < n/2 and j - n otherwise, so the
/// unmatched Nyquist mode is m = -n/2. The grid is immutable and cheap to
/// copy; copies share the point and wavenumber tables.
class Grid {
 public:
  /// Throws ConfigError unless n is a power of two with n >= 16 and L > 0.
  Grid(std::size_t n, double length);

  std::size_t size() const { return data_->n; }
  double length() const { return data_->length; }
  double spacing() const { return data_->dx; }
  double origin() const { return -0.5 * data_->length; }

  double point(std::size_t j) const { return data_->points[j]; }
  std::span<const double> points() const { return data_->points; }

  /// k_j = 2*pi*m_j/L in FFT order.
  std::span<const double> wavenumbers() const { return data_->wavenumbers; }
  double wavenumber(std::size_t j) const { return data_->wavenumbers[j]; }
  long mode(std::size_t j) const;

  /// Index of the Nyquist mode m = -n/2.
  std::size_t nyquist_index() const { return data_->n / 2; }
  double max_wavenumber() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.size() == b.size() && a.length() == b.length();
  }

 private:
  struct Data {
    std::size_t n;
    double length;
    double dx;
    std::vector<double> points;
    std::vector<double> wavenumbers;
  };
  std::shared_ptr<const Data> data_;
};

Grid make_grid(std::size_t n, double length);

bool is_power_of_two(std::size_t n);

}  // namespace qnls
