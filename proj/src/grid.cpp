#include "qnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qnls/errors.hpp"

namespace qnls {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Grid::Grid(std::size_t n, double length) {
  if (!is_power_of_two(n) || n < 16) {
    throw ConfigError("grid size must be a power of two >= 16, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive and finite");
  }
  auto data = std::make_shared<Data>();
  data->n = n;
  data->length = length;
  data->dx = length / static_cast<double>(n);
  data->points.resize(n);
  data->wavenumbers.resize(n);
  const double dk = 2.0 * std::numbers::pi / length;
  for (std::size_t j = 0; j < n; ++j) {
    data->points[j] = -0.5 * length + static_cast<double>(j) * data->dx;
    const long m = j < n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
    data->wavenumbers[j] = dk * static_cast<double>(m);
  }
  data_ = std::move(data);
}

long Grid::mode(std::size_t j) const {
  const std::size_t n = size();
  return j < n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

double Grid::max_wavenumber() const { return std::numbers::pi / spacing(); }

Grid make_grid(std::size_t n, double length) { return Grid(n, length); }

}  // namespace qnls
