#include "qnls/ground_state.hpp"

#include <cmath>

#include "qnls/errors.hpp"
#include "qnls/spectral.hpp"

namespace qnls {

std::string_view to_string(Sign s) { return s == Sign::focusing ? "focusing" : "defocusing"; }

Sign parse_sign(std::string_view text) {
  if (text == "focusing") return Sign::focusing;
  if (text == "defocusing") return Sign::defocusing;
  throw ConfigError("unknown sign '" + std::string(text) + "' (expected focusing|defocusing)");
}

double eval_Q(double x) {
  // 1/sqrt(cosh 2x) = sqrt(2 e^{-2|x|} / (1 + e^{-4|x|}))
  const double e = std::exp(-2.0 * std::abs(x));
  return GroundStateConstants::q_peak * std::sqrt(2.0 * e / (1.0 + e * e));
}

Field sample_Q(const Grid& g, double center, double scale) {
  if (!(scale > 0.0)) throw ConfigError("sample_Q: scale must be positive");
  Field f(g);
  const double amp = 1.0 / std::sqrt(scale);
  for (std::size_t j = 0; j < g.size(); ++j) f.values[j] = amp * eval_Q((g.point(j) - center) / scale);
  return f;
}

Field sample_Q_periodic(const Grid& g, double center, double scale) {
  if (!(scale > 0.0)) throw ConfigError("sample_Q_periodic: scale must be positive");
  Field f(g);
  const double amp = 1.0 / std::sqrt(scale);
  const double L = g.length();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.point(j) - center;
    double sum = eval_Q(x / scale);
    for (int m = 1;; ++m) {
      const double term = eval_Q((x + m * L) / scale) + eval_Q((x - m * L) / scale);
      sum += term;
      if (term < 1e-300 || term < 1e-18 * sum) break;
    }
    f.values[j] = amp * sum;
  }
  return f;
}

double kinetic_energy(const Field& f) {
  const double g = gradient_norm(f);
  return 0.5 * g * g;
}

double potential_energy(const Field& f) {
  double sum = 0.0;
  for (auto z : f.values) {
    const double a2 = std::norm(z);
    sum += a2 * a2 * a2;
  }
  return sum * f.grid.spacing() / 6.0;
}

double energy(const Field& f, Sign sign) {
  return kinetic_energy(f) - sign_factor(sign) * potential_energy(f);
}

double gn_slack(const Field& f) {
  const double m = mass(f);
  if (m == 0.0) throw UndefinedInputError("gn_slack: zero field");
  return GroundStateConstants::gn_constant * kinetic_energy(f) * m * m - potential_energy(f);
}

OdeResidual ode_residual(const Grid& g) {
  const Field q = sample_Q_periodic(g);
  const Field qxx = derivative(q, 2);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const cplx v = q.values[j];
    const double a2 = std::norm(v);
    worst = std::max(worst, std::abs(qxx.values[j] - v + a2 * a2 * v));
  }
  return {worst, g.size() < 1024 || g.length() < 30.0};
}

}  // namespace qnls
