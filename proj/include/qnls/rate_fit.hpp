#pragma once

#include <span>
#include <vector>
#include <string_view>
#include <utility>

namespace qnls {

enum class RateModel {
  /// ||u_x|| = C (T* - t)^{-1/2}
  scaling,
  /// ||u_x|| = C sqrt(log|log(T* - t)| / (T* - t)), defined for T* - t < 1/e
  loglog,
  /// ||u_x|| = C (T* - t)^{-alpha}
  free_exponent,
};

std::string_view to_string(RateModel m);
RateModel parse_rate_model(std::string_view name);

struct RateFit {
  RateModel model = RateModel::scaling;
  double T_star = 0.0;
  double C = 0.0;
  /// 1/2 for the scaling model, fitted for free_exponent, NaN for loglog.
  double alpha = 0.5;
  /// Root mean square of log(gradnorm) - log(model).
  double rms_residual = 0.0;
  std::size_t iterations = 0;
};

/// Levenberg-Marquardt on log gradnorm, started at C = 1, T* = T_star_hint
/// (and alpha = 1/2). Needs at least 10 samples with strictly increasing t
/// and gradnorm and T_star_hint > last t. Throws FitRejected when the
/// normal equations are singular or the iteration does not settle.
RateFit fit_rate(std::span<const std::pair<double, double>> series, RateModel model, double T_star_hint);

/// Longest suffix of series on which both t and gradnorm strictly increase.
std::span<const std::pair<double, double>> monotone_tail(std::span<const std::pair<double, double>> series);

}  // namespace qnls
