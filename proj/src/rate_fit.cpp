#include "qnls/rate_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "qnls/errors.hpp"

namespace qnls {

std::string_view to_string(RateModel m) {
  switch (m) {
    case RateModel::scaling: return "scaling";
    case RateModel::loglog: return "loglog";
    case RateModel::free_exponent: return "free_exponent";
  }
  return "unknown";
}

RateModel parse_rate_model(std::string_view name) {
  if (name == "scaling") return RateModel::scaling;
  if (name == "loglog") return RateModel::loglog;
  if (name == "free_exponent" || name == "free") return RateModel::free_exponent;
  throw ConfigError("unknown rate model '" + std::string(name) + "' (expected scaling, loglog or free_exponent)");
}

std::span<const std::pair<double, double>> monotone_tail(std::span<const std::pair<double, double>> series) {
  if (series.empty()) return series;
  std::size_t start = series.size() - 1;
  while (start > 0 && series[start - 1].first < series[start].first &&
         series[start - 1].second < series[start].second) {
    --start;
  }
  return series.subspan(start);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Parameters: log C, theta with T* = t_last + exp(theta), and alpha for the
// free model.
struct Problem {
  std::span<const std::pair<double, double>> data;
  RateModel model;
  double t_last;

  Eigen::Index dim() const { return model == RateModel::free_exponent ? 3 : 2; }

  // Residuals and Jacobian; false when some sample leaves the model's domain.
  bool evaluate(const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd* J) const {
    const auto m = static_cast<Eigen::Index>(data.size());
    r.resize(m);
    if (J) J->resize(m, dim());
    const double shift = std::exp(p[1]);
    if (!std::isfinite(shift)) return false;
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto [t, g] = data[static_cast<std::size_t>(i)];
      const double x = t_last - t + shift;
      if (!(x > 0.0)) return false;
      const double lx = std::log(x);
      double h = 0.0, dh = 0.0;
      switch (model) {
        case RateModel::scaling:
          h = -0.5 * lx;
          dh = -0.5 / x;
          break;
        case RateModel::free_exponent:
          h = -p[2] * lx;
          dh = -p[2] / x;
          break;
        case RateModel::loglog: {
          if (!(lx < -1.0)) return false;
          const double ll = std::log(-lx);
          h = 0.5 * std::log(ll) - 0.5 * lx;
          dh = 0.5 / (ll * lx * x) - 0.5 / x;
          break;
        }
      }
      r[i] = std::log(g) - p[0] - h;
      if (J) {
        (*J)(i, 0) = -1.0;
        (*J)(i, 1) = -dh * shift;
        if (model == RateModel::free_exponent) (*J)(i, 2) = lx;
      }
    }
    return r.allFinite();
  }
};

}  // namespace

RateFit fit_rate(std::span<const std::pair<double, double>> series, RateModel model, double T_star_hint) {
  if (series.size() < 10) throw FitRejected("fit_rate: need at least 10 samples, got " + std::to_string(series.size()));
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i].second > 0.0) || !std::isfinite(series[i].first)) {
      throw FitRejected("fit_rate: gradnorm samples must be positive and finite");
    }
    if (i > 0 && !(series[i].first > series[i - 1].first && series[i].second > series[i - 1].second)) {
      throw FitRejected("fit_rate: samples are not a monotone tail");
    }
  }
  const double t_last = series.back().first;
  if (!(T_star_hint > t_last)) throw FitRejected("fit_rate: T_star_hint must exceed the last sample time");

  const Problem prob{series, model, t_last};
  Eigen::VectorXd p(prob.dim());
  p[0] = 0.0;
  p[1] = std::log(T_star_hint - t_last);
  if (model == RateModel::free_exponent) p[2] = 0.5;

  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  if (!prob.evaluate(p, r, &J)) throw FitRejected("fit_rate: initial guess outside the model's domain");
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  constexpr std::size_t kMaxIter = 2000;
  std::size_t iter = 0;
  bool converged = false;
  for (; iter < kMaxIter && !converged; ++iter) {
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd grad = J.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < 1e-15 * std::max(1.0, A.diagonal().maxCoeff())) {
      converged = true;
      break;
    }
    bool accepted = false;
    while (lambda < 1e16) {
      Eigen::MatrixXd damped = A;
      damped.diagonal() += lambda * A.diagonal().cwiseMax(1e-300);
      const Eigen::VectorXd delta = damped.ldlt().solve(-grad);
      if (!delta.allFinite()) {
        lambda *= 4.0;
        continue;
      }
      const Eigen::VectorXd trial = p + delta;
      Eigen::VectorXd r_trial;
      Eigen::MatrixXd J_trial;
      if (prob.evaluate(trial, r_trial, &J_trial) && r_trial.squaredNorm() <= cost) {
        const double new_cost = r_trial.squaredNorm();
        const bool small_step = delta.norm() <= 1e-13 * (p.norm() + 1e-13);
        const bool flat = cost - new_cost <= 1e-15 * cost;
        p = trial;
        r = std::move(r_trial);
        J = std::move(J_trial);
        cost = new_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        converged = small_step || flat || cost < 1e-30;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) {
      converged = true;  // no descent direction left: stationary to working precision
      break;
    }
  }
  if (!converged) throw FitRejected("fit_rate: iteration did not converge");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J);
  qr.setThreshold(1e-12);
  if (qr.rank() < prob.dim()) throw FitRejected("fit_rate: singular normal equations");

  RateFit fit;
  fit.model = model;
  fit.T_star = t_last + std::exp(p[1]);
  fit.C = std::exp(p[0]);
  fit.alpha = model == RateModel::scaling ? 0.5 : model == RateModel::free_exponent ? p[2] : kNaN;
  fit.rms_residual = std::sqrt(cost / static_cast<double>(series.size()));
  fit.iterations = iter;
  return fit;
}

}  // namespace qnls
