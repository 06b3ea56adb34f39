#include <doctest.h>

#include <cmath>
#include <vector>

#include "qnls/errors.hpp"
#include "qnls/rate_fit.hpp"

using namespace qnls;

namespace {

using Series = std::vector<std::pair<double, double>>;

Series scaling_data(double C, double T, int count, double t_last) {
  Series s;
  for (int i = 0; i < count; ++i) {
    const double t = t_last * i / (count - 1);
    s.emplace_back(t, C / std::sqrt(T - t));
  }
  return s;
}

double loglog_law(double gap) { return std::sqrt(std::log(std::abs(std::log(gap))) / gap); }

}  // namespace

TEST_CASE("scaling fit recovers exact parameters") {
  const Series s = scaling_data(1.7, 1.0, 50, 0.95);
  for (double hint : {1.01, 1.2, 2.0}) {
    const RateFit fit = fit_rate(s, RateModel::scaling, hint);
    CHECK(std::abs(fit.T_star - 1.0) < 1e-8);
    CHECK(std::abs(fit.C - 1.7) < 1e-8);
    CHECK(fit.rms_residual < 1e-10);
    CHECK(fit.alpha == 0.5);
    CHECK(fit.T_star > s.back().first);
  }
}

TEST_CASE("free exponent fit recovers a power law") {
  Series s;
  for (int i = 0; i < 40; ++i) {
    const double gap = std::pow(10.0, -0.5 - 3.0 * i / 39.0);
    s.emplace_back(2.0 - gap, 0.8 * std::pow(gap, -0.62));
  }
  const RateFit fit = fit_rate(s, RateModel::free_exponent, 2.0 + 1e-3);
  CHECK(std::abs(fit.alpha - 0.62) < 1e-8);
  CHECK(std::abs(fit.T_star - 2.0) < 1e-8);
  CHECK(std::abs(fit.C - 0.8) < 1e-8);
  CHECK(fit.rms_residual < 1e-10);
}

TEST_CASE("log-log fits") {
  Series s;
  for (int i = 0; i < 60; ++i) {
    const double gap = std::pow(10.0, -3.0 - 5.0 * i / 59.0);
    s.emplace_back(1.0 - gap, 1.3 * loglog_law(gap));
  }
  const RateFit exact = fit_rate(s, RateModel::loglog, 1.0 + 1e-9);
  CHECK(std::abs(exact.T_star - 1.0) < 1e-8);
  CHECK(std::abs(exact.C - 1.3) < 1e-8);
  CHECK(std::isnan(exact.alpha));

  // The correction shows up as an exponent slightly above the scaling value.
  const RateFit free = fit_rate(s, RateModel::free_exponent, 1.0 + 1e-9);
  CHECK(free.alpha > 0.5);
  CHECK(free.alpha < 0.6);
  const RateFit scaling = fit_rate(s, RateModel::scaling, 1.0 + 1e-9);
  CHECK(scaling.rms_residual > exact.rms_residual);
}

TEST_CASE("log-log model needs T* - t < 1/e") {
  const Series s = scaling_data(1.0, 1.0, 20, 0.5);
  CHECK_THROWS_AS(fit_rate(s, RateModel::loglog, 1.01), FitRejected);
}

TEST_CASE("fit rejects unusable input") {
  const Series s = scaling_data(1.0, 1.0, 20, 0.9);
  CHECK_THROWS_AS(fit_rate(Series(s.begin(), s.begin() + 9), RateModel::scaling, 1.0), FitRejected);
  CHECK_THROWS_AS(fit_rate(s, RateModel::scaling, 0.9), FitRejected);
  Series bumpy = s;
  bumpy[5].second = bumpy[4].second;
  CHECK_THROWS_AS(fit_rate(bumpy, RateModel::scaling, 1.0), FitRejected);
  Series negative = s;
  negative[0].second = -1.0;
  CHECK_THROWS_AS(fit_rate(negative, RateModel::scaling, 1.0), FitRejected);
}

TEST_CASE("monotone tail") {
  Series s{{0, 3}, {1, 2}, {2, 1}, {3, 2}, {4, 5}, {5, 9}};
  const auto tail = monotone_tail(s);
  REQUIRE(tail.size() == 4);
  CHECK(tail.front().first == 2);
  CHECK(monotone_tail(Series{}).empty());
}

TEST_CASE("model names") {
  for (auto m : {RateModel::scaling, RateModel::loglog, RateModel::free_exponent}) {
    CHECK(parse_rate_model(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_rate_model("cubic"), ConfigError);
}
