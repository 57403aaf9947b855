#include "swipt/pathloss.h"

#include <cmath>
#include <numbers>

#include "swipt/errors.h"

namespace swipt {

namespace {
constexpr double kPi = std::numbers::pi;

double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }
}  // namespace

IntensityMeasure::IntensityMeasure(const Scenario& scenario) : scenario_(scenario) { scenario_.validate(); }

double IntensityMeasure::measure(double x, LinkState s) const {
  if (x <= 0.0) return 0.0;
  const auto& sc = scenario_;
  const double kappa = sc.pathloss.kappa(s);
  const double delta = 2.0 / sc.pathloss.beta(s);
  const double d = sc.blockage.breaking_distance_m;
  const double q_near = sc.blockage.q_near(s);
  const double q_far = sc.blockage.q_far(s);
  const double area = std::pow(x / kappa, delta);  // r(x)^2
  const double h = heaviside(x - sc.breaking_loss(s));
  return kPi * sc.density * q_near * area * (1.0 - h) +
         kPi * sc.density * (area * q_far + d * d * (q_near - q_far)) * h;
}

double IntensityMeasure::density(double x, LinkState s) const {
  if (x <= 0.0) return 0.0;
  const auto& sc = scenario_;
  const double beta = sc.pathloss.beta(s);
  const double kappa = sc.pathloss.kappa(s);
  const double delta = 2.0 / beta;
  const double h = heaviside(x - sc.breaking_loss(s));
  return (2.0 * kPi * sc.density / beta) * std::pow(kappa, -delta) * std::pow(x, delta - 1.0) *
         (sc.blockage.q_near(s) * (1.0 - h) + sc.blockage.q_far(s) * h);
}

double IntensityMeasure::inverse(double target) const {
  if (target <= 0.0) return 0.0;
  // Bracket in log-space then bisect; Lambda is continuous and non-decreasing.
  double lo = 1.0;
  while (measure(lo) > target) lo *= 0.5;
  double hi = 2.0 * lo;
  while (measure(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw AccuracyError("intensity measure inverse: target not reachable");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    const double m = (mid > lo && mid < hi) ? mid : 0.5 * (lo + hi);
    if (measure(m) < target)
      lo = m;
    else
      hi = m;
  }
  return hi;
}

double serving_cdf(const IntensityMeasure& m, double x) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-m.measure(x));
}

double serving_pdf(const IntensityMeasure& m, double x) {
  if (x <= 0.0) return 0.0;
  return m.density(x) * std::exp(-m.measure(x));
}

double serving_quantile(const IntensityMeasure& m, double p) {
  if (!(p >= 0.0 && p < 1.0)) throw ConfigError("serving_quantile: p must lie in [0, 1)");
  return m.inverse(-std::log1p(-p));
}

}  // namespace swipt
