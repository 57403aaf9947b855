#pragma once

#include "swipt/scenario.h"

namespace swipt {

// Intensity measure of the path-loss point process seen by the typical user:
// Lambda_s([0, x)) is the mean number of state-s base stations whose
// path-loss is below x. Heaviside convention: H(0) = 1.
class IntensityMeasure {
 public:
  explicit IntensityMeasure(const Scenario& scenario);

  double measure(double x, LinkState s) const;
  double measure(double x) const { return measure(x, LinkState::Los) + measure(x, LinkState::Nlos); }

  // d/dx Lambda_s([0, x)); at the jump x = kappa_s D^beta_s the right limit.
  double density(double x, LinkState s) const;
  double density(double x) const { return density(x, LinkState::Los) + density(x, LinkState::Nlos); }

  // Smallest x with measure(x) >= target (target >= 0).
  double inverse(double target) const;

  double breaking_loss(LinkState s) const { return scenario_.breaking_loss(s); }
  const Scenario& scenario() const { return scenario_; }

 private:
  Scenario scenario_;
};

// Law of the smallest path-loss L0 (the serving link).
double serving_cdf(const IntensityMeasure& m, double x);
double serving_pdf(const IntensityMeasure& m, double x);
// Quantile of L0: F^{-1}(p) for p in [0, 1).
double serving_quantile(const IntensityMeasure& m, double p);

}  // namespace swipt
