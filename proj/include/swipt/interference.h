#pragma once

#include "swipt/quadrature.h"
#include "swipt/scenario.h"
#include "swipt/specfun.h"

namespace swipt {

// Characteristic function E[exp(j w I) | L0 = l0] of the aggregate
// other-cell interference, as the product of the LOS and NLOS factors.
class InterferenceModel {
 public:
  explicit InterferenceModel(const Scenario& scenario);

  cplx cf(double omega, double l0) const { return cf_scaled(omega / l0, l0); }
  // Same CF in the scaled frequency t = omega / l0.
  cplx cf_scaled(double t, double l0) const;

  // F_I(z | l0) by Gil-Pelaez inversion; 0 for z <= 0.
  double conditional_cdf(double z, double l0, const QuadratureSpec& spec) const;

  const Scenario& scenario() const { return scenario_; }

 private:
  struct StateTerms {
    double beta;
    double b;              // -2/beta
    double delta;          // 2/beta
    double kappa;
    double breaking_loss;  // kappa D^beta
    double near_weight;    // pi lambda q_near
    double far_weight;     // pi lambda q_far
  };
  cplx log_factor(const StateTerms& st, double t, double l0) const;

  Scenario scenario_;
  StateTerms states_[2];
};

cplx interference_cf(double omega, double l0, const Scenario& scenario);
double conditional_interference_cdf(double z, double l0, const Scenario& scenario, const QuadratureSpec& spec);

}  // namespace swipt
