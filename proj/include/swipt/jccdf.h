#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "swipt/interference.h"
#include "swipt/mimo_gain.h"
#include "swipt/pathloss.h"
#include "swipt/quadrature.h"
#include "swipt/scenario.h"

namespace swipt {

enum class Method { Analytic, MonteCarlo };
const char* to_string(Method m);

struct JccdfEstimate {
  double value = 0.0;
  Method method = Method::Analytic;
  double error_bound = 0.0;  // analytic: quadrature bound; Monte Carlo: 95% CI half-width
  double ci_low = 0.0;       // Monte Carlo only (Wilson interval)
  double ci_high = 1.0;
  std::size_t evaluations = 0;  // integrand evaluations or trials
  double wall_time_s = 0.0;
};

struct JccdfRequest {
  Scenario scenario;
  Thresholds thresholds;
  QuadratureSpec quad;
};

// Default accuracy of the analytic evaluator: absolute tolerance on the
// probability, relative tolerance on the inner integrals.
QuadratureSpec default_jccdf_quadrature();

// Exact evaluation of F_c(R*, Q*) = Pr{R >= R*, Q >= Q*} as a two-fold
// integral: inner over the CF frequency, outer over the serving path-loss.
// The outer integral runs over s = Lambda([0, y)), for which f_L0(y) dy = e^{-s} ds,
// truncated where F_L0 exceeds 1 - 1e-8.
class AnalyticEvaluator {
 public:
  AnalyticEvaluator(const Scenario& scenario, QuadratureSpec quad = default_jccdf_quadrature());

  // Dispatches to the marginals when one target is zero; both zero gives 1.
  JccdfEstimate jccdf(const Thresholds& th) const;
  // Pr{R >= R*} (Q* -> 0 limit) and Pr{Q >= Q*} (R* -> 0 limit).
  JccdfEstimate marginal_rate(const Thresholds& th) const;
  JccdfEstimate marginal_power(const Thresholds& th) const;

  const Scenario& scenario() const { return scenario_; }
  const GainPdf& gain() const { return gain_; }
  const QuadratureSpec& quadrature() const { return quad_; }

 private:
  enum class Kind { Joint, Rate, Power };
  JccdfEstimate evaluate(const Thresholds& th, Kind kind) const;
  // Conditional contribution at serving path-loss y; returns (value, error).
  std::pair<double, double> inner(const Thresholds& th, Kind kind, double y, std::size_t& evals) const;

  // K c_{v,u} grouped by v, dense in u.
  struct GainGroup {
    int v;
    std::vector<double> coeff;
  };

  Scenario scenario_;
  QuadratureSpec quad_;
  GainPdf gain_;
  std::vector<GainGroup> groups_;
  IntensityMeasure measure_;
  InterferenceModel interference_;
};

JccdfEstimate jccdf_analytic(const JccdfRequest& req);
double marginal_rate_ccdf(const Scenario& s, double rho, double rate_target, const QuadratureSpec& quad);
double marginal_power_ccdf(const Scenario& s, double rho, double power_target, const QuadratureSpec& quad);

}  // namespace swipt
