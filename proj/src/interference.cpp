#include "swipt/interference.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "swipt/errors.h"

namespace swipt {

InterferenceModel::InterferenceModel(const Scenario& scenario) : scenario_(scenario) {
  scenario_.validate();
  int i = 0;
  for (LinkState s : kLinkStates) {
    StateTerms& st = states_[i++];
    st.beta = scenario_.pathloss.beta(s);
    st.delta = 2.0 / st.beta;
    st.b = -st.delta;
    st.kappa = scenario_.pathloss.kappa(s);
    st.breaking_loss = scenario_.breaking_loss(s);
    st.near_weight = std::numbers::pi * scenario_.density * scenario_.blockage.q_near(s);
    st.far_weight = std::numbers::pi * scenario_.density * scenario_.blockage.q_far(s);
  }
}

cplx InterferenceModel::log_factor(const StateTerms& st, double t, double l0) const {
  const double d2 = scenario_.blockage.breaking_distance_m * scenario_.blockage.breaking_distance_m;
  const double serving_area = std::pow(l0 / st.kappa, st.delta);  // (L0/kappa)^(2/beta)
  if (l0 >= st.breaking_loss) {
    // Only the far regime lies beyond L0.
    if (st.far_weight == 0.0) return 0.0;
    return st.far_weight * serving_area * (1.0 - hyp2f1_kernel(t, st.b));
  }
  // Far regime starts at the breaking loss; near annulus covers (L0, kappa D^beta).
  const cplx at_break = 1.0 - hyp2f1_kernel(t * l0 / st.breaking_loss, st.b);
  cplx out = st.far_weight * d2 * at_break;
  if (st.near_weight != 0.0)
    out += st.near_weight * (serving_area * (1.0 - hyp2f1_kernel(t, st.b)) - d2 * at_break);
  return out;
}

cplx InterferenceModel::cf_scaled(double t, double l0) const {
  if (t == 0.0) return 1.0;
  return std::exp(log_factor(states_[0], t, l0) + log_factor(states_[1], t, l0));
}

double InterferenceModel::conditional_cdf(double z, double l0, const QuadratureSpec& spec) const {
  if (!(l0 > 0.0)) throw ConfigError("conditional interference CDF: l0 must be > 0");
  if (z <= 0.0) return 0.0;
  if (!std::isfinite(z)) return 1.0;
  // In the scaled variable the interference is l0 * I with CF cf_scaled(t).
  auto cf_t = [&](double t) { return cf_scaled(t, l0); };
  return gil_pelaez_cdf(cf_t, z * l0, spec, 1.0);
}

cplx interference_cf(double omega, double l0, const Scenario& scenario) {
  if (!(omega >= 0.0) || !(l0 > 0.0)) {
    std::ostringstream msg;
    msg << "interference_cf: need omega >= 0 and l0 > 0 (omega = " << omega << ", l0 = " << l0 << ")";
    throw ConfigError(msg.str());
  }
  return InterferenceModel(scenario).cf(omega, l0);
}

double conditional_interference_cdf(double z, double l0, const Scenario& scenario, const QuadratureSpec& spec) {
  return InterferenceModel(scenario).conditional_cdf(z, l0, spec);
}

}  // namespace swipt
