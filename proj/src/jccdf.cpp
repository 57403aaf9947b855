#include "swipt/jccdf.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "swipt/errors.h"

namespace swipt {

const char* to_string(Method m) { return m == Method::Analytic ? "analytic" : "monte-carlo"; }

QuadratureSpec default_jccdf_quadrature() {
  QuadratureSpec q;
  q.rel_tol = 1e-6;
  q.abs_tol = 1e-6;
  return q;
}

namespace {

constexpr double kPi = std::numbers::pi;
// Outer truncation: F_L0(y) > 1 - 1e-8.
constexpr double kServingTailMass = 1e-8;
// Serving path-losses where Pr{chi >= A} is below this contribute nothing.
constexpr double kGainTailMass = 1e-13;
constexpr double kMaxExponent = 700.0;

// sum_u coeff_u * P_u(Z), P_u(Z) = sum_{k<=u} u!/k! A^k Z^{k-1-u}, so that
// int_A^inf x^u e^{-Zx} dx = e^{-AZ} P_u(Z).
cplx poly_part(const std::vector<double>& coeff, double a, cplx z) {
  const cplx inv = 1.0 / z;
  cplx p = inv;  // P_0
  cplx sum = coeff[0] * p;
  double a_pow = 1.0;
  for (std::size_t u = 1; u < coeff.size(); ++u) {
    a_pow *= a;
    p = (static_cast<double>(u) * p + a_pow) * inv;
    sum += coeff[u] * p;
  }
  return sum;
}

// sum_u coeff_u * u! Z^{-(1+u)}.
cplx pole_part(const std::vector<double>& coeff, cplx z) {
  const cplx inv = 1.0 / z;
  cplx w = inv;
  cplx sum = coeff[0] * w;
  for (std::size_t u = 1; u < coeff.size(); ++u) {
    w *= static_cast<double>(u) * inv;
    sum += coeff[u] * w;
  }
  return sum;
}

double gain_tail_point(const GainPdf& pdf) {
  // Smallest A with Pr{chi >= A} <= kGainTailMass (tail is decreasing).
  auto tail = [&](double a) { return 1.0 - pdf.cdf(a); };
  double hi = 1.0;
  while (tail(hi) > kGainTailMass) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail(mid) > kGainTailMass ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

AnalyticEvaluator::AnalyticEvaluator(const Scenario& scenario, QuadratureSpec quad)
    : scenario_(scenario),
      quad_(quad),
      gain_(gain_pdf_coeffs(scenario.n_tx, scenario.n_rx)),
      measure_(scenario),
      interference_(scenario) {
  quad_.validate();
  for (const auto& t : gain_.terms) {
    auto it = std::find_if(groups_.begin(), groups_.end(), [&](const GainGroup& g) { return g.v == t.v; });
    if (it == groups_.end()) {
      groups_.push_back({t.v, {}});
      it = groups_.end() - 1;
    }
    if (static_cast<int>(it->coeff.size()) <= t.u) it->coeff.resize(t.u + 1, 0.0);
    it->coeff[t.u] += t.coeff;
  }
}

std::pair<double, double> AnalyticEvaluator::inner(const Thresholds& th, Kind kind, double y,
                                                   std::size_t& evals) const {
  const auto& groups = groups_;
  const double p_tx = scenario_.tx_power_w;
  QuadratureSpec spec = quad_;
  spec.abs_tol = 0.2 * quad_.abs_tol;

  auto run = [&](auto&& integrand, OscillationHint hint) {
    auto r = integrate_semi_infinite(integrand, spec, hint);
    evals += r.evaluations;
    if (!r.converged) {
      std::ostringstream msg;
      msg << "J-CCDF inner integral did not converge (serving path-loss " << y << ", R* = " << th.rate_target
          << ", Q* = " << th.power_target << ", rho = " << th.rho << ")";
      throw AccuracyError(msg.str());
    }
    return r;
  };

  switch (kind) {
    case Kind::Joint: {
      const double a = th.t_star * y / p_tx;
      const double r = th.r_star;
      const double phase1 = y * (th.t_star - th.q_star) / p_tx;        // J1 carrier
      const double phase2 = y * th.sigma_star_sq / p_tx - a * r;      // J2 carrier
      auto integrand = [&](double t) {
        const cplx phi = interference_.cf_scaled(t, y);
        cplx s1 = 0.0, s2 = 0.0;
        for (const auto& g : groups) {
          if (a * g.v > kMaxExponent) continue;
          const double damp = std::exp(-a * g.v);
          s1 += damp * poly_part(g.coeff, a, cplx(g.v, -t));
          s2 += damp * poly_part(g.coeff, a, cplx(g.v, t * r));
        }
        const double v1 = (std::polar(1.0, t * phase1) * s1 * phi).imag();
        const double v2 = (std::polar(1.0, t * phase2) * s2 * phi).imag();
        return (v1 - v2) / (kPi * t);
      };
      const double freq = std::abs(phase1);
      auto r1 = run(integrand, {std::min(1.0, 1.0 / r), freq});
      return {r1.value, r1.error};
    }
    case Kind::Rate: {
      const double r = th.r_star;
      const double a = th.sigma_star_sq * y / (p_tx * r);
      double head = 0.0;
      for (const auto& g : groups) {
        if (a * g.v > kMaxExponent) continue;
        head += 0.5 * std::exp(-a * g.v) * poly_part(g.coeff, a, cplx(g.v, 0.0)).real();
      }
      auto integrand = [&](double t) {
        const cplx phi = interference_.cf_scaled(t, y);
        cplx s = 0.0;
        for (const auto& g : groups) {
          if (a * g.v > kMaxExponent) continue;
          s += std::exp(-a * g.v) * poly_part(g.coeff, a, cplx(g.v, t * r));
        }
        return (s * phi).imag() / (kPi * t);
      };
      auto res = run(integrand, {std::min(1.0, 1.0 / r), 0.0});
      return {head - res.value, res.error};
    }
    case Kind::Power: {
      // 1 - E[G], G = int_0^A F_I(q*/P - x/y | y) f_chi(x) dx.
      const double a = th.q_star * y / p_tx;
      double head = 0.0;
      for (const auto& g : groups)
        for (std::size_t u = 0; u < g.coeff.size(); ++u)
          head += 0.5 * g.coeff[u] * lower_notable_integral(static_cast<int>(u), a, cplx(g.v, 0.0)).real();
      const double carrier = -y * th.q_star / p_tx;
      auto poles = [&](double t) {
        const cplx phi = interference_.cf_scaled(t, y);
        cplx s = 0.0;
        for (const auto& g : groups) s += pole_part(g.coeff, cplx(g.v, -t));
        return (std::polar(1.0, t * carrier) * s * phi).imag() / (kPi * t);
      };
      auto truncated = [&](double t) {
        const cplx phi = interference_.cf_scaled(t, y);
        cplx s = 0.0;
        for (const auto& g : groups) {
          if (a * g.v > kMaxExponent) continue;
          s += std::exp(-a * g.v) * poly_part(g.coeff, a, cplx(g.v, -t));
        }
        return (s * phi).imag() / (kPi * t);
      };
      auto ra = run(poles, {1.0, std::abs(carrier)});
      auto rb = run(truncated, {1.0, 0.0});
      return {head - (ra.value - rb.value), ra.error + rb.error};
    }
  }
  return {0.0, 0.0};
}

JccdfEstimate AnalyticEvaluator::evaluate(const Thresholds& th, Kind kind) const {
  const auto start = std::chrono::steady_clock::now();
  JccdfEstimate est;
  est.method = Method::Analytic;

  double s_end = -std::log(kServingTailMass);
  double truncated_mass = kServingTailMass;
  if (kind != Kind::Power) {
    // Beyond y_cut the gain can no longer reach the threshold A(y).
    const double slope = kind == Kind::Joint ? th.t_star / scenario_.tx_power_w
                                             : th.sigma_star_sq / (scenario_.tx_power_w * th.r_star);
    const double y_cut = gain_tail_point(gain_) / slope;
    const double s_cut = measure_.measure(y_cut);
    if (s_cut < s_end) {
      s_end = s_cut;
      truncated_mass = kGainTailMass;
    }
  }

  std::vector<double> cuts{0.0};
  for (LinkState s : kLinkStates) {
    const double sb = measure_.measure(scenario_.breaking_loss(s));
    if (sb > 0.0 && sb < s_end) cuts.push_back(sb);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(s_end);

  std::size_t evals = 0;
  double max_inner_err = 0.0;
  auto outer = [&](double s) {
    const double y = measure_.inverse(s);
    if (!(y > 0.0)) return 0.0;
    const auto [g, err] = inner(th, kind, y, evals);
    max_inner_err = std::max(max_inner_err, err);
    return g * std::exp(-s);
  };

  double total = 0.0;
  double outer_err = 0.0;
  const double seg_tol = 0.5 * quad_.abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    auto r = integrate_adaptive(outer, cuts[i], cuts[i + 1], seg_tol, quad_.rel_tol, 100);
    if (!r.converged) {
      std::ostringstream msg;
      msg << "J-CCDF outer integral did not converge on s in [" << cuts[i] << ", " << cuts[i + 1] << "]";
      throw AccuracyError(msg.str());
    }
    total += r.value;
    outer_err += r.error;
  }

  double value = kind == Kind::Power ? 1.0 - total : total;
  est.error_bound = outer_err + max_inner_err + truncated_mass;
  const double slack = std::max(10.0 * quad_.rel_tol, est.error_bound);
  if (value < -slack || value > 1.0 + slack) {
    std::ostringstream msg;
    msg << "J-CCDF evaluation left [0, 1]: " << value << " (error bound " << est.error_bound << ")";
    throw AccuracyError(msg.str());
  }
  est.value = std::clamp(value, 0.0, 1.0);
  est.evaluations = evals;
  est.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

JccdfEstimate AnalyticEvaluator::jccdf(const Thresholds& th) const {
  if (th.rate_vacuous() && th.power_vacuous()) {
    JccdfEstimate est;
    est.value = 1.0;
    est.error_bound = std::numeric_limits<double>::epsilon();
    return est;
  }
  if (th.power_vacuous()) return marginal_rate(th);
  if (th.rate_vacuous()) return marginal_power(th);
  return evaluate(th, Kind::Joint);
}

JccdfEstimate AnalyticEvaluator::marginal_rate(const Thresholds& th) const {
  if (th.rate_vacuous()) {
    JccdfEstimate est;
    est.value = 1.0;
    est.error_bound = std::numeric_limits<double>::epsilon();
    return est;
  }
  return evaluate(th, Kind::Rate);
}

JccdfEstimate AnalyticEvaluator::marginal_power(const Thresholds& th) const {
  if (th.power_vacuous()) {
    JccdfEstimate est;
    est.value = 1.0;
    est.error_bound = std::numeric_limits<double>::epsilon();
    return est;
  }
  return evaluate(th, Kind::Power);
}

JccdfEstimate jccdf_analytic(const JccdfRequest& req) {
  return AnalyticEvaluator(req.scenario, req.quad).jccdf(req.thresholds);
}

double marginal_rate_ccdf(const Scenario& s, double rho, double rate_target, const QuadratureSpec& quad) {
  return AnalyticEvaluator(s, quad).marginal_rate(derive_thresholds(s, rho, rate_target, 0.0)).value;
}

double marginal_power_ccdf(const Scenario& s, double rho, double power_target, const QuadratureSpec& quad) {
  return AnalyticEvaluator(s, quad).marginal_power(derive_thresholds(s, rho, 0.0, power_target)).value;
}

}  // namespace swipt
