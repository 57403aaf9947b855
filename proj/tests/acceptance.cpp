// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "swipt/format.h"
#include "swipt/interference.h"
#include "swipt/jccdf.h"
#include "swipt/mimo_gain.h"
#include "swipt/montecarlo.h"
#include "swipt/pathloss.h"
#include "swipt/specfun.h"
#include "swipt/sweep.h"

using namespace swipt;

namespace {

// Pinned tolerances.
constexpr double kNotableRelTol = 1e-8;
constexpr double kGilPelaezAbsTol = 1e-6;
constexpr double kKsCritical = 1.63;       // 1% level, large n
constexpr double kCiMultiple = 3.0;        // x 95% CI
constexpr double kE2eFloor = 0.02;
constexpr double kLevel = 0.75;
constexpr std::size_t kTrials = 100000;
constexpr std::size_t kGainSamples = 1000000;
constexpr double kZ95 = 1.959963984540054;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += " [over time budget " + fmt_num(budget_s) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-34s %7.1f s  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

const Scenario& base() {
  static const Scenario s = build_scenario(RawConfig{});
  return s;
}

const std::vector<TrialSample>& trials_for(int ntx, int nrx) {
  static std::vector<std::pair<AntennaPair, std::vector<TrialSample>>> cache;
  for (const auto& [k, v] : cache)
    if (k == AntennaPair{ntx, nrx}) return v;
  cache.emplace_back(AntennaPair{ntx, nrx}, simulate_trials(base().with_antennas(ntx, nrx), kTrials, 20240601));
  return cache.back().second;
}

Outcome notable_integrals() {
  double worst = 0.0;
  for (int u = 0; u <= 6; ++u)
    for (double a : {0.0, 0.5, 2.0})
      for (cplx z : {cplx{1.0, 0.0}, cplx{1.0, 1.0}, cplx{3.0, -2.0}}) {
        const auto [quad, closed] = verify_notable_integral(u, a, z);
        worst = std::max(worst, std::abs(quad - closed) / std::abs(closed));
      }
  return {worst <= kNotableRelTol, "max rel err " + fmt_num(worst, 3) + " (tol 1e-8, 63 cases)"};
}

Outcome gil_pelaez() {
  const QuadratureSpec spec;
  auto expo = [](double w) { return 1.0 / cplx(1.0, -w); };
  double worst = 0.0;
  for (double z : {0.1, 1.0, 5.0}) worst = std::max(worst, std::abs(gil_pelaez_cdf(expo, z, spec) - (1.0 - std::exp(-z))));
  // symmetric law centred at 2 (Laplace): median 2
  auto laplace = [](double w) { return std::exp(cplx(0.0, 2.0 * w)) / (1.0 + w * w); };
  const double med = std::abs(gil_pelaez_cdf(laplace, 2.0, spec) - 0.5);
  return {worst <= kGilPelaezAbsTol && med <= kGilPelaezAbsTol,
          "Exp(1) max abs err " + fmt_num(worst, 3) + ", median err " + fmt_num(med, 3) + " (tol 1e-6)"};
}

Outcome serving_ks() {
  const IntensityMeasure m(base());
  std::vector<double> l0;
  for (const auto& t : trials_for(4, 2)) l0.push_back(t.l0);
  std::sort(l0.begin(), l0.end());
  const double n = static_cast<double>(l0.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < l0.size(); ++i) {
    const double f = serving_cdf(m, l0[i]);
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  const double crit = kKsCritical / std::sqrt(n);
  return {ks <= crit, "KS " + fmt_num(ks, 4) + " vs critical " + fmt_num(crit, 4) + " (n = 1e5)"};
}

Outcome gain_density() {
  std::ostringstream msg;
  bool ok = true;
  const auto g11 = gain_pdf_coeffs(1, 1), g21 = gain_pdf_coeffs(2, 1);
  auto single = [](const GainPdf& g, int v, int u) {
    return g.coeffs.size() == 1 && g.coeffs.begin()->first == std::pair{v, u} && g.k_norm * g.coeffs.begin()->second == 1;
  };
  if (!single(g11, 1, 0) || !single(g21, 1, 1)) {
    ok = false;
    msg << "forced coefficients wrong; ";
  }
  for (auto [t, r] : {AntennaPair{1, 1}, AntennaPair{2, 1}, AntennaPair{2, 2}, AntennaPair{4, 2}}) {
    const auto g = gain_pdf_coeffs(t, r);
    if (g.normalization() != 1) ok = false;
    constexpr int bins = 40;
    double hi = g.mean();
    while (g.cdf(hi) < 0.9995) hi *= 1.2;
    std::vector<std::size_t> counts(bins + 1, 0);
    auto rng = make_stream(77, static_cast<std::uint64_t>(t * 16 + r));
    for (std::size_t i = 0; i < kGainSamples; ++i) {
      const double x = sample_gain(t, r, rng);
      counts[std::min<std::size_t>(bins, static_cast<std::size_t>(x / hi * bins))]++;
    }
    int bad = 0;
    double worst = 0.0;
    for (int b = 0; b <= bins; ++b) {
      const double lo_x = hi * b / bins;
      const double p = b < bins ? g.cdf(hi * (b + 1) / bins) - g.cdf(lo_x) : 1.0 - g.cdf(lo_x);
      const double half = kZ95 * std::sqrt(p * (1 - p) / kGainSamples);
      const double dev = std::abs(counts[b] / double(kGainSamples) - p);
      worst = std::max(worst, dev / std::max(half, 1e-300));
      if (dev > kCiMultiple * half) ++bad;
    }
    ok = ok && bad == 0;
    msg << "(" << t << "," << r << ") worst " << fmt_num(worst, 2) << "xCI; ";
  }
  msg << "exact normalization, 41 bins, 1e6 samples";
  return {ok, msg.str()};
}

Outcome lemma2() {
  const Scenario& s = base();
  const IntensityMeasure m(s);
  const InterferenceModel model(s);
  std::ostringstream msg;
  bool ok = true;
  struct Band {
    double p_mid, radius_factor;
    int draws;
  };
  // A far serving station leaves interference dominated by distant stations,
  // so the upper band needs a wider simulation disc.
  for (const auto [p_mid, radius_factor, n] : {Band{0.5, 1.0, 50000}, Band{0.9, 6.0, 20000}}) {
    const double r_sim = radius_factor * default_sim_radius(s);
    const double p_lo = p_mid - 0.005, p_hi = p_mid + 0.005;
    const double l_mid = serving_quantile(m, p_mid);
    auto rng = make_stream(4242, static_cast<std::uint64_t>(p_mid * 100));
    std::uniform_real_distribution<double> band(p_lo, p_hi);
    std::vector<double> l0(n), itf(n);
    for (int i = 0; i < n; ++i) {
      l0[i] = serving_quantile(m, band(rng));
      itf[i] = sample_interference_given_serving(s, l0[i], r_sim, rng);
    }
    double worst = 0.0;
    for (double k : {0.1, 0.3, 1.0, 3.0, 10.0}) {
      const double w = k * l_mid;
      cplx emp{}, ana{};
      double sq = 0.0;
      for (int i = 0; i < n; ++i) {
        const cplx e = std::exp(cplx(0.0, w * itf[i]));
        emp += e;
        sq += std::norm(e);
        ana += model.cf(w, l0[i]);
      }
      emp /= double(n);
      ana /= double(n);
      const double var = sq / n - std::norm(emp);
      const double ci = kZ95 * std::sqrt(var / n);
      const double ratio = std::abs(emp - ana) / ci;
      worst = std::max(worst, ratio);
      if (ratio > kCiMultiple) ok = false;
    }
    msg << "band " << fmt_num(p_mid) << " (" << n << " draws, disc x" << fmt_num(radius_factor) << "): worst "
        << fmt_num(worst, 2) << "xCI; ";
  }
  msg << "w = {0.1,0.3,1,3,10} x l0";
  return {ok, msg.str()};
}

Outcome proposition1() {
  struct Target {
    double rate, dbm;
  };
  const std::vector<Target> targets{{5e4, -65.0}, {2e5, -58.0}};
  std::ostringstream msg;
  bool ok = true;
  int tuples = 0;
  double worst = 0.0;
  for (auto [t, r] : {AntennaPair{1, 1}, AntennaPair{4, 2}}) {
    const Scenario s = base().with_antennas(t, r);
    const AnalyticEvaluator ev(s);
    for (double rho : {0.25, 0.5, 0.75})
      for (const auto& tg : targets) {
        const double q = dbm_to_watt(tg.dbm);
        const auto an = ev.jccdf(derive_thresholds(s, rho, tg.rate, q));
        const auto mc = empirical_jccdf(trials_for(t, r), s, rho, {{tg.rate, q}}).front();
        const double tol = std::max(kE2eFloor, kCiMultiple * mc.error_bound);
        const double diff = std::abs(an.value - mc.value);
        worst = std::max(worst, diff);
        ok = ok && diff <= tol;
        ++tuples;
      }
  }
  msg << tuples << " tuples, max |analytic - MC| " << fmt_num(worst, 3) << " (tol max(0.02, 3xCI), 1e5 trials)";
  return {ok && tuples >= 8, msg.str()};
}

// F at the given target evaluated with another evaluator, for nesting checks.
double f_at(const AnalyticEvaluator& ev, double rho, double rate, double q) {
  return ev.jccdf(derive_thresholds(ev.scenario(), rho, rate, q)).value;
}

const std::vector<double> kRates{2e4, 1e5, 2e5, 3e5};

// Contour of `weaker` must lie inside that of `stronger`: wherever the weaker
// configuration reaches the level, the stronger one does too at the same point.
bool nested(const AnalyticEvaluator& stronger, const std::vector<ContourPoint>& weak, double rho, double tol,
            double& worst) {
  bool ok = true;
  for (const auto& p : weak) {
    if (!p.attained()) continue;
    const double f = f_at(stronger, rho, p.rate_target, p.power_target);
    worst = std::min(worst, f - kLevel);
    ok = ok && f >= kLevel - tol;
  }
  return ok;
}

Outcome nesting(const std::vector<AntennaPair>& configs) {
  const double rho = 0.5;
  std::vector<std::unique_ptr<AnalyticEvaluator>> evs;
  std::vector<std::vector<ContourPoint>> curves;
  for (auto [t, r] : configs) {
    evs.push_back(std::make_unique<AnalyticEvaluator>(base().with_antennas(t, r)));
    curves.push_back(analytic_contour(*evs.back(), rho, kRates, kLevel, 1e-11, 1e-10));
  }
  const double tol = 2.0 * default_jccdf_quadrature().abs_tol;
  bool ok = true;
  double worst = 1.0;
  std::ostringstream msg;
  for (std::size_t i = 0; i + 1 < configs.size(); ++i) ok = nested(*evs[i + 1], curves[i], rho, tol, worst) && ok;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    msg << configs[i].first << "x" << configs[i].second << ":";
    for (const auto& p : curves[i]) msg << ' ' << (p.attained() ? fmt_num(watt_to_dbm(p.power_target), 4) : "nan");
    msg << " dBm; ";
    // attained rates must form a prefix that grows with the array
    if (i > 0)
      for (std::size_t k = 0; k < kRates.size(); ++k)
        if (curves[i - 1][k].attained() && !curves[i][k].attained()) ok = false;
  }
  msg << "min margin " << fmt_num(worst, 3);
  return {ok, msg.str()};
}

// max over rho of F by golden-section search, independent of any rho grid.
double envelope_value(const AnalyticEvaluator& ev, double rate, double q) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.02, b = 0.98;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f_at(ev, c, rate, q), fd = f_at(ev, d, rate, q);
  for (int it = 0; it < 18; ++it) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a);
      fc = f_at(ev, c, rate, q);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a);
      fd = f_at(ev, d, rate, q);
    }
  }
  return std::max({fc, fd, f_at(ev, 0.02, rate, q), f_at(ev, 0.98, rate, q)});
}

Outcome envelope() {
  const AnalyticEvaluator ev(base());
  const std::vector<double> rhos{0.1, 0.3, 0.5, 0.7, 0.9};
  const double tol = 2.0 * default_jccdf_quadrature().abs_tol;
  bool ok = true;
  double worst = 1.0;
  for (double rho : rhos)
    for (const auto& p : analytic_contour(ev, rho, kRates, kLevel, 1e-11, 1e-10)) {
      if (!p.attained()) continue;
      const double f = envelope_value(ev, p.rate_target, p.power_target);
      worst = std::min(worst, f - kLevel);
      ok = ok && f >= kLevel - tol;
    }
  // Monte Carlo check of contour points: F at (R*, Q*) on the contour is the level
  double worst_mc = 0.0;
  int checked = 0;
  for (double rho : rhos) {
    const auto curve = analytic_contour(ev, rho, {2e4, 1e5, 2e5}, kLevel, 1e-11, 1e-10);
    for (const auto& p : curve) {
      if (!p.attained()) continue;
      const auto mc = empirical_jccdf(trials_for(4, 2), ev.scenario(), rho, {{p.rate_target, p.power_target}}).front();
      const double diff = std::abs(mc.value - kLevel);
      worst_mc = std::max(worst_mc, diff);
      ok = ok && diff <= std::max(kE2eFloor, kCiMultiple * mc.error_bound);
      ++checked;
    }
  }
  // corners of the target plane
  auto best = [&](double rate, double dbm) {
    std::vector<double> vals;
    for (double rho : rhos) vals.push_back(f_at(ev, rho, rate, dbm_to_watt(dbm)));
    return best_rho(rhos, vals, 4, 2, rate, dbm_to_watt(dbm), Method::Analytic).best_rho;
  };
  const double rho_rate = best(3e5, -80.0), rho_power = best(2e4, -55.0);
  ok = ok && rho_rate < rho_power;
  return {ok, "envelope margin over fixed-rho contours " + fmt_num(worst, 3) + "; best rho: rate corner " +
                  fmt_num(rho_rate) + ", power corner " + fmt_num(rho_power) + "; " + std::to_string(checked) +
                  " contour points vs MC, max |F - level| " + fmt_num(worst_mc, 3)};
}

Outcome determinism() {
  const ValidationRanges ranges;
  const auto points = sample_validation_points(ranges, 8, 1234);
  std::ostringstream a, b;
  const bool pass_a = write_validation_report(a, cross_validate(base(), points, kTrials, 1234, default_jccdf_quadrature()), 1234, kTrials);
  const bool pass_b = write_validation_report(b, cross_validate(base(), points, kTrials, 1234, default_jccdf_quadrature()), 1234, kTrials);
  const bool same = a.str() == b.str();
  return {same && pass_a && pass_b, std::string(same ? "byte-identical" : "reports differ") + ", 8 points x 1e5 trials " +
                                        (pass_a ? "all pass" : "had failures")};
}

}  // namespace

int main() {
  run("notable integral identity", 1.0, notable_integrals);
  run("Gil-Pelaez inversion", 1.0, gil_pelaez);
  run("serving path-loss KS test", 30.0, serving_ks);
  run("gain density vs Wishart samples", 120.0, gain_density);
  run("conditional interference CF", 120.0, lemma2);
  run("joint CCDF analytic vs MC", 900.0, proposition1);
  run("nesting in N_t (N_r = 2)", 900.0, [] { return nesting({{2, 2}, {4, 2}, {8, 2}}); });
  run("nesting in N_r (N_t = 4)", 900.0, [] { return nesting({{4, 1}, {4, 2}, {4, 4}}); });
  run("rho envelope", 900.0, envelope);
  run("validate determinism", 600.0, determinism);
  std::printf("%s: %d failure(s)\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
  return failures ? 1 : 0;
}
