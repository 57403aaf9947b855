#include "swipt/sweep.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "swipt/errors.h"
#include "swipt/format.h"
#include "swipt/parallel.h"

namespace swipt {

MethodChoice parse_method(const std::string& name) {
  if (name == "analytic") return MethodChoice::Analytic;
  if (name == "mc" || name == "monte-carlo") return MethodChoice::MonteCarlo;
  if (name == "both") return MethodChoice::Both;
  throw ConfigError("unknown method '" + name + "' (expected analytic, mc or both)");
}

const char* to_string(MethodChoice m) {
  switch (m) {
    case MethodChoice::Analytic:
      return "analytic";
    case MethodChoice::MonteCarlo:
      return "monte-carlo";
    case MethodChoice::Both:
      return "both";
  }
  return "?";
}

namespace {

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(a < b); }) == v.end();
}

}  // namespace

void SweepSpec::validate() const {
  if (rate_grid.empty() || !strictly_increasing(rate_grid) || rate_grid.front() < 0.0)
    throw ConfigError("sweep: rate grid must be non-empty, non-negative and strictly increasing");
  if (power_grid.empty() || !strictly_increasing(power_grid) || power_grid.front() <= 0.0)
    throw ConfigError("sweep: power grid must be non-empty, positive and strictly increasing");
  if (rho_list.empty()) throw ConfigError("sweep: rho list is empty");
  for (double r : rho_list)
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("sweep: every rho must lie in (0, 1)");
  if (antenna_list.empty()) throw ConfigError("sweep: antenna list is empty");
  for (auto [t, r] : antenna_list)
    if (t < 1 || r < 1 || t + r > kMaxAntennaSum) throw ConfigError("sweep: unsupported antenna pair");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("sweep: level must lie in (0, 1)");
}

SweepSpec default_sweep() {
  SweepSpec s;
  s.rate_grid = {1e4, 5e4, 1e5, 1.5e5, 2e5, 2.5e5, 2.75e5, 3e5, 3.25e5};
  for (double dbm = -90.0; dbm <= -50.0 + 1e-9; dbm += 5.0) s.power_grid.push_back(dbm_to_watt(dbm));
  s.rho_list = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  s.antenna_list = {{4, 2}};
  return s;
}

SweepSpec parse_sweep(const nlohmann::json& j, SweepSpec s) {
  try {
    if (j.contains("rate_grid_bps")) j.at("rate_grid_bps").get_to(s.rate_grid);
    if (j.contains("power_grid_dbm")) {
      s.power_grid.clear();
      for (double dbm : j.at("power_grid_dbm").get<std::vector<double>>()) s.power_grid.push_back(dbm_to_watt(dbm));
    }
    if (j.contains("rho_list")) j.at("rho_list").get_to(s.rho_list);
    if (j.contains("antennas")) {
      s.antenna_list.clear();
      for (const auto& pair : j.at("antennas")) s.antenna_list.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    }
    if (j.contains("level")) j.at("level").get_to(s.level);
    if (j.contains("method")) s.method = parse_method(j.at("method").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config sweep section: ") + e.what());
  }
  s.validate();
  return s;
}

ValidationRanges parse_validation_ranges(const nlohmann::json& j) {
  ValidationRanges r;
  try {
    if (j.contains("rho_range")) {
      r.rho_min = j.at("rho_range").at(0).get<double>();
      r.rho_max = j.at("rho_range").at(1).get<double>();
    }
    if (j.contains("rate_range_bps")) {
      r.rate_min = j.at("rate_range_bps").at(0).get<double>();
      r.rate_max = j.at("rate_range_bps").at(1).get<double>();
    }
    if (j.contains("power_range_dbm")) {
      r.power_min_w = dbm_to_watt(j.at("power_range_dbm").at(0).get<double>());
      r.power_max_w = dbm_to_watt(j.at("power_range_dbm").at(1).get<double>());
    }
    if (j.contains("antennas")) {
      r.antenna_list.clear();
      for (const auto& pair : j.at("antennas")) r.antenna_list.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config validate section: ") + e.what());
  }
  if (!(r.rho_min > 0.0 && r.rho_min <= r.rho_max && r.rho_max < 1.0))
    throw ConfigError("validate: rho_range must lie inside (0, 1)");
  if (!(r.rate_min > 0.0 && r.rate_min <= r.rate_max)) throw ConfigError("validate: bad rate_range_bps");
  if (!(r.power_min_w > 0.0 && r.power_min_w <= r.power_max_w)) throw ConfigError("validate: bad power_range_dbm");
  if (r.antenna_list.empty()) throw ConfigError("validate: antenna list is empty");
  return r;
}

ToolConfig tool_config_from_json(const nlohmann::json& j) {
  ToolConfig c;
  c.raw = parse_raw_config(j);
  c.scenario = build_scenario(c.raw);
  c.sweep = j.contains("sweep") ? parse_sweep(j.at("sweep")) : default_sweep();
  c.validation = j.contains("validate") ? parse_validation_ranges(j.at("validate")) : ValidationRanges{};
  return c;
}

ToolConfig load_tool_config(const std::string& path) {
  if (path.empty()) return tool_config_from_json(nlohmann::json::object());
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return tool_config_from_json(j);
}

std::vector<ContourPoint> analytic_contour(const AnalyticEvaluator& ev, double rho,
                                           const std::vector<double>& rate_grid, double level, double q_lo,
                                           double q_hi) {
  const Scenario& s = ev.scenario();
  const double tol = 2.0 * ev.quadrature().abs_tol;
  std::vector<ContourPoint> out;
  for (double rate : rate_grid) {
    ContourPoint pt{rho, s.n_tx, s.n_rx, rate, 0.0, 0.0, Method::Analytic};
    const double marginal = ev.marginal_rate(derive_thresholds(s, rho, rate, 0.0)).value;
    if (marginal < level) {
      pt.power_target = std::numeric_limits<double>::quiet_NaN();
      pt.jccdf = marginal;
      out.push_back(pt);
      continue;
    }
    // g(x) = F_c(R*, e^x) - level, non-increasing in x.
    auto g = [&](double x) { return ev.jccdf(derive_thresholds(s, rho, rate, std::exp(x))).value - level; };
    double lo = std::log(q_lo), hi = std::log(q_hi);
    double g_lo = g(lo), g_hi = g(hi);
    for (double step = 1.0; g_lo < 0.0; step *= 2.0) {
      hi = lo, g_hi = g_lo;
      lo -= step;
      g_lo = g(lo);
    }
    for (double step = 1.0; g_hi > 0.0; step *= 2.0) {
      lo = hi, g_lo = g_hi;
      hi += step;
      g_hi = g(hi);
      if (hi > std::log(1e6)) throw AccuracyError("contour: power bracket diverged");
    }
    // Illinois variant of regula falsi on the bracket [lo, hi].
    double x = lo, gx = g_lo;
    int side = 0;
    for (int it = 0; it < 100; ++it) {
      if (std::abs(g_lo) <= tol) {
        x = lo, gx = g_lo;
        break;
      }
      if (std::abs(g_hi) <= tol) {
        x = hi, gx = g_hi;
        break;
      }
      x = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
      gx = g(x);
      if (std::abs(gx) <= tol || hi - lo < 1e-12) break;
      if (gx > 0.0) {
        lo = x, g_lo = gx;
        if (side == 1) g_hi *= 0.5;
        side = 1;
      } else {
        hi = x, g_hi = gx;
        if (side == -1) g_lo *= 0.5;
        side = -1;
      }
    }
    pt.power_target = std::exp(x);
    pt.jccdf = gx + level;
    out.push_back(pt);
  }
  return out;
}

std::vector<ContourPoint> empirical_contour(const std::vector<TrialSample>& trials, const Scenario& s, double rho,
                                            const std::vector<double>& rate_grid, double level) {
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(trials.size());
  for (const auto& t : trials) outcomes.push_back(outcome_of(t, s, rho));
  const double n = static_cast<double>(trials.size());
  const auto need = static_cast<std::size_t>(std::ceil(level * n - 1e-9));
  std::vector<ContourPoint> out;
  for (double rate : rate_grid) {
    std::vector<double> powers;
    for (const auto& o : outcomes)
      if (o.rate_bps >= rate) powers.push_back(o.power_w);
    ContourPoint pt{rho, s.n_tx, s.n_rx, rate, 0.0, 0.0, Method::MonteCarlo};
    if (powers.size() < need || need == 0) {
      pt.power_target = std::numeric_limits<double>::quiet_NaN();
      pt.jccdf = static_cast<double>(powers.size()) / n;
    } else {
      // need-th largest power: exactly `need` or more trials satisfy Q >= it.
      std::nth_element(powers.begin(), powers.begin() + (need - 1), powers.end(), std::greater<>());
      pt.power_target = powers[need - 1];
      const auto hits = std::count_if(powers.begin(), powers.end(), [&](double q) { return q >= pt.power_target; });
      pt.jccdf = static_cast<double>(hits) / n;
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<ContourPoint> envelope_of_contours(const std::vector<std::vector<ContourPoint>>& contours) {
  if (contours.empty()) return {};
  std::vector<ContourPoint> env = contours.front();
  for (std::size_t c = 1; c < contours.size(); ++c) {
    if (contours[c].size() != env.size()) throw ConfigError("envelope: contours use different rate grids");
    for (std::size_t i = 0; i < env.size(); ++i) {
      const auto& cand = contours[c][i];
      if (!cand.attained()) continue;
      if (!env[i].attained() || cand.power_target > env[i].power_target) env[i] = cand;
    }
  }
  return env;
}

EnvelopePoint best_rho(const std::vector<double>& rho_list, const std::vector<double>& values, int n_tx, int n_rx,
                       double rate_target, double power_target, Method method) {
  const auto best = std::max_element(values.begin(), values.end()) - values.begin();
  return {n_tx, n_rx, rate_target, power_target, rho_list[best], values[best], method};
}

std::vector<GridPoint> sweep_grid(const Scenario& s, const SweepSpec& spec, Method method,
                                  const QuadratureSpec& quad, std::size_t n_trials, std::uint64_t seed) {
  std::vector<GridPoint> out;
  for (auto [ntx, nrx] : spec.antenna_list) {
    const Scenario sc = s.with_antennas(ntx, nrx);
    std::vector<TargetPair> targets;
    for (double r : spec.rate_grid)
      for (double q : spec.power_grid) targets.emplace_back(r, q);
    if (method == Method::MonteCarlo) {
      const auto trials = simulate_trials(sc, n_trials, seed);
      for (double rho : spec.rho_list) {
        const auto est = empirical_jccdf(trials, sc, rho, targets);
        for (std::size_t i = 0; i < targets.size(); ++i)
          out.push_back({rho, ntx, nrx, targets[i].first, targets[i].second, est[i]});
      }
    } else {
      const AnalyticEvaluator ev(sc, quad);
      const std::size_t base = out.size();
      out.resize(base + spec.rho_list.size() * targets.size());
      parallel_for(out.size() - base, [&](std::size_t k) {
        const double rho = spec.rho_list[k / targets.size()];
        const auto& [r, q] = targets[k % targets.size()];
        out[base + k] = {rho, ntx, nrx, r, q, ev.jccdf(derive_thresholds(sc, rho, r, q))};
      });
    }
  }
  return out;
}

std::vector<ValidationPoint> sample_validation_points(const ValidationRanges& ranges, std::size_t n,
                                                      std::uint64_t seed) {
  auto rng = make_stream(seed, 0x76616c6964617465ull);  // dedicated stream for point sampling
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unif(rng)); };
  std::vector<ValidationPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    ValidationPoint p;
    p.rho = ranges.rho_min + (ranges.rho_max - ranges.rho_min) * unif(rng);
    const auto idx = std::min(ranges.antenna_list.size() - 1,
                              static_cast<std::size_t>(unif(rng) * static_cast<double>(ranges.antenna_list.size())));
    std::tie(p.n_tx, p.n_rx) = ranges.antenna_list[idx];
    p.rate_target = log_uniform(ranges.rate_min, ranges.rate_max);
    p.power_target = log_uniform(ranges.power_min_w, ranges.power_max_w);
    pts.push_back(p);
  }
  return pts;
}

std::vector<ValidationResult> cross_validate(const Scenario& s, const std::vector<ValidationPoint>& points,
                                             std::size_t n_trials, std::uint64_t seed, const QuadratureSpec& quad) {
  std::vector<ValidationResult> out(points.size());
  std::map<AntennaPair, std::vector<std::size_t>> by_antennas;
  for (std::size_t i = 0; i < points.size(); ++i) by_antennas[{points[i].n_tx, points[i].n_rx}].push_back(i);
  for (const auto& [ant, idx] : by_antennas) {
    const Scenario sc = s.with_antennas(ant.first, ant.second);
    const auto trials = simulate_trials(sc, n_trials, seed);
    const AnalyticEvaluator ev(sc, quad);
    parallel_for(idx.size(), [&](std::size_t k) {
      const std::size_t i = idx[k];
      const auto& p = points[i];
      ValidationResult& r = out[i];
      r.point = p;
      r.analytic = ev.jccdf(derive_thresholds(sc, p.rho, p.rate_target, p.power_target));
      r.monte_carlo = empirical_jccdf(trials, sc, p.rho, {{p.rate_target, p.power_target}}).front();
      r.abs_diff = std::abs(r.analytic.value - r.monte_carlo.value);
      r.tolerance = std::max(kValidationFloor, kValidationCiMultiple * r.monte_carlo.error_bound);
      r.pass = r.abs_diff <= r.tolerance;
    });
  }
  return out;
}

bool write_validation_report(std::ostream& os, const std::vector<ValidationResult>& results, std::uint64_t seed,
                             std::size_t n_trials) {
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  const bool ok = passed == results.size();
  os << "# analytic vs Monte Carlo J-CCDF validation\n";
  os << "# seed=" << seed << " trials=" << n_trials << " points=" << results.size() << '\n';
  os << "point,rho,n_tx,n_rx,rate_target_bps,power_target_w,power_target_dbm,analytic,analytic_error_bound,"
        "monte_carlo,ci_low,ci_high,abs_diff,tolerance,status\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    os << i << ',' << fmt_num(r.point.rho, 10) << ',' << r.point.n_tx << ',' << r.point.n_rx << ','
       << fmt_num(r.point.rate_target, 10) << ',' << fmt_num(r.point.power_target, 10) << ','
       << fmt_num(watt_to_dbm(r.point.power_target), 10) << ',' << fmt_num(r.analytic.value, 8) << ','
       << fmt_num(r.analytic.error_bound, 3) << ',' << fmt_num(r.monte_carlo.value, 8) << ','
       << fmt_num(r.monte_carlo.ci_low, 8) << ',' << fmt_num(r.monte_carlo.ci_high, 8) << ','
       << fmt_num(r.abs_diff, 6) << ',' << fmt_num(r.tolerance, 6) << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  }
  os << "# overall: " << (ok ? "PASS" : "FAIL") << " (" << passed << '/' << results.size() << ")\n";
  return ok;
}

void write_contour_csv(std::ostream& os, const std::vector<ContourPoint>& rows) {
  os << "rho,n_tx,n_rx,rate_target_bps,power_target_w,power_target_dbm,jccdf,method\n";
  for (const auto& r : rows) {
    const double dbm = r.attained() ? watt_to_dbm(r.power_target) : std::numeric_limits<double>::quiet_NaN();
    os << fmt_num(r.rho, 10) << ',' << r.n_tx << ',' << r.n_rx << ',' << fmt_num(r.rate_target, 10) << ','
       << fmt_num(r.power_target, 10) << ',' << fmt_num(dbm, 10) << ',' << fmt_num(r.jccdf, 8) << ','
       << to_string(r.method) << '\n';
  }
}

void write_envelope_csv(std::ostream& os, const std::vector<EnvelopePoint>& rows) {
  os << "n_tx,n_rx,rate_target_bps,power_target_w,power_target_dbm,best_rho,best_jccdf,method\n";
  for (const auto& r : rows) {
    os << r.n_tx << ',' << r.n_rx << ',' << fmt_num(r.rate_target, 10) << ',' << fmt_num(r.power_target, 10) << ','
       << fmt_num(watt_to_dbm(r.power_target), 10) << ',' << fmt_num(r.best_rho, 10) << ','
       << fmt_num(r.best_jccdf, 8) << ',' << to_string(r.method) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& rows) {
  os << "rho,n_tx,n_rx,rate_target_bps,power_target_w,power_target_dbm,jccdf,error_bound,method\n";
  for (const auto& r : rows) {
    os << fmt_num(r.rho, 10) << ',' << r.n_tx << ',' << r.n_rx << ',' << fmt_num(r.rate_target, 10) << ','
       << fmt_num(r.power_target, 10) << ',' << fmt_num(watt_to_dbm(r.power_target), 10) << ','
       << fmt_num(r.estimate.value, 8) << ',' << fmt_num(r.estimate.error_bound, 3) << ','
       << to_string(r.estimate.method) << '\n';
  }
}

}  // namespace swipt
