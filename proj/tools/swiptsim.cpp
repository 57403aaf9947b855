#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "swipt/errors.h"
#include "swipt/format.h"
#include "swipt/jccdf.h"
#include "swipt/mimo_gain.h"
#include "swipt/montecarlo.h"
#include "swipt/sweep.h"

using namespace swipt;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kAccuracy = 3 };

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::string method;
  std::string out;
  double tol = 0.0;
  std::size_t trials = 100000;
  double rho = -1.0;
  int ntx = 0;
  int nrx = 0;
  double level = -1.0;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Resolved {
  ToolConfig cfg;
  QuadratureSpec quad;
  MethodChoice method;
  double rho;
};

Resolved resolve(const Common& c) {
  Resolved r{load_tool_config(c.config), default_jccdf_quadrature(), MethodChoice::Analytic, 0.0};
  r.method = c.method.empty() ? r.cfg.sweep.method : parse_method(c.method);
  if (c.tol > 0.0) r.quad.abs_tol = c.tol;
  r.quad.validate();
  r.rho = c.rho > 0.0 ? c.rho : r.cfg.raw.rho;
  if (c.rho > 0.0) r.cfg.sweep.rho_list = {c.rho};
  if (c.ntx > 0 || c.nrx > 0) {
    const int t = c.ntx > 0 ? c.ntx : r.cfg.scenario.n_tx;
    const int n = c.nrx > 0 ? c.nrx : r.cfg.scenario.n_rx;
    r.cfg.scenario = r.cfg.scenario.with_antennas(t, n);
    r.cfg.sweep.antenna_list = {{t, n}};
    r.cfg.validation.antenna_list = {{t, n}};
  }
  if (c.level > 0.0) r.cfg.sweep.level = c.level;
  r.cfg.sweep.validate();
  if (c.trials < 1000) throw ConfigError("--trials must be at least 1000");
  return r;
}

bool agree(const JccdfEstimate& an, const JccdfEstimate& mc) {
  return std::abs(an.value - mc.value) <= std::max(kValidationFloor, kValidationCiMultiple * mc.error_bound);
}

void print_estimate(std::ostream& os, const JccdfEstimate& e) {
  os << to_string(e.method) << ": F_c = " << fmt_num(e.value, 8);
  if (e.method == Method::MonteCarlo)
    os << "  95% CI [" << fmt_num(e.ci_low, 6) << ", " << fmt_num(e.ci_high, 6) << "]";
  else
    os << "  error bound " << fmt_num(e.error_bound, 3);
  os << "  evaluations " << e.evaluations << "  time " << fmt_num(e.wall_time_s, 3) << " s\n";
}

int cmd_eval(const Common& c, double rate, double power_dbm) {
  const Resolved r = resolve(c);
  const Scenario& s = r.cfg.scenario;
  const Thresholds th = derive_thresholds(s, r.rho, rate, dbm_to_watt(power_dbm));
  Output out(c.out);
  auto& os = out.stream();
  os << "rho " << fmt_num(r.rho) << "  antennas " << s.n_tx << "x" << s.n_rx << "  R* " << fmt_num(rate)
     << " bit/s  Q* " << fmt_num(power_dbm) << " dBm\n";
  JccdfEstimate an, mc;
  if (r.method != MethodChoice::MonteCarlo) {
    an = AnalyticEvaluator(s, r.quad).jccdf(th);
    print_estimate(os, an);
  }
  if (r.method != MethodChoice::Analytic) {
    mc = empirical_jccdf(s, r.rho, {{rate, th.power_target}}, c.trials, c.seed).front();
    print_estimate(os, mc);
  }
  if (r.method == MethodChoice::Both) {
    const bool ok = agree(an, mc);
    os << "|difference| " << fmt_num(std::abs(an.value - mc.value), 4) << "  " << (ok ? "agree" : "DISAGREE") << '\n';
    if (!ok) return kValidation;
  }
  return kOk;
}

int cmd_sweep(const Common& c) {
  const Resolved r = resolve(c);
  std::vector<GridPoint> rows;
  if (r.method != MethodChoice::MonteCarlo)
    rows = sweep_grid(r.cfg.scenario, r.cfg.sweep, Method::Analytic, r.quad, c.trials, c.seed);
  if (r.method != MethodChoice::Analytic) {
    auto mc = sweep_grid(r.cfg.scenario, r.cfg.sweep, Method::MonteCarlo, r.quad, c.trials, c.seed);
    rows.insert(rows.end(), mc.begin(), mc.end());
  }
  Output out(c.out);
  write_grid_csv(out.stream(), rows);
  if (r.method == MethodChoice::Both) {
    const std::size_t half = rows.size() / 2;
    for (std::size_t i = 0; i < half; ++i)
      if (!agree(rows[i].estimate, rows[half + i].estimate)) return kValidation;
  }
  return kOk;
}

// Per-rho contours for one antenna pair.
std::vector<std::vector<ContourPoint>> contours_for(const Resolved& r, const Scenario& s, Method method,
                                                    std::size_t trials, std::uint64_t seed) {
  const SweepSpec& sw = r.cfg.sweep;
  std::vector<std::vector<ContourPoint>> out;
  if (method == Method::MonteCarlo) {
    const auto samples = simulate_trials(s, trials, seed);
    for (double rho : sw.rho_list) out.push_back(empirical_contour(samples, s, rho, sw.rate_grid, sw.level));
  } else {
    const AnalyticEvaluator ev(s, r.quad);
    for (double rho : sw.rho_list)
      out.push_back(analytic_contour(ev, rho, sw.rate_grid, sw.level, sw.power_grid.front(), sw.power_grid.back()));
  }
  return out;
}

// Contours for every configured antenna pair and method; `envelope` receives
// their upper boundary over rho per (antenna pair, method).
std::vector<ContourPoint> all_contours(const Common& c, const Resolved& r, std::vector<ContourPoint>& envelope) {
  std::vector<ContourPoint> rows;
  for (auto [t, n] : r.cfg.sweep.antenna_list) {
    const Scenario s = r.cfg.scenario.with_antennas(t, n);
    for (Method m : {Method::Analytic, Method::MonteCarlo}) {
      if ((m == Method::Analytic) == (r.method == MethodChoice::MonteCarlo)) continue;
      const auto per_rho = contours_for(r, s, m, c.trials, c.seed);
      for (const auto& curve : per_rho) rows.insert(rows.end(), curve.begin(), curve.end());
      const auto env = envelope_of_contours(per_rho);
      envelope.insert(envelope.end(), env.begin(), env.end());
    }
  }
  return rows;
}

int cmd_contour(const Common& c, const std::string& envelope_out) {
  const Resolved r = resolve(c);
  std::vector<ContourPoint> env_rows;
  const auto rows = all_contours(c, r, env_rows);
  for (const auto& p : rows)
    if (!p.attained())
      std::cerr << "warning: level " << fmt_num(r.cfg.sweep.level) << " not reached at rho " << fmt_num(p.rho)
                << ", " << p.n_tx << "x" << p.n_rx << ", R* " << fmt_num(p.rate_target) << " bit/s (sentinel row)\n";
  Output out(c.out);
  write_contour_csv(out.stream(), rows);
  if (!envelope_out.empty()) {
    Output eout(envelope_out);
    write_contour_csv(eout.stream(), env_rows);
  }
  return kOk;
}

int cmd_envelope(const Common& c, const std::string& contour_out) {
  const Resolved r = resolve(c);
  const SweepSpec& sw = r.cfg.sweep;
  std::vector<EnvelopePoint> rows;
  for (Method m : {Method::Analytic, Method::MonteCarlo}) {
    if ((m == Method::Analytic) == (r.method == MethodChoice::MonteCarlo)) continue;
    const auto grid = sweep_grid(r.cfg.scenario, sw, m, r.quad, c.trials, c.seed);
    // Grid order: antenna, rho, rate, power.
    const std::size_t per_rho = sw.rate_grid.size() * sw.power_grid.size();
    const std::size_t per_ant = per_rho * sw.rho_list.size();
    for (std::size_t a = 0; a < sw.antenna_list.size(); ++a)
      for (std::size_t k = 0; k < per_rho; ++k) {
        std::vector<double> values;
        for (std::size_t i = 0; i < sw.rho_list.size(); ++i)
          values.push_back(grid[a * per_ant + i * per_rho + k].estimate.value);
        const auto& g = grid[a * per_ant + k];
        rows.push_back(best_rho(sw.rho_list, values, g.n_tx, g.n_rx, g.rate_target, g.power_target, m));
      }
  }
  Output out(c.out);
  write_envelope_csv(out.stream(), rows);
  if (!contour_out.empty()) {
    std::vector<ContourPoint> env_rows;
    all_contours(c, r, env_rows);
    Output eout(contour_out);
    write_contour_csv(eout.stream(), env_rows);
  }
  return kOk;
}

int cmd_validate(const Common& c, std::size_t n_points) {
  const Resolved r = resolve(c);
  const auto points = sample_validation_points(r.cfg.validation, n_points, c.seed);
  const auto results = cross_validate(r.cfg.scenario, points, c.trials, c.seed, r.quad);
  Output out(c.out);
  return write_validation_report(out.stream(), results, c.seed, c.trials) ? kOk : kValidation;
}

int cmd_mc(const Common& c) {
  const Resolved r = resolve(c);
  const auto t0 = std::chrono::steady_clock::now();
  const auto trials = simulate_trials(r.cfg.scenario, c.trials, c.seed);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Output out(c.out);
  write_trials_csv(out.stream(), trials, r.cfg.scenario, r.rho);
  std::cerr << c.trials << " trials in " << fmt_num(secs, 3) << " s\n";
  return kOk;
}

int cmd_coeffs(const Common& c) {
  const Resolved r = resolve(c);
  Output out(c.out);
  gain_pdf_coeffs(r.cfg.scenario.n_tx, r.cfg.scenario.n_rx).write_csv(out.stream());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swiptsim: joint rate / harvested-power CCDF of SWIPT MIMO cellular downlinks"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", c.config, "JSON config file (built-in defaults when omitted)")->check(CLI::ExistingFile);
    sub->add_option("--seed", c.seed, "Monte Carlo seed");
    sub->add_option("--method", c.method, "analytic, mc or both")->check(CLI::IsMember({"analytic", "mc", "both"}));
    sub->add_option("--out", c.out, "output file (stdout when omitted)");
    sub->add_option("--tol", c.tol, "absolute tolerance of the analytic evaluator")->check(CLI::PositiveNumber);
    sub->add_option("--trials", c.trials, "Monte Carlo trials");
    sub->add_option("--rho", c.rho, "power-splitting ratio in (0, 1)");
    sub->add_option("--ntx", c.ntx, "transmit antennas")->check(CLI::PositiveNumber);
    sub->add_option("--nrx", c.nrx, "receive antennas")->check(CLI::PositiveNumber);
  };

  double rate = 0.0, power_dbm = -60.0;
  auto* eval = app.add_subcommand("eval", "F_c at one target pair");
  add_common(eval);
  eval->add_option("--rate", rate, "rate target R* in bit/s")->required()->check(CLI::NonNegativeNumber);
  eval->add_option("--power-dbm", power_dbm, "power target Q* in dBm")->required();

  auto* sweep = app.add_subcommand("sweep", "F_c over the configured grid (CSV)");
  add_common(sweep);

  std::string extra_out;
  auto* contour = app.add_subcommand("contour", "level-set contours per rho (CSV)");
  add_common(contour);
  contour->add_option("--level", c.level, "probability level of the contour");
  contour->add_option("--envelope-out", extra_out, "also write the envelope of the contours over rho");

  auto* envelope = app.add_subcommand("envelope", "best rho and F_c per grid point (CSV)");
  add_common(envelope);
  envelope->add_option("--level", c.level, "probability level of the envelope contour");
  envelope->add_option("--contour-out", extra_out, "also write the level-set envelope over rho");

  std::size_t n_points = 8;
  auto* validate = app.add_subcommand("validate", "analytic vs Monte Carlo at random parameter points");
  add_common(validate);
  validate->add_option("--points", n_points, "number of sampled points")->check(CLI::NonNegativeNumber);

  auto* mc = app.add_subcommand("mc", "raw Monte Carlo trials (CSV)");
  add_common(mc);

  auto* coeffs = app.add_subcommand("coeffs", "exact coefficients of the channel-gain density (CSV)");
  add_common(coeffs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(c, rate, power_dbm);
    if (*sweep) return cmd_sweep(c);
    if (*contour) return cmd_contour(c, extra_out);
    if (*envelope) return cmd_envelope(c, extra_out);
    if (*validate) return cmd_validate(c, n_points);
    if (*mc) return cmd_mc(c);
    if (*coeffs) return cmd_coeffs(c);
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy failure: " << e.what() << '\n';
    return kAccuracy;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAccuracy;
  }
  return kUsage;
}
