#include "swipt/montecarlo.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "swipt/errors.h"
#include "swipt/format.h"
#include "swipt/mimo_gain.h"
#include "swipt/parallel.h"

namespace swipt {

namespace {
constexpr int kMaxEmptyRetries = 64;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

double default_sim_radius(const Scenario& s) { return 20.0 / std::sqrt(std::numbers::pi * s.density); }

namespace {

// Positions/states/path-losses of a PPP on the disc; returns the point count.
template <class Visit>
void scatter(const Scenario& s, double r_sim, std::mt19937_64& rng, std::size_t count, Visit&& visit) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = r_sim * std::sqrt(unif(rng));
    const double theta = 2.0 * std::numbers::pi * unif(rng);
    const LinkState state =
        unif(rng) < s.blockage.probability(LinkState::Los, r) ? LinkState::Los : LinkState::Nlos;
    visit(r, theta, state, s.pathloss.loss(state, r));
  }
}

}  // namespace

NetworkRealization sample_network(const Scenario& s, double r_sim, std::mt19937_64& rng) {
  if (!(r_sim > 0.0)) throw ConfigError("sample_network: r_sim must be > 0");
  const double mean = s.density * std::numbers::pi * r_sim * r_sim;
  std::poisson_distribution<std::size_t> poisson(mean);
  std::size_t count = 0;
  for (int attempt = 0; attempt < kMaxEmptyRetries && count == 0; ++attempt) count = poisson(rng);
  if (count == 0) throw AccuracyError("sample_network: no base station in the simulation disc (density too low)");

  NetworkRealization net;
  net.positions.reserve(count);
  net.states.reserve(count);
  net.pathlosses.reserve(count);
  scatter(s, r_sim, rng, count, [&](double r, double theta, LinkState state, double loss) {
    net.positions.push_back({r * std::cos(theta), r * std::sin(theta)});
    net.states.push_back(state);
    net.pathlosses.push_back(loss);
  });
  net.serving_index = static_cast<std::size_t>(
      std::min_element(net.pathlosses.begin(), net.pathlosses.end()) - net.pathlosses.begin());
  net.chi0 = sample_gain(s.n_tx, s.n_rx, rng);
  std::exponential_distribution<double> expo(1.0);
  net.gammas.resize(count - 1);
  for (auto& g : net.gammas) g = expo(rng);
  return net;
}

double aggregate_interference(const NetworkRealization& net) {
  double sum = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < net.pathlosses.size(); ++i) {
    if (i == net.serving_index) continue;
    sum += net.gammas[k++] / net.pathlosses[i];
  }
  return sum;
}

TrialOutcome outcome_of(const TrialSample& t, const Scenario& s, double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    throw BoundaryError("rho must lie in (0, 1): rho -> 0 gives Q = 0, rho -> 1 gives R = 0");
  const double p = s.tx_power_w;
  const double signal = p * t.chi0 / t.l0;
  const double interference = p * t.interference;
  TrialOutcome out;
  out.interference = t.interference;
  out.l0 = t.l0;
  out.rate_bps = s.bandwidth_hz * std::log2(1.0 + signal / (interference + s.noise_w + s.id_noise_w / (1.0 - rho)));
  out.power_w = rho * s.conversion_efficiency * (signal + interference);
  return out;
}

TrialOutcome realize_rate_power(const NetworkRealization& net, const Scenario& s, double rho) {
  return outcome_of({net.pathlosses[net.serving_index], net.chi0, aggregate_interference(net)}, s, rho);
}

std::vector<TrialSample> simulate_trials(const Scenario& s, std::size_t n_trials, std::uint64_t seed, double r_sim) {
  if (r_sim <= 0.0) r_sim = default_sim_radius(s);
  std::vector<TrialSample> out(n_trials);
  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (n_trials + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(n_trials, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      auto rng = make_stream(seed, i);
      const auto net = sample_network(s, r_sim, rng);
      out[i] = {net.pathlosses[net.serving_index], net.chi0, aggregate_interference(net)};
    }
  });
  return out;
}

double sample_interference_given_serving(const Scenario& s, double l0, double r_sim, std::mt19937_64& rng) {
  const double mean = s.density * std::numbers::pi * r_sim * r_sim;
  std::poisson_distribution<std::size_t> poisson(mean);
  std::exponential_distribution<double> expo(1.0);
  double sum = 0.0;
  scatter(s, r_sim, rng, poisson(rng), [&](double, double, LinkState, double loss) {
    const double gain = expo(rng);
    if (loss > l0) sum += gain / loss;
  });
  return sum;
}

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  // the score interval always contains phat; keep that under rounding
  return {std::clamp(center - half, 0.0, phat), std::clamp(center + half, phat, 1.0)};
}

std::vector<JccdfEstimate> empirical_jccdf(const std::vector<TrialSample>& trials, const Scenario& s, double rho,
                                           const std::vector<TargetPair>& grid) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> hits(grid.size(), 0);
  for (const auto& t : trials) {
    const auto o = outcome_of(t, s, rho);
    for (std::size_t g = 0; g < grid.size(); ++g)
      if (o.rate_bps >= grid[g].first && o.power_w >= grid[g].second) ++hits[g];
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<JccdfEstimate> out(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    auto& e = out[g];
    e.method = Method::MonteCarlo;
    e.value = static_cast<double>(hits[g]) / static_cast<double>(trials.size());
    std::tie(e.ci_low, e.ci_high) = wilson_interval(hits[g], trials.size());
    e.error_bound = std::max(e.ci_high - e.value, e.value - e.ci_low);
    e.evaluations = trials.size();
    e.wall_time_s = elapsed;
  }
  return out;
}

std::vector<JccdfEstimate> empirical_jccdf(const Scenario& s, double rho, const std::vector<TargetPair>& grid,
                                           std::size_t n_trials, std::uint64_t seed, double r_sim) {
  if (n_trials < 1000) throw ConfigError("empirical_jccdf: at least 1000 trials are required");
  const auto start = std::chrono::steady_clock::now();
  auto out = empirical_jccdf(simulate_trials(s, n_trials, seed, r_sim), s, rho, grid);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& e : out) e.wall_time_s = elapsed;
  return out;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialSample>& trials, const Scenario& s, double rho) {
  os << "trial,l0,chi0,I,R_bps,Q_watt\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto o = outcome_of(trials[i], s, rho);
    os << i << ',' << fmt_num(trials[i].l0) << ',' << fmt_num(trials[i].chi0) << ','
       << fmt_num(trials[i].interference) << ',' << fmt_num(o.rate_bps) << ',' << fmt_num(o.power_w) << '\n';
  }
}

}  // namespace swipt
