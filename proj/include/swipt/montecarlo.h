#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "swipt/jccdf.h"
#include "swipt/scenario.h"

namespace swipt {

// Independent, reproducible random stream for (seed, stream index).
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

// Default simulation disc radius: 20 average cell radii.
double default_sim_radius(const Scenario& s);

// One PPP snapshot around the typical user at the origin.
struct NetworkRealization {
  std::vector<std::array<double, 2>> positions;  // m
  std::vector<LinkState> states;
  std::vector<double> pathlosses;
  std::size_t serving_index = 0;
  double chi0 = 0.0;            // intended-link gain
  std::vector<double> gammas;  // Exp(1) gains, one per non-serving BS in index order
};

struct TrialOutcome {
  double rate_bps = 0.0;
  double power_w = 0.0;
  double interference = 0.0;  // sum gamma_i / l_i
  double l0 = 0.0;
};

// Throws AccuracyError when repeated draws produce an empty disc.
NetworkRealization sample_network(const Scenario& s, double r_sim, std::mt19937_64& rng);

double aggregate_interference(const NetworkRealization& net);

// Throws BoundaryError for rho outside (0, 1).
TrialOutcome realize_rate_power(const NetworkRealization& net, const Scenario& s, double rho);

// Sufficient statistics of one trial; rate and power follow for any rho.
struct TrialSample {
  double l0 = 0.0;
  double chi0 = 0.0;
  double interference = 0.0;
};

TrialOutcome outcome_of(const TrialSample& t, const Scenario& s, double rho);

// n trials, trial i drawn from stream (seed, i). r_sim <= 0 selects the default.
std::vector<TrialSample> simulate_trials(const Scenario& s, std::size_t n_trials, std::uint64_t seed,
                                         double r_sim = 0.0);

// Interference seen when the serving path-loss is l0: the PPP with every
// point of path-loss <= l0 removed.
double sample_interference_given_serving(const Scenario& s, double l0, double r_sim, std::mt19937_64& rng);

// Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z = 1.959963984540054);

using TargetPair = std::pair<double, double>;  // (R* bit/s, Q* W)

// Fraction of trials with R >= R* and Q >= Q*, for every grid point, over one
// common set of trials.
std::vector<JccdfEstimate> empirical_jccdf(const std::vector<TrialSample>& trials, const Scenario& s, double rho,
                                           const std::vector<TargetPair>& grid);
std::vector<JccdfEstimate> empirical_jccdf(const Scenario& s, double rho, const std::vector<TargetPair>& grid,
                                           std::size_t n_trials, std::uint64_t seed, double r_sim = 0.0);

// Columns: trial,l0,chi0,I,R_bps,Q_watt.
void write_trials_csv(std::ostream& os, const std::vector<TrialSample>& trials, const Scenario& s, double rho);

}  // namespace swipt
