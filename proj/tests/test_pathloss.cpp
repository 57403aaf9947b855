#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "swipt/errors.h"
#include "swipt/pathloss.h"

using namespace swipt;
using boost::math::quadrature::gauss_kronrod;

namespace {

// Mean number of state-s stations with path-loss below x, integrated over distance.
double measure_by_distance(const Scenario& s, double x, LinkState st) {
  const double r_x = std::pow(x / s.pathloss.kappa(st), 1.0 / s.pathloss.beta(st));
  auto f = [&](double r) { return 2.0 * M_PI * s.density * r * s.blockage.probability(st, r); };
  const double d = s.blockage.breaking_distance_m;
  if (r_x <= d) return gauss_kronrod<double, 31>::integrate(f, 0.0, r_x, 0, 1e-13);
  return gauss_kronrod<double, 31>::integrate(f, 0.0, d, 0, 1e-13) +
         gauss_kronrod<double, 31>::integrate(f, d, r_x, 0, 1e-13);
}

}  // namespace

TEST_SUITE("pathloss") {

TEST_CASE("intensity measure matches integration over distance") {
  const Scenario s = build_scenario(RawConfig{});
  const IntensityMeasure m(s);
  for (LinkState st : kLinkStates)
    for (double x : {1e6, 1e8, 4.5e8, 9.8e8, 1e10, 1.077e11, 1e12, 1e14}) {
      const double want = measure_by_distance(s, x, st);
      CHECK(m.measure(x, st) == doctest::Approx(want).epsilon(1e-10));
    }
  CHECK(m.measure(0.0) == 0.0);
}

TEST_CASE("intensity measure is continuous at the breaking path-loss") {
  const IntensityMeasure m(build_scenario(RawConfig{}));
  for (LinkState st : kLinkStates) {
    const double xb = m.breaking_loss(st);
    CHECK(m.measure(xb * (1 - 1e-12), st) == doctest::Approx(m.measure(xb * (1 + 1e-12), st)).epsilon(1e-9));
  }
}

TEST_CASE("density is the derivative of the measure") {
  const IntensityMeasure m(build_scenario(RawConfig{}));
  for (LinkState st : kLinkStates)
    for (double x : {3e7, 2e8, 5e9, 4e10, 7e11}) {
      const double h = x * 1e-5;
      const double fd = (m.measure(x + h, st) - m.measure(x - h, st)) / (2 * h);
      CHECK(m.density(x, st) == doctest::Approx(fd).epsilon(1e-7));
    }
  // right limit at the jump
  const double xb = m.breaking_loss(LinkState::Los);
  const double h = xb * 1e-6;
  CHECK(m.density(xb, LinkState::Los) == doctest::Approx((m.measure(xb + h, LinkState::Los) - m.measure(xb, LinkState::Los)) / h).epsilon(1e-5));
}

TEST_CASE("serving path-loss law") {
  const IntensityMeasure m(build_scenario(RawConfig{}));
  CHECK(serving_cdf(m, 0.0) == 0.0);
  double prev = 0.0;
  for (double x = 1e6; x < 1e13; x *= 1.7) {
    const double f = serving_cdf(m, x);
    CHECK(f >= prev);
    CHECK(f == doctest::Approx(1.0 - std::exp(-m.measure(x))));
    prev = f;
  }
  for (double p : {1e-6, 0.1, 0.5, 0.9, 0.999999}) CHECK(serving_cdf(m, serving_quantile(m, p)) == doctest::Approx(p).epsilon(1e-9));
  // pdf integrates to 1
  const double lo = serving_quantile(m, 1e-12), hi = serving_quantile(m, 1 - 1e-12);
  const double xl = m.breaking_loss(LinkState::Los), xn = m.breaking_loss(LinkState::Nlos);
  auto f = [&](double u) { const double x = std::exp(u); return serving_pdf(m, x) * x; };
  double total = 0.0;
  for (auto [a, b] : {std::pair{lo, xl}, std::pair{xl, xn}, std::pair{xn, hi}})
    total += gauss_kronrod<double, 61>::integrate(f, std::log(a), std::log(b), 15, 1e-12);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(serving_quantile(m, 1.0), ConfigError);
}

TEST_CASE("inverse of the measure") {
  const IntensityMeasure m(build_scenario(RawConfig{}));
  for (double t : {1e-9, 0.01, 1.0, 3.0, 50.0}) CHECK(m.measure(m.inverse(t)) == doctest::Approx(t).epsilon(1e-9));
}

}
