#include <doctest.h>

#include <cmath>
#include <random>

#include "swipt/errors.h"
#include "swipt/specfun.h"

using namespace swipt;

namespace {

bool close(cplx got, cplx want, double rel) { return std::abs(got - want) <= rel * std::abs(want); }

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("upper incomplete gamma of integer order") {
  // reference values from arbitrary-precision evaluation
  CHECK(close(upper_gamma_int(2, {1.0, 2.0}), {0.36283992713007191, -0.97520738982697708}, 1e-13));
  CHECK(close(upper_gamma_int(5, {0.3, -4.0}), {99.349095193179894, -115.3261137448834}, 1e-13));
  CHECK(close(upper_gamma_int(1, {10.0, 0.5}), {3.9842186670604437e-5, -2.1765885778972286e-5}, 1e-13));
  CHECK(close(upper_gamma_int(7, {25.0, 3.0}), {-0.0031004491720284454, -0.0033570083107818615}, 1e-12));
  CHECK(close(upper_gamma_int(4, {0.0, 0.0}), {6.0, 0.0}, 1e-15));
}

TEST_CASE("Gamma(n+1, z) = n Gamma(n, z) + z^n e^{-z}") {
  for (cplx z : {cplx{0.5, 0.0}, cplx{2.0, -3.0}, cplx{0.01, 40.0}, cplx{12.0, 1.0}})
    for (int n = 1; n < 12; ++n) {
      const cplx lhs = upper_gamma_int(n + 1, z);
      const cplx rhs = double(n) * upper_gamma_int(n, z) + std::pow(z, n) * std::exp(-z);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + std::abs(rhs)));
    }
}

TEST_CASE("notable integrals against reference values") {
  CHECK(close(upper_notable_integral(0, 0.5, {1.0, 2.0}), {-0.13860919781333716, -0.23315955591789849}, 1e-13));
  CHECK(close(lower_notable_integral(0, 0.5, {1.0, 2.0}), {0.33860919781333716, -0.16684044408210151}, 1e-13));
  CHECK(close(upper_notable_integral(3, 2.0, {0.5, -7.0}), {-0.42267107718739739, -0.0029179018736820748}, 1e-12));
  CHECK(close(lower_notable_integral(3, 2.0, {0.5, -7.0}), {0.42504478720483635, 0.0022218702582465749}, 1e-12));
  CHECK(close(upper_notable_integral(2, 0.0, {3.0, 1.0}), {0.036, -0.052}, 1e-14));
  CHECK(std::abs(lower_notable_integral(2, 0.0, {3.0, 1.0})) == 0.0);
  CHECK(close(upper_notable_integral(5, 10.0, {0.2, 0.2}), {2255.3849063744541, 264080.15121026663}, 1e-12));
  CHECK(close(lower_notable_integral(5, 10.0, {0.2, 0.2}), {-2255.3849063744541, -29705.151210266713}, 1e-11));
}

TEST_CASE("notable integral identity over a parameter grid") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.05, 5.0), im(-20.0, 20.0), a(0.0, 6.0);
  for (int i = 0; i < 40; ++i) {
    const int u = i % 8;
    const cplx z{re(rng), im(rng)};
    const double A = a(rng);
    const auto [quad, closed] = verify_notable_integral(u, A, z);
    CHECK(std::abs(quad - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
    // lower + upper = u! / Z^(u+1)
    const cplx whole = std::tgamma(u + 1.0) / std::pow(z, u + 1);
    CHECK(std::abs(lower_notable_integral(u, A, z) + upper_notable_integral(u, A, z) - whole) <=
          1e-10 * std::max(1.0, std::abs(whole)));
  }
}

TEST_CASE("hypergeometric kernel in all three regions") {
  const double b7 = -4.0 / 7.0;
  CHECK(close(hyp2f1_kernel(0.5, b7), {1.0909767022801313, -0.64070299660427925}, 1e-12));
  CHECK(close(hyp2f1_kernel(0.75, b7), {1.1856383469657886, -0.92300367737607744}, 1e-12));
  CHECK(close(hyp2f1_kernel(1.0, b7), {1.2951236409053631, -1.1760000058488594}, 1e-12));
  CHECK(close(hyp2f1_kernel(1.2, b7), {1.3873230861499509, -1.3597382545782379}, 1e-12));
  CHECK(close(hyp2f1_kernel(0.1, -0.8), {1.0066418194103342, -0.39963825559182589}, 1e-12));
  CHECK(close(hyp2f1_kernel(10.0, -0.8), {8.3397203647887376, -25.614042337977657}, 1e-12));
  CHECK(close(hyp2f1_kernel(1e4, -0.8), {2094.1295180072682, -6445.0678978304816}, 1e-12));
  CHECK(close(hyp2f1_kernel(0.0, -0.8), {1.0, 0.0}, 1e-15));
}

TEST_CASE("hypergeometric kernel is continuous across region boundaries") {
  for (double b : {-0.8, -4.0 / 7.0, -0.3})
    for (double t : {0.7, 1.6}) {
      const cplx lo = hyp2f1_kernel(t * (1 - 1e-12), b), hi = hyp2f1_kernel(t * (1 + 1e-12), b);
      CHECK(std::abs(lo - hi) <= 1e-10 * std::abs(lo));
    }
}

TEST_CASE("upsilon wraps the kernel and validates its arguments") {
  CHECK(close(upsilon(3.0, 6.0, 3.5), hyp2f1_kernel(0.5, -2.0 / 3.5), 1e-15));
  CHECK_THROWS_AS(upsilon(1.0, 0.0, 3.0), ConfigError);
  CHECK_THROWS_AS(upsilon(1.0, 1.0, 2.0), ConfigError);
}

}
