#include "swipt/specfun.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "swipt/errors.h"

namespace swipt {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

constexpr int kMaxSeriesTerms = 4000;
constexpr double kSeriesTol = 1e-16;

// Regions of the kernel argument |z| = t: direct series, Pfaff-transformed
// series, and the 1/z connection formula.
constexpr double kDirectMax = 0.7;
constexpr double kInversionMin = 1.6;

[[noreturn]] void series_failure(const char* which, double t, double b) {
  std::ostringstream msg;
  msg << "hypergeometric kernel: " << which << " series did not converge (t = " << t << ", b = " << b
      << ")";
  throw AccuracyError(msg.str());
}

// sum_{k>=0} a_k w^k with a_k = c / (c + k).
cplx ratio_series(double c, cplx w, double t, double b, const char* which) {
  cplx sum = 1.0;
  cplx power = 1.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    power *= w;
    const cplx term = power * (c / (c + k));
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum)) return sum;
  }
  series_failure(which, t, b);
}

}  // namespace

cplx upper_gamma_int(int n, cplx z) {
  if (n < 1) throw ConfigError("upper_gamma_int: order must be a positive integer");
  if (std::abs(z) <= 1.0) {
    cplx sum = 0.0;
    cplx term = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k > 0) term *= z / static_cast<double>(k);
      sum += term;
    }
    return factorial(n - 1) * std::exp(-z) * sum;
  }
  // Scaled backwards: (n-1)! z^k / k! = z^(n-1) * prod_{i=k+1}^{n-1} i / z.
  cplx sum = 1.0;
  cplx term = 1.0;
  for (int k = n - 2; k >= 0; --k) {
    term *= static_cast<double>(k + 1) / z;
    sum += term;
  }
  return std::exp(-z + static_cast<double>(n - 1) * std::log(z)) * sum;
}

cplx upper_notable_integral(int u, double a, cplx z) {
  if (u < 0) throw ConfigError("upper_notable_integral: u must be >= 0");
  // u! e^{-Az} sum_{k=0}^{u} A^k z^{k-1-u} / k!
  const cplx inv = 1.0 / z;
  cplx sum = 0.0;
  cplx term = std::pow(inv, u + 1);  // k = 0 term, times u!/0!
  for (int k = 0; k <= u; ++k) {
    if (k > 0) term *= a * z / static_cast<double>(k);
    sum += term;
  }
  return factorial(u) * std::exp(-a * z) * sum;
}

cplx lower_notable_integral(int u, double a, cplx z) {
  if (u < 0) throw ConfigError("lower_notable_integral: u must be >= 0");
  if (a == 0.0) return 0.0;
  const cplx az = a * z;
  if (std::abs(az) < 1.0) {
    // A^{1+u} sum_k (-Az)^k / (k! (u+1+k))
    cplx sum = 0.0;
    cplx term = 1.0;
    for (int k = 0; k < 200; ++k) {
      if (k > 0) term *= -az / static_cast<double>(k);
      const cplx add = term / static_cast<double>(u + 1 + k);
      sum += add;
      if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return std::pow(a, u + 1) * sum;
  }
  return factorial(u) * std::pow(1.0 / z, u + 1) - upper_notable_integral(u, a, z);
}

cplx hyp2f1_kernel(double t, double b) {
  // 2F1(1, b; b+1; jt) for b in (-1, 0).
  if (t == 0.0) return 1.0;
  const cplx z(0.0, t);
  if (t <= kDirectMax) {
    // sum_k b/(b+k) z^k
    return ratio_series(b, z, t, b, "direct");
  }
  if (t < kInversionMin) {
    // Pfaff: (1-z)^{-1} 2F1(1, 1; b+1; z/(z-1)), coefficients k!/(b+1)_k.
    const cplx w = z / (z - 1.0);
    cplx sum = 1.0;
    cplx term = 1.0;
    int k = 1;
    for (; k < kMaxSeriesTerms; ++k) {
      term *= w * (static_cast<double>(k) / (b + static_cast<double>(k)));
      sum += term;
      if (std::abs(term) <= kSeriesTol * std::abs(sum)) break;
    }
    if (k == kMaxSeriesTerms) series_failure("Pfaff", t, b);
    return sum / (1.0 - z);
  }
  // Connection formula for 1/z:
  // pi b / sin(pi b) (-z)^{-b} + b/(b-1) (-z)^{-1} 2F1(1, 1-b; 2-b; 1/z).
  const cplx mz = -z;
  const cplx head = std::numbers::pi * b / std::sin(std::numbers::pi * b) * std::exp(-b * std::log(mz));
  const cplx tail = ratio_series(1.0 - b, 1.0 / z, t, b, "inverted");
  return head + (b / (b - 1.0)) * tail / mz;
}

cplx upsilon(double omega, double z, double beta) {
  if (!(omega >= 0.0) || !(z > 0.0) || !(beta > 2.0) || !std::isfinite(omega) || !std::isfinite(z)) {
    std::ostringstream msg;
    msg << "upsilon: invalid arguments (omega = " << omega << ", Z = " << z << ", beta = " << beta << ")";
    throw ConfigError(msg.str());
  }
  try {
    return hyp2f1_kernel(omega / z, -2.0 / beta);
  } catch (const AccuracyError& e) {
    std::ostringstream msg;
    msg << e.what() << " [omega = " << omega << ", Z = " << z << ", beta = " << beta << "]";
    throw AccuracyError(msg.str());
  }
}

std::pair<cplx, cplx> verify_notable_integral(int u, double a, cplx z) {
  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-15;
  const double scale = 1.0 / z.real();
  auto part = [&](bool imag) {
    auto f = [&](double s) {
      const cplx v = std::pow(a + s, u) * std::exp(-z * (a + s));
      return imag ? v.imag() : v.real();
    };
    return integrate_semi_infinite(f, spec, {scale, 0.0}).value;
  };
  const cplx lhs(part(false), part(true));
  const cplx rhs = std::pow(z, -(u + 1.0)) * upper_gamma_int(u + 1, a * z);
  return {lhs, rhs};
}

}  // namespace swipt
