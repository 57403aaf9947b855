#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <type_traits>
#include <vector>

namespace swipt {

// Accuracy controls for the oscillatory omega-integrals.
struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  double omega_max = 1e14;  // cap on the integration variable of semi-infinite integrals
  int max_panels = 600;     // panels per semi-infinite integral

  void validate() const;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F, class T>
Segment<T> kronrod15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  std::array<T, 15> fv;
  fv[7] = fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    fv[i] = f1;
    fv[14 - i] = f2;
    kron += (f1 + f2) * kKronrodWeights[i];
    if (i % 2 == 1) gauss += (f1 + f2) * kGaussWeights[i / 2];
  }
  // QUADPACK-style error scaling.
  const T mean = kron * 0.5;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i)
    asc += kKronrodWeights[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  asc *= std::abs(h);
  double err = std::abs((kron - gauss) * h);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kron * h));
  return {a, b, kron * h, err};
}

}  // namespace detail

// Globally adaptive 15-point Gauss-Kronrod on [a, b]. Works for real and
// complex valued integrands.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                        int max_segments = 200) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  QuadResult<T> out;
  if (a == b) return out;
  std::priority_queue<detail::Segment<T>> heap;
  auto first = detail::kronrod15<F, T>(f, a, b);
  out.evaluations = 15;
  T total = first.value;
  double err = first.error;
  heap.push(first);
  int segments = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (segments >= max_segments) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval no longer splittable
      heap.push(worst);
      out.converged = false;
      break;
    }
    auto left = detail::kronrod15<F, T>(f, worst.a, mid);
    auto right = detail::kronrod15<F, T>(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Re-sum to shed the cancellation drift of the incremental updates.
  T sum{};
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  return out;
}

// Wynn epsilon extrapolation of a sequence of partial sums.
class WynnEpsilon {
 public:
  // Feeds the next partial sum, returns the current extrapolated limit.
  double next(double partial_sum);
  double last_change() const { return last_change_; }
  std::size_t size() const { return table_.size(); }

 private:
  std::vector<double> table_;
  double last_ = 0.0;
  double last_change_ = std::numeric_limits<double>::infinity();
};

// Where the integrand lives on [0, inf): `scale` is the width of the first
// panel; `frequency` is the asymptotic angular frequency of its oscillation
// (0 when it does not oscillate), used to switch to half-period panels.
struct OscillationHint {
  double scale = 1.0;
  double frequency = 0.0;
};

namespace detail {
// Half-periods per geometric panel above which the tail switches to
// half-period panels with extrapolation.
inline constexpr double kOscillationSwitch = 24.0 * std::numbers::pi;
}  // namespace detail

// Integral of a real integrand over [0, inf) that decays, possibly slowly and
// with oscillation. Geometric panels [w, 2w] are integrated adaptively until
// two consecutive panel contributions fall below tolerance; once a panel would
// hold many oscillations the tail is cut into half-periods and the partial sums
// are accelerated with the epsilon algorithm.
template <class F>
QuadResult<double> integrate_semi_infinite(F&& f, const QuadratureSpec& spec, OscillationHint hint = {}) {
  QuadResult<double> out;
  const double tol_floor = spec.abs_tol;
  auto panel_tol = [&](double total) { return std::max(tol_floor, spec.rel_tol * std::abs(total)); };

  double b = std::min(hint.scale, spec.omega_max);
  if (hint.frequency > 0.0) b = std::min(b, 0.5 * detail::kOscillationSwitch / hint.frequency);
  auto r0 = integrate_adaptive(f, 0.0, b, 0.25 * tol_floor, 0.25 * spec.rel_tol);
  double total = r0.value;
  out.error = r0.error;
  out.evaluations = r0.evaluations;
  out.converged = r0.converged;
  int panels = 1;
  int quiet = 0;

  const bool oscillating = hint.frequency > 0.0;
  while (!(oscillating && b * hint.frequency > detail::kOscillationSwitch)) {
    if (b >= spec.omega_max || panels >= spec.max_panels) {
      out.converged = false;
      out.value = total;
      return out;
    }
    const double next = std::min(2.0 * b, spec.omega_max);
    auto r = integrate_adaptive(f, b, next, 0.25 * panel_tol(total), 0.25 * spec.rel_tol);
    total += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
    ++panels;
    b = next;
    quiet = std::abs(r.value) <= panel_tol(total) ? quiet + 1 : 0;
    if (quiet >= 2) {
      out.value = total;
      out.error += std::abs(r.value);
      return out;
    }
  }

  // Oscillatory tail.
  const double half_period = std::numbers::pi / hint.frequency;
  WynnEpsilon accel;
  double partial = total;
  double estimate = accel.next(partial);
  int stable = 0;
  while (panels < spec.max_panels && b < spec.omega_max) {
    const double next = b + half_period;
    auto r = integrate_adaptive(f, b, next, 0.25 * panel_tol(partial), 0.25 * spec.rel_tol, 50);
    out.evaluations += r.evaluations;
    out.error += r.error;
    partial += r.value;
    ++panels;
    b = next;
    const double prev = estimate;
    estimate = accel.next(partial);
    const double change = std::abs(estimate - prev);
    stable = (change <= panel_tol(estimate) && accel.size() >= 4) ? stable + 1 : 0;
    if (stable >= 3) {
      out.value = estimate;
      out.error += change;
      return out;
    }
  }
  out.converged = false;
  out.value = estimate;
  out.error += accel.last_change();
  return out;
}

// CDF at z of the law with characteristic function cf(w) = E[exp(j w X)]:
// F(z) = 1/2 - (1/pi) int_0^inf Im{exp(-j w z) cf(w)} / w dw.
// `scale` is a characteristic width of cf in w. Throws AccuracyError when
// the integral does not converge or the raw value leaves [0, 1] by more than
// 10 * rel_tol.
double gil_pelaez_cdf(const std::function<std::complex<double>(double)>& cf, double z,
                      const QuadratureSpec& spec, double scale = 1.0);

}  // namespace swipt
