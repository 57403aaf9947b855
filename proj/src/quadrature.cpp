#include "swipt/quadrature.h"

#include <sstream>

#include "swipt/errors.h"

namespace swipt {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("quadrature tolerances must be > 0");
  if (!(omega_max > 0.0)) throw ConfigError("quadrature omega_max must be > 0");
  if (max_panels < 1) throw ConfigError("quadrature max_panels must be >= 1");
}

double WynnEpsilon::next(double partial_sum) {
  constexpr double tiny = std::numeric_limits<double>::min() * 10.0;
  constexpr double huge = std::numeric_limits<double>::max();
  // table_[k] holds the newest entry of column k of the epsilon table.
  table_.push_back(partial_sum);
  const std::size_t n = table_.size() - 1;
  double carry = 0.0;
  for (std::size_t j = n; j > 0; --j) {
    const double older = carry;
    carry = table_[j - 1];
    const double diff = table_[j] - carry;
    table_[j - 1] = std::abs(diff) <= tiny ? huge : older + 1.0 / diff;
  }
  double value = (table_.size() % 2 == 1) ? table_[0] : table_[1];
  if (!std::isfinite(value) || std::abs(value) > 0.01 * huge) value = last_;
  last_change_ = std::abs(value - last_);
  last_ = value;
  return value;
}

double gil_pelaez_cdf(const std::function<std::complex<double>(double)>& cf, double z,
                      const QuadratureSpec& spec, double scale) {
  spec.validate();
  const double w_min = 1e-12 * scale;
  auto integrand = [&](double w) {
    w = std::max(w, w_min);
    const std::complex<double> rotated = std::polar(1.0, -w * z) * cf(w);
    return rotated.imag() / w;
  };
  OscillationHint hint{scale, std::abs(z)};
  const auto r = integrate_semi_infinite(integrand, spec, hint);
  const double value = 0.5 - r.value / std::numbers::pi;
  const double slack = 10.0 * spec.rel_tol;
  if (!r.converged || value < -slack || value > 1.0 + slack) {
    std::ostringstream msg;
    msg << "Gil-Pelaez inversion failed at z = " << z << ": raw value " << value
        << (r.converged ? "" : " (integral did not converge)");
    throw AccuracyError(msg.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace swipt
