#include "swipt/mimo_gain.h"

#include <bit>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "swipt/errors.h"

namespace swipt {

namespace {

// Polynomial in x and E = exp(-x): (v, u) -> coefficient of x^u E^v.
using BiPoly = std::map<std::pair<int, int>, Rational>;

BiPoly multiply(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      auto& slot = out[{ka.first + kb.first, ka.second + kb.second}];
      slot += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

void accumulate(BiPoly& into, const BiPoly& add, int sign) {
  for (const auto& [k, c] : add) {
    auto& slot = into[k];
    if (sign > 0)
      slot += c;
    else
      slot -= c;
  }
  std::erase_if(into, [](const auto& kv) { return kv.second == 0; });
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// gamma(n, x) = (n-1)! (1 - E sum_{k<n} x^k/k!) for integer n >= 1.
BiPoly lower_gamma(int n) {
  BiPoly g;
  const Rational fn = factorial(n - 1);
  g[{0, 0}] = fn;
  for (int k = 0; k < n; ++k) g[{1, k}] = -fn / factorial(k);
  return g;
}

// Determinant by expansion over column subsets.
BiPoly determinant(const std::vector<std::vector<BiPoly>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<BiPoly> minors(std::size_t{1} << n);
  minors[0][{0, 0}] = 1;
  for (unsigned mask = 0; mask < minors.size(); ++mask) {
    if (minors[mask].empty()) continue;
    const int row = std::popcount(mask);
    if (row == n) continue;
    for (int col = 0; col < n; ++col) {
      if (mask & (1u << col)) continue;
      // Sign of placing `col` after the columns already used that exceed it.
      const int above = std::popcount(mask >> (col + 1));
      accumulate(minors[mask | (1u << col)], multiply(minors[mask], m[row][col]), above % 2 ? -1 : 1);
    }
  }
  return minors.back();
}

Rational rational_pow(int base, int exp) {
  Rational r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

GainPdf gain_pdf_coeffs(int n_tx, int n_rx) {
  if (n_tx < 1 || n_rx < 1) throw ConfigError("gain_pdf_coeffs: antenna counts must be >= 1");
  const int p = std::max(n_tx, n_rx);
  const int q = std::min(n_tx, n_rx);
  if (p + q > kMaxAntennaSum) {
    std::ostringstream msg;
    msg << "gain_pdf_coeffs: N_t + N_r = " << p + q << " exceeds the supported bound " << kMaxAntennaSum;
    throw ConfigError(msg.str());
  }

  GainPdf pdf;
  pdf.p = p;
  pdf.q = q;
  Rational denom = 1;
  for (int a = 1; a <= q; ++a) denom *= factorial(q - a) * factorial(p - a);
  pdf.k_norm = 1 / denom;

  // CDF of the largest eigenvalue: K det[gamma(p - q + i + j + 1, x)]_{i,j < q}.
  std::vector<std::vector<BiPoly>> m(q, std::vector<BiPoly>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) m[i][j] = lower_gamma(p - q + i + j + 1);
  const BiPoly det = determinant(m);

  // d/dx x^u e^{-vx} = u x^{u-1} e^{-vx} - v x^u e^{-vx}.
  for (const auto& [key, c] : det) {
    const auto [v, u] = key;
    if (v == 0) {
      if (u != 0) throw std::logic_error("gain_pdf_coeffs: non-constant polynomial part in the CDF");
      continue;
    }
    if (u > 0) pdf.coeffs[{v, u - 1}] += c * u;
    pdf.coeffs[{v, u}] -= c * v;
  }
  std::erase_if(pdf.coeffs, [](const auto& kv) { return kv.second == 0; });

  for (const auto& [key, c] : pdf.coeffs)
    pdf.terms.push_back({key.first, key.second, static_cast<double>(pdf.k_norm * c)});

  if (pdf.normalization() != 1) throw std::logic_error("gain_pdf_coeffs: density does not normalize");
  return pdf;
}

double GainPdf::eval(double xi) const {
  if (xi < 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coeff * std::pow(xi, t.u) * std::exp(-t.v * xi);
  return sum;
}

double GainPdf::cdf(double xi) const {
  if (xi <= 0.0) return 0.0;
  // 1 - sum K c int_xi^inf x^u e^{-vx} dx, with the tail as u!/v^{u+1} e^{-v xi} sum_k (v xi)^k/k!.
  double tail = 0.0;
  for (const auto& t : terms) {
    double partial = 0.0;
    double term = 1.0;
    for (int k = 0; k <= t.u; ++k) {
      if (k > 0) term *= t.v * xi / k;
      partial += term;
    }
    tail += t.coeff * std::tgamma(t.u + 1.0) / std::pow(t.v, t.u + 1) * std::exp(-t.v * xi) * partial;
  }
  return 1.0 - tail;
}

double GainPdf::mean() const { return static_cast<double>(exact_mean()); }

Rational GainPdf::normalization() const {
  Rational s = 0;
  for (const auto& [key, c] : coeffs) s += c * factorial(key.second) / rational_pow(key.first, key.second + 1);
  return k_norm * s;
}

Rational GainPdf::exact_mean() const {
  Rational s = 0;
  for (const auto& [key, c] : coeffs)
    s += c * factorial(key.second + 1) / rational_pow(key.first, key.second + 2);
  return k_norm * s;
}

void GainPdf::write_csv(std::ostream& os) const {
  os << "v,u,numerator,denominator\n";
  for (const auto& [key, c] : coeffs) {
    os << key.first << ',' << key.second << ',' << boost::multiprecision::numerator(c) << ','
       << boost::multiprecision::denominator(c) << '\n';
  }
}

double sample_gain(int n_tx, int n_rx, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const int rows = n_rx;
  const int cols = n_tx;
  const int q = std::min(rows, cols);
  const int p = std::max(rows, cols);
  // Gram matrix of the smaller dimension: G = A A^H with A q x p, same nonzero spectrum.
  Eigen::MatrixXcd a(q, p);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < p; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(i, j) = {re, im};
    }
  if (q == 1) return a.row(0).squaredNorm();
  if (q == 2) {
    const double g00 = a.row(0).squaredNorm();
    const double g11 = a.row(1).squaredNorm();
    const double off = std::norm(a.row(0).dot(a.row(1)));
    const double half = 0.5 * (g00 - g11);
    return 0.5 * (g00 + g11) + std::sqrt(half * half + off);
  }
  const Eigen::MatrixXcd g = a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

}  // namespace swipt
