#pragma once

#include <map>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "swipt/scenario.h"

namespace swipt {

using Rational = boost::multiprecision::cpp_rational;

// Density of the MRT/MRC intended-link gain (largest eigenvalue of the
// channel Gram matrix) in mixture form
//   f(xi) = K_{p,q} sum_{v,u} c_{v,u} xi^u exp(-v xi).
struct GainPdf {
  struct Term {
    int v;
    int u;
    double coeff;  // K_{p,q} * c_{v,u}
  };

  int p = 1;
  int q = 1;
  Rational k_norm;                              // K_{p,q}
  std::map<std::pair<int, int>, Rational> coeffs;  // (v, u) -> c_{v,u}
  std::vector<Term> terms;                      // floating copy, K folded in

  double eval(double xi) const;
  double cdf(double xi) const;
  double mean() const;

  // K sum c u!/v^(u+1), exactly.
  Rational normalization() const;
  // K sum c (u+1)!/v^(u+2), exactly.
  Rational exact_mean() const;

  // CSV dump: v,u,numerator,denominator.
  void write_csv(std::ostream& os) const;
};

// Throws ConfigError for counts < 1 or p + q beyond kMaxAntennaSum.
GainPdf gain_pdf_coeffs(int n_tx, int n_rx);

inline double gain_pdf_eval(const GainPdf& pdf, double xi) { return pdf.eval(xi); }

// Largest eigenvalue of H H^H with H an n_rx x n_tx matrix of i.i.d. CN(0, 1)
// entries.
double sample_gain(int n_tx, int n_rx, std::mt19937_64& rng);

}  // namespace swipt
