#pragma once

#include <complex>
#include <utility>

#include "swipt/quadrature.h"

namespace swipt {

using cplx = std::complex<double>;

// Upper incomplete gamma function of positive integer order,
// Gamma(n, z) = (n-1)! e^{-z} sum_{k<n} z^k / k!.
cplx upper_gamma_int(int n, cplx z);

// int_A^inf x^u e^{-Z x} dx = Z^{-(1+u)} Gamma(1+u, A Z), Re Z > 0, A >= 0.
// Evaluated as u! e^{-AZ} sum_k A^k Z^{k-1-u} / k!, which avoids forming
// Gamma(1+u, .) for large |Z|.
cplx upper_notable_integral(int u, double a, cplx z);

// int_0^A x^u e^{-Z x} dx = Z^{-(1+u)} gamma(1+u, A Z).
cplx lower_notable_integral(int u, double a, cplx z);

// 2F1(1, -2/beta; 1 - 2/beta; j omega / Z): the interference kernel.
// Throws AccuracyError (with the arguments) if a series fails to converge.
cplx upsilon(double omega, double z, double beta);

// Same kernel as a function of the purely imaginary argument j*t, t >= 0,
// with b = -2/beta.
cplx hyp2f1_kernel(double t, double b);

// Numerical quadrature vs closed form of int_A^inf x^u e^{-Zx} dx.
// Returns (quadrature, closed form). Used for verification.
std::pair<cplx, cplx> verify_notable_integral(int u, double a, cplx z);

}  // namespace swipt
