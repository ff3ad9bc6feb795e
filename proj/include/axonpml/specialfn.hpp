#pragma once

// Bessel, Hankel and modified Bessel functions of orders 0 and 1.
//
// Complex arguments are restricted to the closed first quadrant
// 0 <= arg z <= pi/2, which covers real wavenumbers k_m r, purely imaginary
// (evanescent) ones, and radially stretched arguments k_m * r~.
//
// Evaluation: power series for |z| < 2; above that, trapezoidal quadrature of
//   H_nu(z) = sqrt(2/(pi z)) e^{i(z - nu pi/2 - pi/4)} / Gamma(nu + 1/2)
//             * int_0^inf e^{-u} u^{nu - 1/2} (1 + iu/(2z))^{nu - 1/2} du,
// whose integrand is analytic in a strip of half-width sqrt|z| after the
// substitution u = s^2, so the rule converges geometrically. Target accuracy
// is 1e-10 relative; observed accuracy is near 1e-14.

#include <complex>

namespace axonpml::special {

using cplx = std::complex<double>;

/// J_order(x), order 0 or 1. Total on the real line.
double bessel_j(int order, double x);

/// Y_order(x) for x > 0.
double bessel_y(int order, double x);

/// H^{(1)}_order(z) for z != 0 in the closed first quadrant.
/// Throws std::domain_error outside that set.
cplx hankel1(int order, cplx z);

/// e^{-iz} H^{(1)}_0(z) and e^{-iz} H^{(1)}_1(z); free of under/overflow for
/// large Im z. Same domain as hankel1.
struct ScaledHankelPair {
  cplx h0;
  cplx h1;
};
ScaledHankelPair hankel1_scaled_pair(cplx z);

/// K_order(t), t > 0. Throws std::domain_error for t <= 0.
double bessel_k(int order, double t);

/// e^t K_order(t), t > 0.
double bessel_k_scaled(int order, double t);

/// h(t) = t H1'(t) / H1(t) = t H0(t) / H1(t) - 1, the per-mode DtN coefficient.
cplx hankel_log_derivative(cplx t);

}  // namespace axonpml::special
