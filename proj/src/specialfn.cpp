#include "axonpml/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace axonpml::special {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kSeriesRadius = 2.0;
constexpr cplx kI{0.0, 1.0};

void check_order(int order) {
  if (order != 0 && order != 1) {
    throw std::invalid_argument("Bessel order must be 0 or 1, got " + std::to_string(order));
  }
}

void check_first_quadrant(cplx z, const char* who) {
  const double mag = std::abs(z);
  if (!std::isfinite(mag)) {
    throw std::domain_error(std::string(who) + ": non-finite argument");
  }
  if (mag == 0.0) {
    throw std::domain_error(std::string(who) + ": singular at z = 0");
  }
  const double slack = 1e-12 * mag;
  if (z.real() < -slack || z.imag() < -slack) {
    throw std::domain_error(std::string(who) + ": argument outside 0 <= arg z <= pi/2");
  }
}

// Nodes s_k = k*h and weights h * 2 e^{-s_k^2} (half weight at s = 0) of the
// trapezoidal rule on [0, 6.6]; the truncated tail is below e^{-43}.
struct TrapezoidRule {
  static constexpr int kNodes = 45;
  static constexpr double kStep = 0.15;
  std::array<double, kNodes> s2{};
  std::array<double, kNodes> weight{};
};

const TrapezoidRule& trapezoid() {
  static const TrapezoidRule rule = [] {
    TrapezoidRule r;
    for (int k = 0; k < TrapezoidRule::kNodes; ++k) {
      const double s = k * TrapezoidRule::kStep;
      r.s2[k] = s * s;
      r.weight[k] = TrapezoidRule::kStep * (k == 0 ? 0.5 : 1.0) * 2.0 * std::exp(-s * s);
    }
    return r;
  }();
  return rule;
}

struct SeriesValues {
  cplx j0, j1, y0, y1;
};

// Ascending series for J0, J1, Y0, Y1; used for |z| < 2 only.
SeriesValues small_argument_series(cplx z) {
  const cplx q = -0.25 * z * z;
  const cplx half_z = 0.5 * z;
  cplx t = 1.0;  // q^k / (k!)^2
  cplx u = 1.0;  // q^k / (k! (k+1)!)
  cplx sum_j0 = 0.0, sum_j1 = 0.0, sum_y0 = 0.0, sum_y1 = 0.0;
  double harmonic = 0.0;  // H_k
  for (int k = 0; k < 60; ++k) {
    const double harmonic_next = harmonic + 1.0 / (k + 1);
    sum_j0 += t;
    sum_j1 += u;
    sum_y0 += harmonic * t;
    sum_y1 += (harmonic + harmonic_next - 2.0 * kEulerGamma) * u;
    if (std::abs(t) < 1e-18 && std::abs(u) < 1e-18) break;
    t *= q / double((k + 1) * (k + 1));
    u *= q / double((k + 1) * (k + 2));
    harmonic = harmonic_next;
  }
  const cplx log_half = std::log(half_z);
  SeriesValues v;
  v.j0 = sum_j0;
  v.j1 = half_z * sum_j1;
  v.y0 = (2.0 / kPi) * ((log_half + kEulerGamma) * v.j0 - sum_y0);
  v.y1 = -2.0 / (kPi * z) + (2.0 / kPi) * log_half * v.j1 - half_z * sum_y1 / kPi;
  return v;
}

// e^{-iz} H0(z), e^{-iz} H1(z) from the integral representation; |z| >= 2.
ScaledHankelPair integral_scaled_pair(cplx z) {
  const TrapezoidRule& rule = trapezoid();
  const cplx scale = kI / (2.0 * z);
  cplx sum0 = 0.0, sum1 = 0.0;
  for (int k = 0; k < TrapezoidRule::kNodes; ++k) {
    const cplx root = std::sqrt(1.0 + rule.s2[k] * scale);
    sum0 += rule.weight[k] / root;
    sum1 += rule.weight[k] * rule.s2[k] * root;
  }
  static const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
  const cplx prefactor = std::sqrt(2.0 / (kPi * z));
  ScaledHankelPair out;
  out.h0 = prefactor * std::polar(1.0, -0.25 * kPi) * sum0 * inv_sqrt_pi;
  out.h1 = prefactor * std::polar(1.0, -0.75 * kPi) * sum1 * (2.0 * inv_sqrt_pi);
  return out;
}

double real_series_j(int order, double x) {
  const double q = -0.25 * x * x;
  double term = (order == 0) ? 1.0 : 0.5 * x;
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    term *= q / double((k + 1) * (k + 1 + order));
  }
  return sum;
}

// K0 and K1 ascending series, t < 2.
double series_k(int order, double t) {
  const double p = 0.25 * t * t;
  const double log_half = std::log(0.5 * t);
  double t0 = 1.0;  // p^k / (k!)^2
  double t1 = 1.0;  // p^k / (k! (k+1)!)
  double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double harmonic = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double harmonic_next = harmonic + 1.0 / (k + 1);
    i0 += t0;
    i1 += t1;
    s0 += harmonic * t0;
    s1 += (harmonic + harmonic_next - 2.0 * kEulerGamma) * t1;
    if (t0 < 1e-18 && t1 < 1e-18) break;
    t0 *= p / double((k + 1) * (k + 1));
    t1 *= p / double((k + 1) * (k + 2));
    harmonic = harmonic_next;
  }
  if (order == 0) return -(log_half + kEulerGamma) * i0 + s0;
  return 1.0 / t + log_half * (0.5 * t * i1) - 0.25 * t * s1;
}

// e^t K_order(t) from the real form of the integral representation, t >= 2.
double integral_k_scaled(int order, double t) {
  const TrapezoidRule& rule = trapezoid();
  const double scale = 1.0 / (2.0 * t);
  double sum = 0.0;
  for (int k = 0; k < TrapezoidRule::kNodes; ++k) {
    const double root = std::sqrt(1.0 + rule.s2[k] * scale);
    sum += (order == 0) ? rule.weight[k] / root : rule.weight[k] * rule.s2[k] * root;
  }
  const double gamma_factor = (order == 0) ? 1.0 / std::sqrt(kPi) : 2.0 / std::sqrt(kPi);
  return std::sqrt(kPi / (2.0 * t)) * sum * gamma_factor;
}

}  // namespace

ScaledHankelPair hankel1_scaled_pair(cplx z) {
  check_first_quadrant(z, "hankel1");
  if (std::abs(z) >= kSeriesRadius) return integral_scaled_pair(z);
  const SeriesValues s = small_argument_series(z);
  const cplx unscale = std::exp(-kI * z);
  return {(s.j0 + kI * s.y0) * unscale, (s.j1 + kI * s.y1) * unscale};
}

cplx hankel1(int order, cplx z) {
  check_order(order);
  const ScaledHankelPair pair = hankel1_scaled_pair(z);
  return (order == 0 ? pair.h0 : pair.h1) * std::exp(kI * z);
}

double bessel_j(int order, double x) {
  check_order(order);
  if (!std::isfinite(x)) throw std::domain_error("bessel_j: non-finite argument");
  const double parity = (order == 1 && x < 0.0) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  if (ax < kSeriesRadius) return parity * real_series_j(order, ax);
  return parity * hankel1(order, cplx(ax, 0.0)).real();
}

double bessel_y(int order, double x) {
  check_order(order);
  if (!(x > 0.0)) throw std::domain_error("bessel_y: argument must be positive");
  if (x < kSeriesRadius) {
    const SeriesValues s = small_argument_series(cplx(x, 0.0));
    return (order == 0 ? s.y0 : s.y1).real();
  }
  return hankel1(order, cplx(x, 0.0)).imag();
}

double bessel_k_scaled(int order, double t) {
  check_order(order);
  if (!(t > 0.0)) throw std::domain_error("bessel_k: argument must be positive");
  if (t < kSeriesRadius) return series_k(order, t) * std::exp(t);
  return integral_k_scaled(order, t);
}

double bessel_k(int order, double t) {
  check_order(order);
  if (!(t > 0.0)) throw std::domain_error("bessel_k: argument must be positive");
  if (t < kSeriesRadius) return series_k(order, t);
  return integral_k_scaled(order, t) * std::exp(-t);
}

cplx hankel_log_derivative(cplx t) {
  // Evanescent modes: H_l(is) is a real multiple of K_l(s), so h is exactly real.
  if (t.real() == 0.0 && t.imag() > 0.0) {
    const double s = t.imag();
    return -1.0 - s * bessel_k_scaled(0, s) / bessel_k_scaled(1, s);
  }
  const ScaledHankelPair pair = hankel1_scaled_pair(t);
  return t * pair.h0 / pair.h1 - 1.0;
}

}  // namespace axonpml::special
