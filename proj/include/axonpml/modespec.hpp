#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axonpml/tags.hpp"

namespace axonpml {

using cplx = std::complex<double>;

/// Wavenumbers k = omega * sqrt(eps * mu) per region plus the axial period Z.
struct WaveConfig {
  std::map<Region, double> k_by_region;
  double Z = 0.0;
  double omega = 1.0;
  double mu = 1.0;

  /// Wavenumber of the exterior fluid, which governs the radiating modes.
  double exterior_k() const;

  /// Throws ValidationError on k <= 0 or Z <= 0. With `for_dtn`, also rejects
  /// resonant exterior wavenumbers (ResonanceError).
  void validate(bool for_dtn) const;
};

/// Radial complex stretching r~ = r + (1+i) chi(r), chi = chi0 (r-R)^2 beyond R.
struct PmlProfile {
  double R = 0.0;     // PML start radius
  double rho = 0.0;   // outer radius
  double chi0 = 0.0;  // absorption strength

  double thickness() const { return rho - R; }
  double chi(double r) const;
  double chi_prime(double r) const;
  cplx stretched(double r) const;

  /// Hard errors: R <= 0, rho <= R, chi0 < 0.
  void validate() const;

  /// Soft issues: rho < 2R, chi0 = 0, and kappa*chi0*R < 1 when kappa is known.
  std::vector<std::string> warnings(std::optional<double> kappa) const;
};

struct Stretching {
  cplx alpha;  // F'(r)
  cplx beta;   // F(r) / r
};

/// alpha(r) = 1 + (1+i) chi'(r), beta(r) = 1 + (1+i) chi(r)/r.
Stretching pml_alpha_beta(double r, const PmlProfile& profile);

/// k_m = sqrt(k^2 - (m pi/Z)^2), real for propagating modes and i*sqrt(...)
/// for evanescent ones. Throws ResonanceError when k is within 1e-12
/// (relative) of m*pi/Z.
cplx axial_wavenumber(double k, double Z, int m);

/// Smallest m_max accepted by kappa(): floor(kZ/pi) + 1.
int minimal_kappa_modes(double k, double Z);

/// kappa = min_{1<=m<=m_max} |k_m|.
double kappa(double k, double Z, int m_max);

/// d^6 |alpha(rho)|^4 |beta(rho)|^2 |rho~| exp(-0.8 kappa chi0 d^2), the
/// PML error factor with the unknown constant set to 1.
double pml_error_bound(const PmlProfile& profile, double kappa);

/// True when kappa * chi0 * R >= 1.
bool is_admissible(const PmlProfile& profile, double kappa);

/// Smallest chi0 on a logarithmic grid over [1e-3, 1e6] (with the
/// admissibility floor 1/(kappa R) inserted) whose bound is <= target and
/// which satisfies kappa chi0 R >= 1. Throws ValidationError if infeasible.
double suggest_chi0(double target, double R, double rho, double kappa);

}  // namespace axonpml
