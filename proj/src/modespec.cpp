#include "axonpml/modespec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "axonpml/errors.hpp"

namespace axonpml {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResonanceTolerance = 1e-12;
constexpr cplx kOnePlusI{1.0, 1.0};

}  // namespace

double WaveConfig::exterior_k() const {
  auto it = k_by_region.find(Region::Exterior);
  if (it == k_by_region.end()) throw ValidationError("wave config has no exterior wavenumber");
  return it->second;
}

void WaveConfig::validate(bool for_dtn) const {
  if (!(Z > 0.0)) throw ValidationError("axial length Z must be positive");
  if (!(omega > 0.0) || !(mu > 0.0)) throw ValidationError("omega and mu must be positive");
  for (const auto& [region, k] : k_by_region) {
    if (!(k > 0.0)) {
      throw ValidationError("wavenumber in region " + std::string(to_string(region)) +
                            " must be positive");
    }
  }
  if (for_dtn) {
    const double k = exterior_k();
    const int m_max = minimal_kappa_modes(k, Z);
    for (int m = 1; m <= m_max; ++m) axial_wavenumber(k, Z, m);
  }
}

double PmlProfile::chi(double r) const {
  if (r <= R) return 0.0;
  const double d = r - R;
  return chi0 * d * d;
}

double PmlProfile::chi_prime(double r) const {
  if (r <= R) return 0.0;
  return 2.0 * chi0 * (r - R);
}

cplx PmlProfile::stretched(double r) const { return r + kOnePlusI * chi(r); }

void PmlProfile::validate() const {
  if (!(R > 0.0)) throw ValidationError("PML start radius R must be positive");
  if (!(rho > R)) throw ValidationError("PML outer radius rho must exceed R");
  if (!(chi0 >= 0.0)) throw ValidationError("PML strength chi0 must be non-negative");
}

std::vector<std::string> PmlProfile::warnings(std::optional<double> kappa) const {
  std::vector<std::string> out;
  if (rho < 2.0 * R) {
    std::ostringstream msg;
    msg << "rho = " << rho << " < 2R = " << 2.0 * R
        << "; the exponential-convergence estimate assumes rho >= 2R";
    out.push_back(msg.str());
  }
  if (chi0 == 0.0) out.push_back("chi0 = 0: the layer does not absorb");
  if (kappa && !is_admissible(*this, *kappa)) {
    std::ostringstream msg;
    msg << "kappa*chi0*R = " << *kappa * chi0 * R << " < 1 (inadmissible PML strength)";
    out.push_back(msg.str());
  }
  return out;
}

Stretching pml_alpha_beta(double r, const PmlProfile& profile) {
  if (r <= profile.R) return {1.0, 1.0};
  return {1.0 + kOnePlusI * profile.chi_prime(r), 1.0 + kOnePlusI * profile.chi(r) / r};
}

cplx axial_wavenumber(double k, double Z, int m) {
  if (!(k > 0.0) || !(Z > 0.0) || m < 1) {
    throw ValidationError("axial_wavenumber requires k > 0, Z > 0, m >= 1");
  }
  const double cutoff = m * kPi / Z;
  if (std::abs(k - cutoff) < kResonanceTolerance * std::max(k, cutoff)) {
    std::ostringstream msg;
    msg << "resonant mode: k = " << k << " equals m*pi/Z for m = " << m;
    throw ResonanceError(msg.str());
  }
  // (k - c)(k + c) keeps k_m^2 accurate near cutoff.
  const double k2 = (k - cutoff) * (k + cutoff);
  if (k > cutoff) return {std::sqrt(k2), 0.0};
  return {0.0, std::sqrt(-k2)};
}

int minimal_kappa_modes(double k, double Z) {
  return static_cast<int>(std::floor(k * Z / kPi)) + 1;
}

double kappa(double k, double Z, int m_max) {
  if (m_max < minimal_kappa_modes(k, Z)) {
    throw ValidationError("kappa needs m_max >= kZ/pi + 1 to bracket the minimum");
  }
  double best = std::abs(axial_wavenumber(k, Z, 1));
  for (int m = 2; m <= m_max; ++m) best = std::min(best, std::abs(axial_wavenumber(k, Z, m)));
  return best;
}

double pml_error_bound(const PmlProfile& profile, double kappa) {
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  const double d = profile.thickness();
  if (!(d > 0.0)) throw ValidationError("PML thickness must be positive");
  const auto [alpha, beta] = pml_alpha_beta(profile.rho, profile);
  const double abs_alpha2 = std::norm(alpha);
  const double d2 = d * d;
  return d2 * d2 * d2 * abs_alpha2 * abs_alpha2 * std::norm(beta) *
         std::abs(profile.stretched(profile.rho)) *
         std::exp(-0.8 * kappa * profile.chi0 * d2);
}

bool is_admissible(const PmlProfile& profile, double kappa) {
  return kappa * profile.chi0 * profile.R >= 1.0;
}

double suggest_chi0(double target, double R, double rho, double kappa) {
  if (!(target > 0.0)) throw ValidationError("target bound must be positive");
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  if (!(R > 0.0) || !(rho > R)) throw ValidationError("need 0 < R < rho");

  constexpr double kMin = 1e-3;
  constexpr double kMax = 1e6;
  constexpr int kPerDecade = 50;
  const double floor_chi0 = 1.0 / (kappa * R);

  std::vector<double> candidates;
  const int n = 9 * kPerDecade;
  for (int i = 0; i <= n; ++i) candidates.push_back(kMin * std::pow(10.0, double(i) / kPerDecade));
  candidates.push_back(std::max(kMin, floor_chi0));
  std::sort(candidates.begin(), candidates.end());

  for (double chi0 : candidates) {
    if (chi0 < floor_chi0 || chi0 > kMax) continue;
    const PmlProfile p{R, rho, chi0};
    if (pml_error_bound(p, kappa) <= target) return chi0;
  }
  std::ostringstream msg;
  msg << "no chi0 <= 1e6 reaches bound " << target << " with d = " << rho - R;
  throw ValidationError(msg.str());
}

}  // namespace axonpml
