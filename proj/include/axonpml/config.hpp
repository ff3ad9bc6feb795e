#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "axonpml/assembly.hpp"
#include "json.hpp"

namespace axonpml {

enum class Workflow { Converge, Simulate, Compare, Advise };

std::string_view to_string(Workflow w);

/// Dirichlet profile on the left end of the axon, r < axon radius.
struct IncidentSpec {
  std::string profile = "zero";  // "zero" or "bessel_j1": amplitude * J1(kc r)
  double kc = 0.0;
  double amplitude = -1.0;
};

/// One axon layout in a simulate run.
struct VariantSpec {
  std::string name;
  std::vector<std::pair<double, double>> myelin_z_intervals;
};

struct RunConfig {
  Workflow workflow = Workflow::Converge;
  std::string name = "run";
  Mode mode = Mode::TM;
  GeometrySpec geometry;
  MaterialMap materials;
  double chi0 = 0.0;

  int nr = 10;
  int nz = 10;
  int levels = 1;
  int dtn_modes = 0;  // 0: default_dtn_modes

  int exact_mode = 1;  // converge/compare: axial index m of the exact solution

  IncidentSpec incident;
  double u_N = 0.0;  // Neumann data on the right end of the axon
  double u_1 = 0.0;  // Dirichlet data on the remaining right end

  std::vector<VariantSpec> variants;  // simulate; empty: the geometry as given

  std::vector<double> chi0_sweep;  // compare
  std::vector<int> dtn_modes_sweep;

  double target = 1e-8;  // advise
  std::optional<double> kappa_override;
  std::vector<double> chi0_grid;
  std::vector<double> d_grid;

  WaveConfig wave() const { return materials.wave_config(geometry.Z); }
  PmlProfile pml() const { return {geometry.R, geometry.rho, chi0}; }
  std::optional<PmlProfile> pml_if_present() const;

  /// Every module-level check that can run before meshing.
  void validate() const;
};

/// Strict parse: unknown keys and wrong types raise ValidationError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Effective configuration with every default filled in; parse_config
/// accepts it unchanged.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace axonpml
