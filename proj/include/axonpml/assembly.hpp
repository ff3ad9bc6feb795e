#pragma once

// P1 finite element assembly of the axisymmetric TM (E_theta) and TE (H_theta)
// forms, optional radial PML stretching, the truncated DtN boundary block on
// r = R, Neumann data on the axon end and Dirichlet elimination.
//
// Matrix rows are test functions, columns trial functions. With real basis
// functions every form below yields a complex *symmetric* (not Hermitian)
// matrix.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "axonpml/mesh.hpp"
#include "axonpml/modespec.hpp"

namespace axonpml {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

enum class Mode { TM, TE };

struct Medium {
  double epsilon = 1.0;
  double sigma = 0.0;
};

/// Piecewise-constant media. The PML region uses the exterior medium.
struct MaterialMap {
  double omega = 1.0;
  double mu = 1.0;
  std::map<Region, Medium> media;

  const Medium& medium(Region region) const;
  /// k^2 = omega^2 eps mu.
  double k2(Region region) const;
  /// gamma = k^2 + i omega mu sigma.
  cplx gamma(Region region) const;
  /// sigma - i omega eps, the factor relating curl H to E.
  cplx curl_factor(Region region) const;

  /// Checks positivity, sigma = 0 outside the axon, and (TE) gamma != 0.
  void validate(Mode mode) const;

  WaveConfig wave_config(double Z) const;

  /// omega = mu = 1, eps = k^2, lossless, every region.
  static MaterialMap uniform(double k);
};

struct ComplexSystem {
  SparseMatrix matrix;
  Eigen::VectorXcd rhs;
  std::map<int, cplx> dirichlet;  // constrained node -> value
  bool solved = false;
};

/// Volume form  int (1/(r beta)) [ (1/alpha) u_r v_r + alpha u_z v_z
///                                 - alpha gamma u v ] dr dz
/// with alpha = beta = 1 inside r <= R or without a profile.
SparseMatrix assemble_volume_tm(const Mesh& mesh, const MaterialMap& materials,
                                const std::optional<PmlProfile>& pml);

/// Volume form  int (1/(r beta gamma)) [ (1/alpha) u_r v_r + alpha u_z v_z ]
///              - (alpha/(r beta)) u v  dr dz.
SparseMatrix assemble_volume_te(const Mesh& mesh, const MaterialMap& materials,
                                const std::optional<PmlProfile>& pml);

SparseMatrix assemble_volume(const Mesh& mesh, const MaterialMap& materials, Mode mode,
                             const std::optional<PmlProfile>& pml);

/// Truncated DtN coupling on the boundary r = R.
struct DtnBlock {
  std::vector<int> nodes;  // boundary nodes, ascending z
  int M = 0;
  double R = 0.0;
  double Z = 0.0;
  double scale = 1.0;      // 1 for TM, 1/k_ext^2 for TE
  Eigen::MatrixXd sine;    // M x n: (2/Z) int phi_i sin(m pi z/Z) dz
  Eigen::VectorXcd h;      // h(k_m R), m = 1..M
  Eigen::MatrixXcd matrix; // (scale/R^2) S^T diag(Z/2 (h_m + 1)) S

  /// (scale/R^2) S^T diag(Z/2 (h_m + [include_identity])) S.
  Eigen::MatrixXcd operator_matrix(bool include_identity) const;
};

/// Default truncation order max(30, ceil(3 k Z / pi)).
int default_dtn_modes(double k, double Z);

/// Throws ResonanceError on resonance and ValidationError if M < 1 or the
/// mesh has no nodes on r = R.
DtnBlock assemble_dtn_block(const Mesh& mesh, const WaveConfig& wave, double R, int M,
                            Mode mode = Mode::TM);

/// matrix -= block (the boundary term enters the form with a minus sign).
void subtract_dtn_block(SparseMatrix& matrix, const DtnBlock& block);

/// Load vector of int_{Gamma_right^1} u_N(r) phi_i dr (no 1/r weight).
Eigen::VectorXcd assemble_neumann_rhs(const Mesh& mesh, const std::function<cplx(double)>& u_N);

using BoundaryFunction = std::function<cplx(double r, double z)>;

/// Nodal Dirichlet values from per-tag data. Nodes shared by several tagged
/// edges take the value of the highest-priority tag:
/// Left > RightExterior > Outer > AxisOrInner. RightAxon is a Neumann
/// boundary and is rejected here.
std::map<int, cplx> collect_dirichlet(const Mesh& mesh,
                                      const std::map<BoundaryTag, BoundaryFunction>& data);

/// Symmetric elimination: constrained columns move to the right-hand side,
/// constrained rows become identity rows carrying the boundary value.
/// Throws ValidationError if a node is already constrained to another value.
void apply_dirichlet(ComplexSystem& system, const std::map<int, cplx>& values);

}  // namespace axonpml
