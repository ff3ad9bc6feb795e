#pragma once

#include <Eigen/Dense>
#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "axonpml/assembly.hpp"

namespace axonpml {

struct SolutionField {
  const Mesh* mesh = nullptr;
  Eigen::VectorXcd values;
  Mode mode = Mode::TM;
  const MaterialMap* materials = nullptr;  // needed for E-field recovery only
};

using TriangleFilter = std::function<bool(const Mesh&, int tri)>;

TriangleFilter all_triangles();
/// Everything except the PML layer (r <= R).
TriangleFilter physical_triangles();
TriangleFilter region_triangles(Region region);
/// Non-PML triangles whose centroid radius lies in [r_lo, r_hi].
TriangleFilter radial_band(double r_lo, double r_hi);

struct WeightedNorms {
  double u_norm = 0.0;  // (int |u|^2 / r)^(1/2)
  double v_norm = 0.0;  // (int (|u_r|^2 + |u_z|^2) / r + k^2 |u|^2 / r)^(1/2)
  bool axis_singular = false;  // nonzero gradient on a triangle touching r = 0
};

/// Weighted norms of the P1 field. Quadrature points stay off the axis, so
/// the gradient term is finite even where the exact integral diverges; the
/// flag marks that case.
WeightedNorms weighted_norms(const SolutionField& field, double k2,
                             const TriangleFilter& filter = physical_triangles());

using ScalarFunction = std::function<cplx(double r, double z)>;
using GradientFunction = std::function<std::array<cplx, 2>(double r, double z)>;

struct ExactSolution {
  ScalarFunction value;
  GradientFunction gradient;  // empty: compare against the P1 interpolant of value
};

struct ErrorReport {
  double weighted_L2 = 0.0;
  double weighted_H1 = 0.0;
  double plain_L2 = 0.0;
  double plain_H1 = 0.0;
  double h = 0.0;
  bool axis_singular = false;
};

/// Norms of field - exact. With a gradient the exact function is sampled at
/// the quadrature points; without one the nodal interpolant is used.
ErrorReport error_against_exact(const SolutionField& field, const ExactSolution& exact, double k2,
                                const TriangleFilter& filter = physical_triangles());

/// Least-squares slope of log(error) against log(h).
double convergence_rates(const std::vector<std::pair<double, double>>& h_error);

struct CellVectorField {
  std::vector<cplx> Er;
  std::vector<cplx> Ez;
};

/// TE only. Per triangle, with c = sigma - i omega eps of its region:
///   E_r = -c^{-1} r^{-1} dH/dz,  E_z = c^{-1} r^{-1} dH/dr  at the centroid.
CellVectorField recover_electric_field(const SolutionField& field);

/// (int_filter |u|^2/r) / (int_{r<=R} |u|^2/r).
double energy_fraction(const SolutionField& field, const TriangleFilter& filter);
double energy_fraction(const SolutionField& field, Region region);

/// "r,z,re_u,im_u" with 17 significant digits.
void write_csv(const SolutionField& field, const std::filesystem::path& path);

struct NodalSample {
  double r;
  double z;
  cplx u;
};
std::vector<NodalSample> read_csv(const std::filesystem::path& path);

/// Legacy ASCII VTK 4.2 unstructured grid; point data u_re/u_im, optional
/// cell data Er/Ez (real and imaginary parts).
void write_vtk(const SolutionField& field, const std::filesystem::path& path,
               const CellVectorField* electric = nullptr);

}  // namespace axonpml
