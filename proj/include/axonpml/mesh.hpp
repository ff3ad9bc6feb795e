#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "axonpml/tags.hpp"

namespace axonpml {

/// Rectangle [r_inner, rho] x [0, Z] with the axon, myelin and PML layout.
struct GeometrySpec {
  double Z = 1.0;
  double r_inner = 0.0;       // 0: the axis is part of the domain
  double R = 1.0;             // physical/PML interface (or DtN radius)
  double rho = 1.0;           // outer radius; rho == R means no PML
  double axon_radius = 0.0;   // r1; <= r_inner means no axon region
  double myelin_outer = 0.0;  // r2
  std::vector<std::pair<double, double>> myelin_z_intervals;

  bool has_axon() const { return axon_radius > r_inner; }
  bool has_myelin() const { return !myelin_z_intervals.empty(); }
  bool has_pml() const { return rho > R; }

  /// Throws ValidationError when the layout is inconsistent.
  void validate() const;

  /// Region containing the point; used with triangle centroids.
  Region region_at(double r, double z) const;
};

struct Point {
  double r;
  double z;
};

struct BoundaryEdge {
  std::array<int, 2> nodes;
  BoundaryTag tag;
};

/// Conforming triangulation with counter-clockwise triangles in the (r, z) plane.
struct Mesh {
  GeometrySpec geometry;
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Region> triangle_region;
  std::vector<BoundaryEdge> boundary_edges;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  double signed_area(int tri) const;
  Point centroid(int tri) const;
};

/// Structured mesh: nr x nz cells, each split along its (r0,z0)-(r1,z1)
/// diagonal. Interface radii and myelin endpoints that miss the uniform grid
/// are inserted as extra lines.
Mesh build_structured_mesh(const GeometrySpec& geom, int nr, int nz);

/// Red refinement: every triangle becomes four similar children.
Mesh refine_uniform(const Mesh& mesh);

/// Longest edge length.
double mesh_size(const Mesh& mesh);

/// Plain-text mesh format:
///   axonpml-mesh 1
///   geometry Z r_inner R rho axon_radius myelin_outer n  z0 z1 ...
///   nodes N           then N lines  "r z"
///   triangles T       then T lines  "a b c region"
///   boundary E        then E lines  "a b tag"
void write_mesh(const Mesh& mesh, std::ostream& os);
void write_mesh(const Mesh& mesh, const std::filesystem::path& path);
Mesh read_mesh(std::istream& is);
Mesh read_mesh(const std::filesystem::path& path);

}  // namespace axonpml
