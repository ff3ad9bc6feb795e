#include "axonpml/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "axonpml/errors.hpp"

namespace axonpml {

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Axon: return "axon";
    case Region::Myelin: return "myelin";
    case Region::Exterior: return "exterior";
    case Region::Pml: return "pml";
  }
  return "unknown";
}

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::AxisOrInner: return "axis";
    case BoundaryTag::Left: return "left";
    case BoundaryTag::RightAxon: return "right_axon";
    case BoundaryTag::RightExterior: return "right_exterior";
    case BoundaryTag::Outer: return "outer";
  }
  return "unknown";
}

std::optional<Region> region_from_string(std::string_view name) {
  for (Region r : kAllRegions) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::optional<BoundaryTag> boundary_tag_from_string(std::string_view name) {
  for (BoundaryTag t : {BoundaryTag::AxisOrInner, BoundaryTag::Left, BoundaryTag::RightAxon,
                        BoundaryTag::RightExterior, BoundaryTag::Outer}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

void GeometrySpec::validate() const {
  auto fail = [](const std::string& what) { throw ValidationError("geometry: " + what); };
  if (!(Z > 0.0)) fail("Z must be positive");
  if (!(r_inner >= 0.0)) fail("r_inner must be non-negative");
  if (!(R > r_inner)) fail("need r_inner < R");
  if (!(rho >= R)) fail("need rho >= R");
  if (has_axon() && !(axon_radius < R)) fail("need axon radius < R");
  if (!has_myelin()) return;
  if (!has_axon()) fail("myelin requires an axon (r_inner < r1)");
  if (!(axon_radius < myelin_outer && myelin_outer < R)) fail("need r1 < r2 < R");
  auto intervals = myelin_z_intervals;
  std::sort(intervals.begin(), intervals.end());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto [a, b] = intervals[i];
    if (!(a >= 0.0 && a < b && b <= Z)) fail("myelin interval outside [0, Z] or empty");
    if (!(b < Z)) fail("myelin must not touch z = Z");
    if (i > 0 && !(intervals[i - 1].second < a)) fail("myelin intervals overlap or touch");
  }
}

Region GeometrySpec::region_at(double r, double z) const {
  if (r > R) return Region::Pml;
  if (has_axon() && r < axon_radius) return Region::Axon;
  if (has_myelin() && r < myelin_outer) {
    for (const auto& [a, b] : myelin_z_intervals) {
      if (z > a && z < b) return Region::Myelin;
    }
  }
  return Region::Exterior;
}

double Mesh::signed_area(int tri) const {
  const auto& t = triangles[tri];
  const Point& a = nodes[t[0]];
  const Point& b = nodes[t[1]];
  const Point& c = nodes[t[2]];
  return 0.5 * ((b.r - a.r) * (c.z - a.z) - (c.r - a.r) * (b.z - a.z));
}

Point Mesh::centroid(int tri) const {
  const auto& t = triangles[tri];
  return {(nodes[t[0]].r + nodes[t[1]].r + nodes[t[2]].r) / 3.0,
          (nodes[t[0]].z + nodes[t[1]].z + nodes[t[2]].z) / 3.0};
}

namespace {

// Uniform lines on [lo, hi]; each interface either coincides with a line
// (within 1e-9 of the span, then that line is set to it exactly) or is inserted.
std::vector<double> grid_lines(double lo, double hi, int n, const std::vector<double>& interfaces) {
  std::vector<double> lines(n + 1);
  for (int i = 0; i <= n; ++i) lines[i] = lo + (hi - lo) * double(i) / n;
  lines.back() = hi;
  const double tol = 1e-9 * (hi - lo);
  for (double x : interfaces) {
    if (x <= lo + tol || x >= hi - tol) continue;
    auto it = std::min_element(lines.begin(), lines.end(),
                               [x](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
    if (std::abs(*it - x) <= tol) {
      *it = x;
    } else {
      lines.insert(std::upper_bound(lines.begin(), lines.end(), x), x);
    }
  }
  return lines;
}

}  // namespace

Mesh build_structured_mesh(const GeometrySpec& geom, int nr, int nz) {
  geom.validate();
  if (nr < 1 || nz < 1) throw ValidationError("mesh resolution nr, nz must be >= 1");

  std::vector<double> r_interfaces{geom.R};
  if (geom.has_axon()) r_interfaces.push_back(geom.axon_radius);
  if (geom.has_myelin()) r_interfaces.push_back(geom.myelin_outer);
  std::vector<double> z_interfaces;
  for (const auto& [a, b] : geom.myelin_z_intervals) {
    z_interfaces.push_back(a);
    z_interfaces.push_back(b);
  }
  const std::vector<double> rs = grid_lines(geom.r_inner, geom.rho, nr, r_interfaces);
  const std::vector<double> zs = grid_lines(0.0, geom.Z, nz, z_interfaces);
  const int nr_lines = static_cast<int>(rs.size());
  const int nz_lines = static_cast<int>(zs.size());

  Mesh mesh;
  mesh.geometry = geom;
  mesh.nodes.reserve(std::size_t(nr_lines) * nz_lines);
  for (double r : rs) {
    for (double z : zs) mesh.nodes.push_back({r, z});
  }
  auto id = [nz_lines](int i, int j) { return i * nz_lines + j; };

  const int cells_r = nr_lines - 1;
  const int cells_z = nz_lines - 1;
  mesh.triangles.reserve(2 * std::size_t(cells_r) * cells_z);
  for (int i = 0; i < cells_r; ++i) {
    for (int j = 0; j < cells_z; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  mesh.triangle_region.reserve(mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Point c = mesh.centroid(t);
    mesh.triangle_region.push_back(geom.region_at(c.r, c.z));
  }

  for (int j = 0; j < cells_z; ++j) {
    mesh.boundary_edges.push_back({{id(0, j), id(0, j + 1)}, BoundaryTag::AxisOrInner});
    mesh.boundary_edges.push_back({{id(cells_r, j), id(cells_r, j + 1)}, BoundaryTag::Outer});
  }
  for (int i = 0; i < cells_r; ++i) {
    mesh.boundary_edges.push_back({{id(i, 0), id(i + 1, 0)}, BoundaryTag::Left});
    const double r_mid = 0.5 * (rs[i] + rs[i + 1]);
    const BoundaryTag right = (geom.has_axon() && r_mid < geom.axon_radius)
                                  ? BoundaryTag::RightAxon
                                  : BoundaryTag::RightExterior;
    mesh.boundary_edges.push_back({{id(i, cells_z), id(i + 1, cells_z)}, right});
  }
  return mesh;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh fine;
  fine.geometry = mesh.geometry;
  fine.nodes = mesh.nodes;
  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(mesh.triangles.size() * 2);
  auto mid = [&](int a, int b) {
    const auto lo = static_cast<std::uint64_t>(std::min(a, b));
    const auto hi = static_cast<std::uint64_t>(std::max(a, b));
    const std::uint64_t key = (lo << 32) | hi;
    auto [it, inserted] = midpoint.try_emplace(key, fine.num_nodes());
    if (inserted) {
      const Point& p = mesh.nodes[a];
      const Point& q = mesh.nodes[b];
      fine.nodes.push_back({0.5 * (p.r + q.r), 0.5 * (p.z + q.z)});
    }
    return it->second;
  };

  fine.triangles.reserve(4 * mesh.triangles.size());
  fine.triangle_region.reserve(4 * mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto [a, b, c] = mesh.triangles[t];
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    fine.triangles.push_back({a, ab, ca});
    fine.triangles.push_back({ab, b, bc});
    fine.triangles.push_back({ca, bc, c});
    fine.triangles.push_back({ab, bc, ca});
    for (int k = 0; k < 4; ++k) fine.triangle_region.push_back(mesh.triangle_region[t]);
  }
  fine.boundary_edges.reserve(2 * mesh.boundary_edges.size());
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const int m = mid(e.nodes[0], e.nodes[1]);
    fine.boundary_edges.push_back({{e.nodes[0], m}, e.tag});
    fine.boundary_edges.push_back({{m, e.nodes[1]}, e.tag});
  }
  return fine;
}

double mesh_size(const Mesh& mesh) {
  double h2 = 0.0;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const Point& p = mesh.nodes[t[k]];
      const Point& q = mesh.nodes[t[(k + 1) % 3]];
      h2 = std::max(h2, (p.r - q.r) * (p.r - q.r) + (p.z - q.z) * (p.z - q.z));
    }
  }
  return std::sqrt(h2);
}

void write_mesh(const Mesh& mesh, std::ostream& os) {
  const GeometrySpec& g = mesh.geometry;
  os << std::setprecision(17);
  os << "axonpml-mesh 1\n";
  os << "geometry " << g.Z << ' ' << g.r_inner << ' ' << g.R << ' ' << g.rho << ' '
     << g.axon_radius << ' ' << g.myelin_outer << ' ' << g.myelin_z_intervals.size();
  for (const auto& [a, b] : g.myelin_z_intervals) os << ' ' << a << ' ' << b;
  os << '\n';
  os << "nodes " << mesh.nodes.size() << '\n';
  for (const Point& p : mesh.nodes) os << p.r << ' ' << p.z << '\n';
  os << "triangles " << mesh.triangles.size() << '\n';
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    os << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' ' << to_string(mesh.triangle_region[t])
       << '\n';
  }
  os << "boundary " << mesh.boundary_edges.size() << '\n';
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    os << e.nodes[0] << ' ' << e.nodes[1] << ' ' << to_string(e.tag) << '\n';
  }
}

void write_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_mesh(mesh, os);
  if (!os) throw std::runtime_error("failed writing mesh to " + path.string());
}

Mesh read_mesh(std::istream& is) {
  auto fail = [](const std::string& what) { throw ValidationError("mesh file: " + what); };
  auto expect = [&](const char* keyword) {
    std::string word;
    if (!(is >> word) || word != keyword) fail(std::string("expected '") + keyword + "'");
  };
  expect("axonpml-mesh");
  int version = 0;
  if (!(is >> version) || version != 1) fail("unsupported version");

  Mesh mesh;
  GeometrySpec& g = mesh.geometry;
  std::size_t n_intervals = 0;
  expect("geometry");
  if (!(is >> g.Z >> g.r_inner >> g.R >> g.rho >> g.axon_radius >> g.myelin_outer >> n_intervals)) {
    fail("bad geometry record");
  }
  for (std::size_t i = 0; i < n_intervals; ++i) {
    double a = 0.0, b = 0.0;
    if (!(is >> a >> b)) fail("bad myelin interval");
    g.myelin_z_intervals.emplace_back(a, b);
  }

  std::size_t count = 0;
  expect("nodes");
  if (!(is >> count)) fail("bad node count");
  mesh.nodes.resize(count);
  for (Point& p : mesh.nodes) {
    if (!(is >> p.r >> p.z)) fail("bad node record");
  }
  expect("triangles");
  if (!(is >> count)) fail("bad triangle count");
  mesh.triangles.resize(count);
  mesh.triangle_region.resize(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::string name;
    auto& tri = mesh.triangles[t];
    if (!(is >> tri[0] >> tri[1] >> tri[2] >> name)) fail("bad triangle record");
    for (int v : tri) {
      if (v < 0 || v >= mesh.num_nodes()) fail("triangle references missing node");
    }
    const auto region = region_from_string(name);
    if (!region) fail("unknown region '" + name + "'");
    mesh.triangle_region[t] = *region;
  }
  expect("boundary");
  if (!(is >> count)) fail("bad boundary count");
  mesh.boundary_edges.resize(count);
  for (BoundaryEdge& e : mesh.boundary_edges) {
    std::string name;
    if (!(is >> e.nodes[0] >> e.nodes[1] >> name)) fail("bad boundary record");
    const auto tag = boundary_tag_from_string(name);
    if (!tag) fail("unknown boundary tag '" + name + "'");
    e.tag = *tag;
  }
  return mesh;
}

Mesh read_mesh(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_mesh(is);
}

}  // namespace axonpml
