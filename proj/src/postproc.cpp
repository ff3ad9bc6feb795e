#include "axonpml/postproc.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "axonpml/errors.hpp"

namespace axonpml {
namespace {

// Degree-5 rule (7 points), all interior.
struct QuadPoint {
  std::array<double, 3> bary;
  double weight;
};

const std::array<QuadPoint, 7>& norm_rule() {
  constexpr double a1 = 0.059715871789770, b1 = 0.470142064105115;
  constexpr double a2 = 0.797426985353087, b2 = 0.101286507323456;
  constexpr double w0 = 0.225, w1 = 0.132394152788506, w2 = 0.125939180544827;
  static const std::array<QuadPoint, 7> rule{{
      {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, w0},
      {{a1, b1, b1}, w1},
      {{b1, a1, b1}, w1},
      {{b1, b1, a1}, w1},
      {{a2, b2, b2}, w2},
      {{b2, a2, b2}, w2},
      {{b2, b2, a2}, w2},
  }};
  return rule;
}

struct P1Triangle {
  std::array<Point, 3> v;
  std::array<cplx, 3> u;
  double area;
  cplx du_dr;
  cplx du_dz;
  bool touches_axis;
};

P1Triangle p1_triangle(const Mesh& mesh, const Eigen::VectorXcd& values, int t) {
  P1Triangle e;
  const auto& tri = mesh.triangles[t];
  e.touches_axis = false;
  for (int k = 0; k < 3; ++k) {
    e.v[k] = mesh.nodes[tri[k]];
    e.u[k] = values[tri[k]];
    if (e.v[k].r <= 0.0) e.touches_axis = true;
  }
  e.area = mesh.signed_area(t);
  e.du_dr = 0.0;
  e.du_dz = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Point& pj = e.v[(i + 1) % 3];
    const Point& pk = e.v[(i + 2) % 3];
    e.du_dr += e.u[i] * (pj.z - pk.z) / (2.0 * e.area);
    e.du_dz += e.u[i] * (pk.r - pj.r) / (2.0 * e.area);
  }
  return e;
}

void check_field(const SolutionField& field) {
  if (!field.mesh) throw ValidationError("solution field has no mesh");
  if (field.values.size() != field.mesh->num_nodes()) {
    throw ValidationError("solution field size does not match the mesh");
  }
}

double weighted_mass(const SolutionField& field, const TriangleFilter& filter) {
  check_field(field);
  const Mesh& mesh = *field.mesh;
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (!filter(mesh, t)) continue;
    const P1Triangle e = p1_triangle(mesh, field.values, t);
    for (const QuadPoint& q : norm_rule()) {
      const double r = q.bary[0] * e.v[0].r + q.bary[1] * e.v[1].r + q.bary[2] * e.v[2].r;
      const cplx u = q.bary[0] * e.u[0] + q.bary[1] * e.u[1] + q.bary[2] * e.u[2];
      total += q.weight * e.area * std::norm(u) / r;
    }
  }
  return total;
}

}  // namespace

TriangleFilter all_triangles() {
  return [](const Mesh&, int) { return true; };
}

TriangleFilter physical_triangles() {
  return [](const Mesh& m, int t) { return m.triangle_region[t] != Region::Pml; };
}

TriangleFilter region_triangles(Region region) {
  return [region](const Mesh& m, int t) { return m.triangle_region[t] == region; };
}

TriangleFilter radial_band(double r_lo, double r_hi) {
  return [r_lo, r_hi](const Mesh& m, int t) {
    if (m.triangle_region[t] == Region::Pml) return false;
    const double r = m.centroid(t).r;
    return r >= r_lo && r <= r_hi;
  };
}

WeightedNorms weighted_norms(const SolutionField& field, double k2, const TriangleFilter& filter) {
  const ExactSolution zero{[](double, double) { return cplx(0.0); }, {}};
  const ErrorReport e = error_against_exact(field, zero, k2, filter);
  return {e.weighted_L2, e.weighted_H1, e.axis_singular};
}

ErrorReport error_against_exact(const SolutionField& field, const ExactSolution& exact, double k2,
                                const TriangleFilter& filter) {
  check_field(field);
  if (!exact.value) throw ValidationError("exact solution has no value function");
  const Mesh& mesh = *field.mesh;
  const bool pointwise = static_cast<bool>(exact.gradient);

  Eigen::VectorXcd diff = field.values;
  if (!pointwise) {
    for (int i = 0; i < mesh.num_nodes(); ++i) {
      diff[i] -= exact.value(mesh.nodes[i].r, mesh.nodes[i].z);
    }
  }

  double l2w = 0.0, grad_w = 0.0, l2 = 0.0, grad = 0.0;
  bool axis_singular = false;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (!filter(mesh, t)) continue;
    const P1Triangle e = p1_triangle(mesh, diff, t);
    if (e.touches_axis && (e.du_dr != 0.0 || e.du_dz != 0.0)) axis_singular = true;
    for (const QuadPoint& q : norm_rule()) {
      const double r = q.bary[0] * e.v[0].r + q.bary[1] * e.v[1].r + q.bary[2] * e.v[2].r;
      const double z = q.bary[0] * e.v[0].z + q.bary[1] * e.v[1].z + q.bary[2] * e.v[2].z;
      cplx u = q.bary[0] * e.u[0] + q.bary[1] * e.u[1] + q.bary[2] * e.u[2];
      cplx ur = e.du_dr, uz = e.du_dz;
      if (pointwise) {
        u -= exact.value(r, z);
        const auto g = exact.gradient(r, z);
        ur -= g[0];
        uz -= g[1];
      }
      const double w = q.weight * e.area;
      const double mass = std::norm(u);
      const double stiff = std::norm(ur) + std::norm(uz);
      l2w += w * mass / r;
      grad_w += w * stiff / r;
      l2 += w * mass;
      grad += w * stiff;
    }
  }

  ErrorReport report;
  report.weighted_L2 = std::sqrt(l2w);
  report.weighted_H1 = std::sqrt(grad_w + k2 * l2w);
  report.plain_L2 = std::sqrt(l2);
  report.plain_H1 = std::sqrt(grad + l2);
  report.h = mesh_size(mesh);
  report.axis_singular = axis_singular;
  return report;
}

double convergence_rates(const std::vector<std::pair<double, double>>& h_error) {
  if (h_error.size() < 2) throw ValidationError("a rate needs at least two (h, error) pairs");
  for (std::size_t i = 0; i < h_error.size(); ++i) {
    if (!(h_error[i].first > 0.0) || !(h_error[i].second > 0.0)) {
      throw ValidationError("mesh sizes and errors must be positive");
    }
    if (i > 0 && !(h_error[i].first < h_error[i - 1].first)) {
      throw ValidationError("mesh sizes must be strictly decreasing");
    }
  }
  const double n = static_cast<double>(h_error.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [h, e] : h_error) {
    sx += std::log(h);
    sy += std::log(e);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : h_error) {
    sxx += (std::log(h) - mx) * (std::log(h) - mx);
    sxy += (std::log(h) - mx) * (std::log(e) - my);
  }
  return sxy / sxx;
}

CellVectorField recover_electric_field(const SolutionField& field) {
  check_field(field);
  if (field.mode != Mode::TE) throw ValidationError("E-field recovery needs a TE (H_theta) field");
  if (!field.materials) throw ValidationError("E-field recovery needs the material map");
  const Mesh& mesh = *field.mesh;
  CellVectorField e;
  e.Er.resize(mesh.num_triangles());
  e.Ez.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const cplx c = field.materials->curl_factor(mesh.triangle_region[t]);
    if (c == cplx(0.0)) throw ValidationError("sigma - i omega eps vanishes; E is undefined");
    const P1Triangle p = p1_triangle(mesh, field.values, t);
    const double r = mesh.centroid(t).r;
    e.Er[t] = -p.du_dz / (c * r);
    e.Ez[t] = p.du_dr / (c * r);
  }
  return e;
}

double energy_fraction(const SolutionField& field, const TriangleFilter& filter) {
  const double total = weighted_mass(field, physical_triangles());
  if (!(total > 0.0)) throw ValidationError("field energy is zero; fraction undefined");
  const auto both = [&filter](const Mesh& m, int t) {
    return m.triangle_region[t] != Region::Pml && filter(m, t);
  };
  return weighted_mass(field, both) / total;
}

double energy_fraction(const SolutionField& field, Region region) {
  check_field(field);
  bool present = false;
  for (Region r : field.mesh->triangle_region) present = present || r == region;
  if (!present) {
    throw ValidationError("region " + std::string(to_string(region)) + " is not in the mesh");
  }
  return energy_fraction(field, region_triangles(region));
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << std::setprecision(17);
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void write_csv(const SolutionField& field, const std::filesystem::path& path) {
  check_field(field);
  std::ofstream os = open_output(path);
  os << "r,z,re_u,im_u\n";
  const Mesh& mesh = *field.mesh;
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    os << mesh.nodes[i].r << ',' << mesh.nodes[i].z << ',' << field.values[i].real() << ','
       << field.values[i].imag() << '\n';
  }
  finish(os, path);
}

std::vector<NodalSample> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != "r,z,re_u,im_u") {
    throw std::runtime_error(path.string() + ": missing CSV header");
  }
  std::vector<NodalSample> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<double, 4> v{};
    std::istringstream ls(line);
    std::string cell;
    int col = 0;
    while (std::getline(ls, cell, ',')) {
      if (col >= 4) break;
      try {
        v[col] = std::stod(cell);
      } catch (const std::exception&) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": bad number");
      }
      ++col;
    }
    if (col != 4) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected 4 columns");
    }
    rows.push_back({v[0], v[1], {v[2], v[3]}});
  }
  return rows;
}

void write_vtk(const SolutionField& field, const std::filesystem::path& path,
               const CellVectorField* electric) {
  check_field(field);
  const Mesh& mesh = *field.mesh;
  std::ofstream os = open_output(path);
  os << "# vtk DataFile Version 4.2\n"
     << "axonpml field\n"
     << "ASCII\n"
     << "DATASET UNSTRUCTURED_GRID\n";
  // The (r, z) plane is written as (x, y) = (z, r) so the axis runs horizontally.
  os << "POINTS " << mesh.num_nodes() << " double\n";
  for (const Point& p : mesh.nodes) os << p.z << ' ' << p.r << " 0\n";
  os << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (int t = 0; t < mesh.num_triangles(); ++t) os << "5\n";

  os << "POINT_DATA " << mesh.num_nodes() << '\n';
  os << "SCALARS u_re double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < mesh.num_nodes(); ++i) os << field.values[i].real() << '\n';
  os << "SCALARS u_im double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < mesh.num_nodes(); ++i) os << field.values[i].imag() << '\n';

  os << "CELL_DATA " << mesh.num_triangles() << '\n';
  os << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (Region r : mesh.triangle_region) os << static_cast<int>(r) << '\n';
  if (electric) {
    if (electric->Er.size() != mesh.triangles.size() ||
        electric->Ez.size() != mesh.triangles.size()) {
      throw ValidationError("cell field size does not match the mesh");
    }
    const auto scalar = [&](const char* name, const std::vector<cplx>& v, bool imag) {
      os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (const cplx& c : v) os << (imag ? c.imag() : c.real()) << '\n';
    };
    scalar("Er_re", electric->Er, false);
    scalar("Er_im", electric->Er, true);
    scalar("Ez_re", electric->Ez, false);
    scalar("Ez_im", electric->Ez, true);
  }
  finish(os, path);
}

}  // namespace axonpml
