#include "axonpml/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "axonpml/errors.hpp"
#include "axonpml/specialfn.hpp"

namespace axonpml {
namespace {

constexpr double kPi = std::numbers::pi;

struct Gradient {
  double dr;
  double dz;
};

struct LinearElement {
  std::array<int, 3> nodes;
  std::array<Point, 3> vertices;
  std::array<Gradient, 3> grad;
  double area;
};

LinearElement make_element(const Mesh& mesh, int tri) {
  LinearElement e;
  e.nodes = mesh.triangles[tri];
  for (int k = 0; k < 3; ++k) e.vertices[k] = mesh.nodes[e.nodes[k]];
  e.area = mesh.signed_area(tri);
  if (!(e.area > 0.0)) {
    std::ostringstream msg;
    msg << "triangle " << tri << " is degenerate or clockwise";
    throw ValidationError(msg.str());
  }
  for (int i = 0; i < 3; ++i) {
    const Point& pj = e.vertices[(i + 1) % 3];
    const Point& pk = e.vertices[(i + 2) % 3];
    e.grad[i] = {(pj.z - pk.z) / (2.0 * e.area), (pk.r - pj.r) / (2.0 * e.area)};
  }
  return e;
}

// Degree-2 rule with interior points; the 1/r weight is never evaluated on the axis.
constexpr std::array<std::array<double, 3>, 3> kGauss3{{
    {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
    {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
    {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0},
}};

struct FormCoefficients {
  cplx rr;
  cplx zz;
  cplx mass;
};

FormCoefficients coefficients(Mode mode, double r, const Stretching& s, cplx gamma) {
  const cplx inv_r_beta = 1.0 / (r * s.beta);
  if (mode == Mode::TM) {
    return {inv_r_beta / s.alpha, s.alpha * inv_r_beta, -s.alpha * gamma * inv_r_beta};
  }
  return {inv_r_beta / (s.alpha * gamma), s.alpha * inv_r_beta / gamma, -s.alpha * inv_r_beta};
}

// Moments of sin/cos(theta t) against (1 - t) and t on [0, 1].
struct SegmentMoments {
  double cos_lo, sin_lo, cos_hi, sin_hi;
};

SegmentMoments segment_moments(double theta) {
  SegmentMoments m{};
  if (std::abs(theta) < 1.0) {
    // Alternating Taylor series; 12 terms are far below 1e-17 for |theta| < 1.
    double power = 1.0;  // theta^j / j!
    for (int j = 0; j < 24; ++j) {
      const double sign = ((j / 2) % 2 == 0) ? 1.0 : -1.0;
      const double hi = power / (j + 2);                  // int t * t^j
      const double lo = power / ((j + 1.0) * (j + 2.0));  // int (1-t) * t^j
      if (j % 2 == 0) {
        m.cos_hi += sign * hi;
        m.cos_lo += sign * lo;
      } else {
        m.sin_hi += sign * hi;
        m.sin_lo += sign * lo;
      }
      power *= theta / (j + 1);
    }
    return m;
  }
  const double s = std::sin(theta), c = std::cos(theta), t2 = theta * theta;
  m.cos_hi = (theta * s + c - 1.0) / t2;
  m.sin_hi = (s - theta * c) / t2;
  m.cos_lo = (1.0 - c) / t2;
  m.sin_lo = (theta - s) / t2;
  return m;
}

}  // namespace

const Medium& MaterialMap::medium(Region region) const {
  const Region lookup = (region == Region::Pml) ? Region::Exterior : region;
  auto it = media.find(lookup);
  if (it == media.end()) {
    throw ValidationError("no material given for region " + std::string(to_string(lookup)));
  }
  return it->second;
}

double MaterialMap::k2(Region region) const { return omega * omega * medium(region).epsilon * mu; }

cplx MaterialMap::gamma(Region region) const {
  return {k2(region), omega * mu * medium(region).sigma};
}

cplx MaterialMap::curl_factor(Region region) const {
  const Medium& m = medium(region);
  return {m.sigma, -omega * m.epsilon};
}

void MaterialMap::validate(Mode mode) const {
  if (!(omega > 0.0) || !(mu > 0.0)) throw ValidationError("omega and mu must be positive");
  for (const auto& [region, m] : media) {
    const std::string name(to_string(region));
    if (!(m.epsilon >= 0.0) || !(m.sigma >= 0.0)) {
      throw ValidationError("epsilon and sigma must be non-negative in " + name);
    }
    if (region != Region::Axon && m.sigma != 0.0) {
      throw ValidationError("conductivity must vanish outside the axon (region " + name + ")");
    }
    if (mode == Mode::TE && gamma(region) == cplx(0.0)) {
      throw ValidationError("TE form needs k^2 + i omega mu sigma != 0 in " + name);
    }
  }
}

WaveConfig MaterialMap::wave_config(double Z) const {
  WaveConfig w;
  w.Z = Z;
  w.omega = omega;
  w.mu = mu;
  for (const auto& [region, m] : media) w.k_by_region[region] = omega * std::sqrt(m.epsilon * mu);
  return w;
}

MaterialMap MaterialMap::uniform(double k) {
  MaterialMap m;
  for (Region r : {Region::Axon, Region::Myelin, Region::Exterior}) m.media[r] = {k * k, 0.0};
  return m;
}

SparseMatrix assemble_volume(const Mesh& mesh, const MaterialMap& materials, Mode mode,
                             const std::optional<PmlProfile>& pml) {
  const int n = mesh.num_nodes();
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(9 * mesh.triangles.size());

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const LinearElement e = make_element(mesh, t);
    const cplx gamma = materials.gamma(mesh.triangle_region[t]);
    std::array<std::array<cplx, 3>, 3> local{};
    for (const auto& bary : kGauss3) {
      const double r = bary[0] * e.vertices[0].r + bary[1] * e.vertices[1].r +
                       bary[2] * e.vertices[2].r;
      if (!(r > 0.0)) throw ValidationError("quadrature point on or left of the axis");
      const Stretching s = pml ? pml_alpha_beta(r, *pml) : Stretching{1.0, 1.0};
      const FormCoefficients c = coefficients(mode, r, s, gamma);
      const double w = e.area / 3.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          local[i][j] += w * (c.rr * (e.grad[i].dr * e.grad[j].dr) +
                              c.zz * (e.grad[i].dz * e.grad[j].dz) +
                              c.mass * (bary[i] * bary[j]));
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) triplets.emplace_back(e.nodes[i], e.nodes[j], local[i][j]);
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

SparseMatrix assemble_volume_tm(const Mesh& mesh, const MaterialMap& materials,
                                const std::optional<PmlProfile>& pml) {
  return assemble_volume(mesh, materials, Mode::TM, pml);
}

SparseMatrix assemble_volume_te(const Mesh& mesh, const MaterialMap& materials,
                                const std::optional<PmlProfile>& pml) {
  return assemble_volume(mesh, materials, Mode::TE, pml);
}

int default_dtn_modes(double k, double Z) {
  return std::max(30, static_cast<int>(std::ceil(3.0 * k * Z / kPi)));
}

Eigen::MatrixXcd DtnBlock::operator_matrix(bool include_identity) const {
  Eigen::VectorXcd diag = (0.5 * Z) * (h.array() + (include_identity ? 1.0 : 0.0)).matrix();
  const Eigen::MatrixXcd s = sine.cast<cplx>();
  return (scale / (R * R)) * (s.transpose() * diag.asDiagonal() * s);
}

DtnBlock assemble_dtn_block(const Mesh& mesh, const WaveConfig& wave, double R, int M,
                            Mode mode) {
  if (M < 1) throw ValidationError("DtN truncation order M must be >= 1");
  const double k = wave.exterior_k();
  const double Z = wave.Z;

  DtnBlock block;
  block.M = M;
  block.R = R;
  block.Z = Z;
  block.scale = (mode == Mode::TE) ? 1.0 / (k * k) : 1.0;

  const double tol = 1e-12 * std::max(1.0, R);
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    if (std::abs(mesh.nodes[i].r - R) <= tol) block.nodes.push_back(i);
  }
  std::sort(block.nodes.begin(), block.nodes.end(),
            [&](int a, int b) { return mesh.nodes[a].z < mesh.nodes[b].z; });
  const int nb = static_cast<int>(block.nodes.size());
  if (nb < 2 || std::abs(mesh.nodes[block.nodes.front()].z) > tol ||
      std::abs(mesh.nodes[block.nodes.back()].z - Z) > tol * std::max(1.0, Z)) {
    throw ValidationError("mesh has no complete node line on r = R for the DtN block");
  }

  block.h.resize(M);
  for (int m = 1; m <= M; ++m) {
    block.h[m - 1] = special::hankel_log_derivative(axial_wavenumber(k, Z, m) * R);
  }

  block.sine = Eigen::MatrixXd::Zero(M, nb);
  for (int p = 0; p + 1 < nb; ++p) {
    const double za = mesh.nodes[block.nodes[p]].z;
    const double zb = mesh.nodes[block.nodes[p + 1]].z;
    const double len = zb - za;
    for (int m = 1; m <= M; ++m) {
      const double omega = m * kPi / Z;
      const SegmentMoments mo = segment_moments(omega * len);
      const double sa = std::sin(omega * za), ca = std::cos(omega * za);
      // int over [za, zb] of phi_p sin(omega z) and phi_{p+1} sin(omega z).
      const double lo = len * (sa * mo.cos_lo + ca * mo.sin_lo);
      const double hi = len * (sa * mo.cos_hi + ca * mo.sin_hi);
      block.sine(m - 1, p) += (2.0 / Z) * lo;
      block.sine(m - 1, p + 1) += (2.0 / Z) * hi;
    }
  }
  block.matrix = block.operator_matrix(true);
  return block;
}

void subtract_dtn_block(SparseMatrix& matrix, const DtnBlock& block) {
  const int nb = static_cast<int>(block.nodes.size());
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(std::size_t(nb) * nb);
  for (int j = 0; j < nb; ++j) {
    for (int i = 0; i < nb; ++i) {
      triplets.emplace_back(block.nodes[i], block.nodes[j], -block.matrix(i, j));
    }
  }
  SparseMatrix b(matrix.rows(), matrix.cols());
  b.setFromTriplets(triplets.begin(), triplets.end());
  matrix += b;
}

Eigen::VectorXcd assemble_neumann_rhs(const Mesh& mesh, const std::function<cplx(double)>& u_N) {
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(mesh.num_nodes());
  const double offset = 0.5 / std::sqrt(3.0);
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.tag != BoundaryTag::RightAxon) continue;
    const double ra = mesh.nodes[e.nodes[0]].r;
    const double rb = mesh.nodes[e.nodes[1]].r;
    const double len = std::abs(rb - ra);
    for (double t : {0.5 - offset, 0.5 + offset}) {
      const cplx g = u_N(ra + t * (rb - ra));
      f[e.nodes[0]] += 0.5 * len * (1.0 - t) * g;
      f[e.nodes[1]] += 0.5 * len * t * g;
    }
  }
  return f;
}

std::map<int, cplx> collect_dirichlet(const Mesh& mesh,
                                      const std::map<BoundaryTag, BoundaryFunction>& data) {
  if (data.count(BoundaryTag::RightAxon)) {
    throw ValidationError("right_axon carries Neumann data and cannot take Dirichlet values");
  }
  std::map<int, cplx> values;
  for (BoundaryTag tag : {BoundaryTag::Left, BoundaryTag::RightExterior, BoundaryTag::Outer,
                          BoundaryTag::AxisOrInner}) {
    auto it = data.find(tag);
    if (it == data.end()) continue;
    for (const BoundaryEdge& e : mesh.boundary_edges) {
      if (e.tag != tag) continue;
      for (int node : e.nodes) {
        if (values.count(node)) continue;
        const Point& p = mesh.nodes[node];
        values.emplace(node, it->second(p.r, p.z));
      }
    }
  }
  return values;
}

void apply_dirichlet(ComplexSystem& system, const std::map<int, cplx>& values) {
  SparseMatrix& a = system.matrix;
  const int n = static_cast<int>(a.rows());
  if (system.rhs.size() != n) throw ValidationError("system rhs size does not match matrix");

  std::vector<char> fixed(n, 0);
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
  for (const auto& [node, value] : values) {
    if (node < 0 || node >= n) throw ValidationError("Dirichlet node index out of range");
    auto prev = system.dirichlet.find(node);
    if (prev != system.dirichlet.end() && prev->second != value) {
      std::ostringstream msg;
      msg << "conflicting Dirichlet values at node " << node;
      throw ValidationError(msg.str());
    }
    fixed[node] = 1;
    g[node] = value;
  }

  a.makeCompressed();
  for (int j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      const int i = static_cast<int>(it.row());
      if (fixed[j]) {
        if (!fixed[i]) system.rhs[i] -= it.value() * g[j];
        it.valueRef() = (i == j) ? cplx(1.0) : cplx(0.0);
      } else if (fixed[i]) {
        it.valueRef() = 0.0;
      }
    }
  }
  a.prune([](Eigen::Index i, Eigen::Index j, const cplx& v) { return i == j || v != cplx(0.0); });
  for (const auto& [node, value] : values) {
    if (a.coeff(node, node) != cplx(1.0)) a.coeffRef(node, node) = 1.0;
    system.rhs[node] = value;
    system.dirichlet[node] = value;
  }
}

}  // namespace axonpml
