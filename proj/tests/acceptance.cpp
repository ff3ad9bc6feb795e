// Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "axonpml/assembly.hpp"
#include "axonpml/config.hpp"
#include "axonpml/linsolve.hpp"
#include "axonpml/modespec.hpp"
#include "axonpml/specialfn.hpp"
#include "axonpml/workflows.hpp"
#include "oracles.hpp"

using namespace axonpml;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[violated: " << what << "] ";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunContext context(const fs::path& out) { return {out, true, std::nullopt}; }

// Finest-level U_R error of criterion 1, reused as the yardstick of criterion 4.
double g_finest_error = std::nan("");

void criterion1(Outcome& o, const fs::path& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConvergeResult res =
      run_converge(load_config(fs::path(AXONPML_PRESETS) / "example1.json"), context(out));
  const double elapsed = seconds_since(t0);
  g_finest_error = res.levels.back().physical.weighted_L2;
  const double l2 = res.slope_L2.value_or(std::nan(""));
  const double h1 = res.slope_H1.value_or(std::nan(""));
  o.detail << "levels " << res.levels.size() << ", L2 slope " << l2 << ", H1 slope " << h1
           << ", finest U_R error " << g_finest_error << ", " << elapsed << " s ";
  o.require(l2 >= 1.85 && l2 <= 2.15, "L2 slope in [1.85, 2.15]");
  o.require(h1 >= 0.85 && h1 <= 1.15, "H1 slope in [0.85, 1.15]");
  o.require(elapsed <= 120.0, "runtime <= 120 s");
}

void criterion2(Outcome& o) {
  constexpr int kPoints = 24;
  constexpr double kTol = 1e-10;
  std::vector<double> ts;
  for (int i = 0; i < kPoints; ++i) ts.push_back(0.2 * std::pow(300.0, double(i) / (kPoints - 1)));

  double wronskian = 0.0, im_h = 0.0, connection = 0.0;
  int lower_violations = 0, upper_violations = 0;
  double first_lower_violation = 0.0;
  for (double t : ts) {
    const double w = special::bessel_j(1, t) * special::bessel_y(0, t) -
                     special::bessel_j(0, t) * special::bessel_y(1, t);
    wronskian = std::max(wronskian, std::abs(w * kPi * t / 2.0 - 1.0));

    const cplx h = special::hankel_log_derivative(t);
    im_h = std::max(im_h, std::abs(h.imag() * std::norm(special::hankel1(1, t)) * kPi / 2 - 1.0));

    const double neg_re = -h.real();
    const double lower = 4 * t * t / (4 * t * t + 3);
    const double upper = 0.5 + 9.0 / (16 * t * t);
    if (neg_re < lower * (1 - kTol)) {
      if (lower_violations++ == 0) first_lower_violation = t;
    }
    if (neg_re > upper * (1 + kTol)) ++upper_violations;

    for (int l : {0, 1}) {
      const cplx want = 2.0 / kPi * std::exp(cplx(0.0, -(l + 1) * kPi / 2)) *
                        special::bessel_k(l, t);
      connection = std::max(connection,
                            std::abs(special::hankel1(l, cplx(0.0, t)) - want) / std::abs(want));
    }
  }
  o.detail << kPoints << " points on t in [0.2, 60]: Wronskian " << wronskian << ", Im h |H1|^2 "
           << im_h << ", K connection " << connection << ", upper-bound violations "
           << upper_violations << ", lower-bound violations " << lower_violations;
  if (lower_violations) {
    const double t = first_lower_violation;
    o.detail << " (first at t = " << t << ": -Re h = " << -special::hankel_log_derivative(t).real()
             << " < 4t^2/(4t^2+3) = " << 4 * t * t / (4 * t * t + 3) << ")";
  }
  o.detail << ' ';
  o.require(wronskian <= kTol, "Wronskian");
  o.require(im_h <= kTol, "Im h |H1|^2 = 2/pi");
  o.require(connection <= kTol, "modified-Bessel connection");
  o.require(upper_violations == 0, "-Re h <= 1/2 + 9/(16t^2)");
  o.require(lower_violations == 0, "-Re h >= 4t^2/(4t^2+3)");
}

void criterion3(Outcome& o) {
  GeometrySpec g;
  g.Z = kPi;
  g.r_inner = 1.0;
  g.R = 2.0;
  g.rho = 2.0;
  const Mesh m = build_structured_mesh(g, 3, 63);
  std::mt19937 rng(20240601);
  std::normal_distribution<double> gauss;
  double worst_im = 0.0, worst_re = 0.0;
  int checked = 0;
  for (double k : {0.7, 2.5, 4.2}) {
    for (Mode mode : {Mode::TM, Mode::TE}) {
      const MaterialMap mat = MaterialMap::uniform(k);
      const DtnBlock b = assemble_dtn_block(m, mat.wave_config(g.Z), g.R, 60, mode);
      if (b.nodes.size() != 64) throw std::logic_error("expected 64 boundary nodes");
      const Eigen::MatrixXcd t = b.operator_matrix(false);
      for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXcd v(64);
        for (auto& x : v) x = {gauss(rng), gauss(rng)};
        v.normalize();
        const cplx q = v.dot(t * v);
        worst_im = std::min(worst_im, q.imag());
        worst_re = std::max(worst_re, q.real());
        ++checked;
      }
    }
  }
  o.detail << checked << " unit vectors on 64 nodes (k = 0.7, 2.5, 4.2; TM and TE): min Im "
           << worst_im << ", max Re " << worst_re << ' ';
  o.require(worst_im >= -1e-12, "Im(v*Tv) >= -1e-12");
  o.require(worst_re <= 1e-12, "Re(v*Tv) <= 1e-12");
}

void criterion4(Outcome& o, const fs::path& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig cfg = load_config(fs::path(AXONPML_PRESETS) / "compare.json");
  const CompareResult res = run_compare(cfg, context(out));
  const double elapsed = seconds_since(t0);
  const double d = cfg.geometry.rho - cfg.geometry.R;
  const double floor = res.dtn_error_U;
  o.detail << "discrepancy " << res.main.discrepancy_U << " vs 3 x " << g_finest_error
           << "; floor (DtN vs exact) " << floor << "; sweep";
  for (const CompareRow& r : res.sweep) o.detail << ' ' << r.chi0 << ':' << r.discrepancy_U;
  o.detail << ", " << elapsed << " s ";
  o.require(std::isfinite(g_finest_error), "criterion-1 finest error available");
  o.require(res.main.discrepancy_U <= 3.0 * g_finest_error, "discrepancy <= 3x finest error");

  // Above the floor each step must shrink at least as fast as e^{-0.8 kappa chi0 d^2}.
  bool reached_floor = false;
  int steps = 0;
  for (size_t i = 0; i + 1 < res.sweep.size(); ++i) {
    const CompareRow& a = res.sweep[i];
    const CompareRow& b = res.sweep[i + 1];
    if (a.discrepancy_U <= floor) {
      reached_floor = true;
      break;
    }
    const double factor = std::exp(-0.8 * res.kappa * (b.chi0 - a.chi0) * d * d);
    o.require(b.discrepancy_U < a.discrepancy_U, "decrease above the floor");
    o.require(b.discrepancy_U <= std::max(a.discrepancy_U * factor, floor),
              "decay at least the bound's exponential rate");
    ++steps;
    if (b.discrepancy_U <= floor) reached_floor = true;
  }
  o.require(steps >= 1, "at least one sweep step above the floor");
  o.require(reached_floor, "sweep reaches the discretization floor");
  o.require(elapsed <= 300.0, "runtime <= 300 s");
}

void criterion5(Outcome& o, const fs::path& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const SimulateResult res =
      run_simulate(load_config(fs::path(AXONPML_PRESETS) / "example2.json"), context(out));
  const double elapsed = seconds_since(t0);
  std::map<std::string, double> band;
  for (const VariantResult& v : res.variants) band[v.name] = v.band_fraction;
  o.detail << "band fractions a " << band["a"] << ", b " << band["b"] << ", c " << band["c"]
           << ", " << elapsed << " s ";
  o.require(band.count("a") && band.count("b") && band.count("c"), "variants a, b, c present");
  o.require(band["a"] >= 1.1 * band["c"], "fraction(a) >= 1.1 fraction(c)");
  o.require(band["b"] >= 1.1 * band["c"], "fraction(b) >= 1.1 fraction(c)");
  o.require(elapsed <= 300.0, "runtime <= 300 s");
}

double symmetry_defect(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  return (a - at).norm() / a.norm();
}

void criterion6(Outcome& o) {
  // Patch test: stiffness far from the axis against a 24x24 collapsed Gauss rule.
  Mesh tri;
  tri.geometry.Z = 1.0;
  tri.geometry.R = tri.geometry.rho = 1e9;
  tri.nodes = {{1e4, 0.0}, {1e4 + 1.0, 0.2}, {1e4 + 0.3, 0.9}};
  tri.triangles = {{0, 1, 2}};
  tri.triangle_region = {Region::Exterior};
  const Eigen::MatrixXcd a = assemble_volume(tri, MaterialMap::uniform(0.0), Mode::TM, {});
  std::array<std::array<double, 2>, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = {tri.nodes[i].r, tri.nodes[i].z};
  const Eigen::Matrix3d ref = oracle::weighted_p1_element(v, 0.0);
  const double patch = (a - ref.cast<cplx>()).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff();

  // FEM systems with at most 500 unknowns against dense LU.
  GeometrySpec g;
  g.Z = kPi;
  g.r_inner = 1.0;
  g.R = 3.0;
  g.rho = 4.0;
  const Mesh m = build_structured_mesh(g, 20, 20);
  const MaterialMap mat = MaterialMap::uniform(2.5);
  const PmlProfile pml{3.0, 4.0, 5.0};
  std::map<BoundaryTag, BoundaryFunction> data;
  data[BoundaryTag::AxisOrInner] = [](double, double z) { return cplx(std::sin(z), 0.3); };
  data[BoundaryTag::Left] = [](double, double) { return cplx(0.0); };
  data[BoundaryTag::RightExterior] = [](double, double) { return cplx(0.0); };
  data[BoundaryTag::Outer] = [](double, double) { return cplx(0.0); };
  double dense = 0.0, sym = 0.0;
  for (Mode mode : {Mode::TM, Mode::TE}) {
    ComplexSystem sys;
    sys.matrix = assemble_volume(m, mat, mode, pml);
    sym = std::max(sym, symmetry_defect(sys.matrix));
    sys.rhs = Eigen::VectorXcd::Zero(m.num_nodes());
    apply_dirichlet(sys, collect_dirichlet(m, data));
    const SolveResult r = solve(sys);
    const Eigen::VectorXcd x = oracle::dense_solve(Eigen::MatrixXcd(sys.matrix), sys.rhs);
    dense = std::max(dense, (r.solution - x).norm() / x.norm());
  }
  GeometrySpec gd = g;
  gd.rho = gd.R;
  const Mesh md = build_structured_mesh(gd, 14, 20);
  SparseMatrix ad = assemble_volume(md, mat, Mode::TM, std::nullopt);
  subtract_dtn_block(ad, assemble_dtn_block(md, mat.wave_config(g.Z), g.R, 30));
  sym = std::max(sym, symmetry_defect(ad));
  {
    ComplexSystem sys{ad, Eigen::VectorXcd::Zero(md.num_nodes()), {}, false};
    std::map<BoundaryTag, BoundaryFunction> inner{{BoundaryTag::AxisOrInner, data.at(BoundaryTag::AxisOrInner)},
                                                  {BoundaryTag::Left, data.at(BoundaryTag::Left)},
                                                  {BoundaryTag::RightExterior, data.at(BoundaryTag::Left)}};
    apply_dirichlet(sys, collect_dirichlet(md, inner));
    const SolveResult r = solve(sys);
    const Eigen::VectorXcd x = oracle::dense_solve(Eigen::MatrixXcd(sys.matrix), sys.rhs);
    dense = std::max(dense, (r.solution - x).norm() / x.norm());
  }

  // Zero data.
  ComplexSystem zero;
  zero.matrix = assemble_volume(m, mat, Mode::TM, pml);
  zero.rhs = Eigen::VectorXcd::Zero(m.num_nodes());
  std::map<BoundaryTag, BoundaryFunction> zeros;
  for (BoundaryTag t : {BoundaryTag::Left, BoundaryTag::RightExterior, BoundaryTag::Outer,
                        BoundaryTag::AxisOrInner}) {
    zeros[t] = [](double, double) { return cplx(0.0); };
  }
  apply_dirichlet(zero, collect_dirichlet(m, zeros));
  const double zero_norm = solve(zero).solution.norm();

  o.detail << "patch " << patch << ", dense LU (" << m.num_nodes() << " and " << md.num_nodes()
           << " unknowns) " << dense << ", zero-data solution norm " << zero_norm
           << ", symmetry " << sym << ' ';
  o.require(patch <= 1e-10, "patch test <= 1e-10");
  o.require(m.num_nodes() <= 500 && md.num_nodes() <= 500, "systems <= 500 unknowns");
  o.require(dense <= 1e-10, "dense LU agreement <= 1e-10");
  o.require(zero_norm == 0.0, "zero data gives zero solution");
  o.require(sym <= 1e-12, "symmetry <= 1e-12");
}

void criterion7(Outcome& o) {
  const double kappa = std::sqrt(3.0);
  const double bound = pml_error_bound({10.0, 11.0, 40.0}, kappa);
  double prev = pml_error_bound({10.0, 11.0, 10.0}, kappa);
  int increases = 0;
  for (int i = 1; i <= 700; ++i) {
    const double b = pml_error_bound({10.0, 11.0, 10.0 + 0.1 * i}, kappa);
    if (!(b < prev)) ++increases;
    prev = b;
  }
  o.detail << "bound " << bound << " vs 3.3e-13, non-decreasing steps on chi0 in [10, 80]: "
           << increases << ' ';
  o.require(std::abs(bound / 3.3e-13 - 1.0) <= 0.05, "within 5% of 3.3e-13");
  o.require(increases == 0, "strictly decreasing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axonpml acceptance suite"};
  fs::path out = "acceptance_out";
  app.add_option("--out", out, "Output root for workflow runs");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"1 Example-1 convergence slopes", [&](Outcome& o) { criterion1(o, out); }},
      {"2 special-function identities", criterion2},
      {"3 discrete DtN signs", criterion3},
      {"4 DtN vs PML cross-validation", [&](Outcome& o) { criterion4(o, out); }},
      {"5 myelin guiding (Example 2)", [&](Outcome& o) { criterion5(o, out); }},
      {"6 assembly and solver oracles", criterion6},
      {"7 PML bound evaluator", criterion7},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "] ";
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
