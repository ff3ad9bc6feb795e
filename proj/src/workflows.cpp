#include "axonpml/workflows.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "axonpml/errors.hpp"
#include "axonpml/specialfn.hpp"

namespace axonpml {
namespace fs = std::filesystem;

RunLog::RunLog(const fs::path& file, bool quiet) : file_(file), quiet_(quiet) {
  if (!file_) throw std::runtime_error("cannot open " + file.string());
}

void RunLog::info(const std::string& line) {
  file_ << line << '\n';
  file_.flush();
  if (!quiet_) std::cout << line << '\n';
}

void RunLog::warn(const std::string& line) {
  file_ << "warning: " << line << '\n';
  file_.flush();
  std::cerr << "warning: " << line << '\n';
}

fs::path prepare_output(const RunConfig& cfg, const RunContext& ctx) {
  const fs::path dir = ctx.out_root / cfg.name;
  std::error_code ec;
  fs::create_directories(dir / "fields", ec);
  if (!ec) fs::create_directories(dir / "tables", ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  std::ofstream echo(dir / "config.echo");
  echo << to_json(cfg).dump(2) << '\n';
  if (!echo) throw std::runtime_error("cannot write " + (dir / "config.echo").string());
  return dir;
}

int worker_count() {
  const char* env = std::getenv("AXONPML_WORKERS");
  if (!env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || n < 1) {
    throw ValidationError("AXONPML_WORKERS must be a positive integer");
  }
  return static_cast<int>(std::min<long>(n, 64));
}

namespace {

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::ofstream open_table(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << std::setprecision(17);
  return os;
}

RunConfig effective(const RunConfig& cfg, const RunContext& ctx) {
  RunConfig eff = cfg;
  if (ctx.levels) eff.levels = *ctx.levels;
  eff.validate();
  return eff;
}

// Outgoing mode w = r H1(k_m r) sin(m pi z / Z), continued into the layer as
// r~ H1(k_m r~) sin(m pi z / Z). Radial factors are cached by r, which
// repeats across every z-row of a structured mesh.
class OutgoingMode {
 public:
  OutgoingMode(double k, double Z, int m, std::optional<PmlProfile> pml)
      : km_(axial_wavenumber(k, Z, m)), axial_(m * std::numbers::pi / Z), pml_(pml) {}

  bool continuable() const { return km_.imag() == 0.0; }

  cplx value(double r, double z) { return radial(r).f * std::sin(axial_ * z); }

  std::array<cplx, 2> gradient(double r, double z) {
    const Radial& rad = radial(r);
    return {rad.df * std::sin(axial_ * z), rad.f * axial_ * std::cos(axial_ * z)};
  }

  ExactSolution exact() {
    return {[this](double r, double z) { return value(r, z); },
            [this](double r, double z) { return gradient(r, z); }};
  }

 private:
  struct Radial {
    cplx f;
    cplx df;
  };

  const Radial& radial(double r) {
    auto it = cache_.find(r);
    if (it != cache_.end()) return it->second;
    cplx rt = r;
    cplx alpha = 1.0;
    if (pml_ && r > pml_->R) {
      rt = pml_->stretched(r);
      alpha = pml_alpha_beta(r, *pml_).alpha;
    }
    const cplx arg = km_ * rt;
    const special::ScaledHankelPair h = special::hankel1_scaled_pair(arg);
    const cplx phase = std::exp(cplx(0.0, 1.0) * arg);
    return cache_.emplace(r, Radial{rt * phase * h.h1, alpha * km_ * rt * phase * h.h0})
        .first->second;
  }

  cplx km_;
  double axial_;
  std::optional<PmlProfile> pml_;
  std::unordered_map<double, Radial> cache_;
};

std::optional<double> try_kappa(double k, double Z, std::vector<std::string>& warnings) {
  try {
    return kappa(k, Z, minimal_kappa_modes(k, Z));
  } catch (const ResonanceError& e) {
    warnings.push_back(std::string("kappa undefined: ") + e.what());
    return std::nullopt;
  }
}

// The exact mode's trace on r = r_inner and zero data on the other Dirichlet
// sides. Outer is left free when `outer_free` (DtN truncation).
std::map<int, cplx> annulus_dirichlet(const Mesh& mesh, OutgoingMode& mode, bool outer_free) {
  std::map<BoundaryTag, BoundaryFunction> data;
  const auto zero = [](double, double) { return cplx(0.0); };
  data[BoundaryTag::Left] = zero;
  data[BoundaryTag::RightExterior] = zero;
  if (!outer_free) data[BoundaryTag::Outer] = zero;
  data[BoundaryTag::AxisOrInner] = [&mode](double r, double z) { return mode.value(r, z); };
  return collect_dirichlet(mesh, data);
}

ComplexSystem annulus_system(const Mesh& mesh, const RunConfig& cfg, OutgoingMode& mode,
                             const std::optional<PmlProfile>& pml) {
  ComplexSystem sys;
  sys.matrix = assemble_volume(mesh, cfg.materials, cfg.mode, pml);
  sys.rhs = Eigen::VectorXcd::Zero(mesh.num_nodes());
  apply_dirichlet(sys, annulus_dirichlet(mesh, mode, false));
  return sys;
}

int scaled(int n, int levels) { return n << (levels - 1); }

void log_warnings(RunLog& log, const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) log.warn(w);
}

}  // namespace

ConvergeResult run_converge(const RunConfig& cfg_in, const RunContext& ctx) {
  const RunConfig cfg = effective(cfg_in, ctx);
  const fs::path dir = prepare_output(cfg, ctx);
  RunLog log(dir / "log.txt", ctx.quiet);
  ConvergeResult result;

  const double k = std::sqrt(cfg.materials.k2(Region::Exterior));
  const std::optional<PmlProfile> pml = cfg.pml_if_present();
  const std::optional<double> kap = try_kappa(k, cfg.geometry.Z, result.warnings);
  if (pml) {
    for (const std::string& w : pml->warnings(kap)) result.warnings.push_back(w);
  }
  log.info("converge: k = " + fmt(k) + ", m = " + std::to_string(cfg.exact_mode) +
           ", levels = " + std::to_string(cfg.levels));
  log_warnings(log, result.warnings);

  const double k2 = k * k;
  Mesh mesh = build_structured_mesh(cfg.geometry, cfg.nr, cfg.nz);
  std::ofstream table = open_table(dir / "tables" / "convergence.csv");
  table << "level,nodes,h,L2,H1,plain_L2,plain_H1,whole_L2,whole_H1,residual\n";

  for (int level = 0; level < cfg.levels; ++level) {
    if (level > 0) mesh = refine_uniform(mesh);
    OutgoingMode mode(k, cfg.geometry.Z, cfg.exact_mode, pml);
    ComplexSystem sys = annulus_system(mesh, cfg, mode, pml);
    const SolveResult sol = solve(sys);

    SolutionField field{&mesh, sol.solution, cfg.mode, &cfg.materials};
    ConvergeLevel row;
    row.level = level;
    row.nodes = mesh.num_nodes();
    row.solve = sol.report;
    row.physical = error_against_exact(field, mode.exact(), k2, physical_triangles());
    if (mode.continuable()) {
      row.whole = error_against_exact(field, mode.exact(), k2, all_triangles());
    }
    result.levels.push_back(row);

    table << level << ',' << row.nodes << ',' << row.physical.h << ','
          << row.physical.weighted_L2 << ',' << row.physical.weighted_H1 << ','
          << row.physical.plain_L2 << ',' << row.physical.plain_H1 << ','
          << row.whole.weighted_L2 << ',' << row.whole.weighted_H1 << ','
          << row.solve.relative_residual << '\n';
    log.info("level " + std::to_string(level) + ": nodes " + std::to_string(row.nodes) +
             ", h " + fmt(row.physical.h) + ", L2 " + fmt(row.physical.weighted_L2) + ", H1 " +
             fmt(row.physical.weighted_H1) + ", residual " + fmt(row.solve.relative_residual, 3) +
             ", solve " + fmt(row.solve.elapsed, 3) + " s");
    if (level + 1 == cfg.levels) {
      write_csv(field, dir / "fields" / "solution.csv");
      write_vtk(field, dir / "fields" / "solution.vtk");
    }
  }

  if (result.levels.size() >= 2) {
    std::vector<std::pair<double, double>> l2, h1;
    for (const ConvergeLevel& l : result.levels) {
      l2.emplace_back(l.physical.h, l.physical.weighted_L2);
      h1.emplace_back(l.physical.h, l.physical.weighted_H1);
    }
    result.slope_L2 = convergence_rates(l2);
    result.slope_H1 = convergence_rates(h1);
    log.info("slopes: L2 " + fmt(*result.slope_L2, 4) + ", H1 " + fmt(*result.slope_H1, 4));
  } else {
    log.info("slopes: need at least two levels");
  }
  std::ofstream slopes = open_table(dir / "tables" / "slopes.csv");
  slopes << "norm,slope\n";
  if (result.slope_L2) slopes << "L2," << *result.slope_L2 << "\nH1," << *result.slope_H1 << '\n';
  return result;
}

namespace {

VariantResult simulate_variant(const RunConfig& cfg, const VariantSpec& variant,
                               const fs::path& dir, std::vector<std::string>& messages) {
  GeometrySpec geom = cfg.geometry;
  geom.myelin_z_intervals = variant.myelin_z_intervals;
  const Mesh mesh =
      build_structured_mesh(geom, scaled(cfg.nr, cfg.levels), scaled(cfg.nz, cfg.levels));
  const std::optional<PmlProfile> pml = cfg.pml_if_present();

  ComplexSystem sys;
  sys.matrix = assemble_volume(mesh, cfg.materials, cfg.mode, pml);
  sys.rhs = Eigen::VectorXcd::Zero(mesh.num_nodes());
  if (cfg.u_N != 0.0) {
    const double u_N = cfg.u_N;
    sys.rhs += assemble_neumann_rhs(mesh, [u_N](double) { return cplx(u_N); });
  }

  const IncidentSpec inc = cfg.incident;
  const double r1 = geom.axon_radius;
  std::map<BoundaryTag, BoundaryFunction> data;
  data[BoundaryTag::Left] = [inc, r1](double r, double) -> cplx {
    if (inc.profile != "bessel_j1" || r > r1) return 0.0;
    return inc.amplitude * special::bessel_j(1, inc.kc * r);
  };
  const double u1 = cfg.u_1;
  data[BoundaryTag::RightExterior] = [u1](double, double) { return cplx(u1); };
  data[BoundaryTag::Outer] = [](double, double) { return cplx(0.0); };
  data[BoundaryTag::AxisOrInner] = [](double, double) { return cplx(0.0); };
  apply_dirichlet(sys, collect_dirichlet(mesh, data));

  const SolveResult sol = solve(sys);
  SolutionField field{&mesh, sol.solution, cfg.mode, &cfg.materials};

  VariantResult out;
  out.name = variant.name;
  out.nodes = mesh.num_nodes();
  out.solve = sol.report;

  std::optional<CellVectorField> electric;
  if (cfg.mode == Mode::TE) electric = recover_electric_field(field);
  write_vtk(field, dir / "fields" / (variant.name + ".vtk"), electric ? &*electric : nullptr);
  write_csv(field, dir / "fields" / (variant.name + ".csv"));

  if (sol.solution.cwiseAbs().maxCoeff() == 0.0) {
    messages.push_back("variant " + variant.name + ": field is identically zero");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.band_fraction = nan;
    for (Region r : {Region::Axon, Region::Myelin, Region::Exterior}) out.fractions[r] = nan;
    return out;
  }
  for (Region r : {Region::Axon, Region::Myelin, Region::Exterior}) {
    const bool present =
        std::find(mesh.triangle_region.begin(), mesh.triangle_region.end(), r) !=
        mesh.triangle_region.end();
    out.fractions[r] = present ? energy_fraction(field, r) : 0.0;
  }
  out.band_fraction = energy_fraction(field, radial_band(geom.axon_radius, geom.myelin_outer));
  return out;
}

}  // namespace

SimulateResult run_simulate(const RunConfig& cfg_in, const RunContext& ctx) {
  const RunConfig cfg = effective(cfg_in, ctx);
  const fs::path dir = prepare_output(cfg, ctx);
  RunLog log(dir / "log.txt", ctx.quiet);

  std::vector<VariantSpec> variants = cfg.variants;
  if (variants.empty()) variants.push_back({cfg.name, cfg.geometry.myelin_z_intervals});

  std::vector<std::string> warnings;
  if (auto pml = cfg.pml_if_present()) {
    const std::optional<double> kap =
        try_kappa(std::sqrt(cfg.materials.k2(Region::Exterior)), cfg.geometry.Z, warnings);
    for (const std::string& w : pml->warnings(kap)) warnings.push_back(w);
  }
  log.info("simulate: " + std::to_string(variants.size()) + " variant(s), mode " +
           (cfg.mode == Mode::TE ? "TE" : "TM"));
  log_warnings(log, warnings);

  const int n = static_cast<int>(variants.size());
  std::vector<VariantResult> results(n);
  std::vector<std::vector<std::string>> messages(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  const auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        results[i] = simulate_variant(cfg, variants[i], dir, messages[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min(worker_count(), n);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  for (int i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }

  std::ofstream table = open_table(dir / "tables" / "energy.csv");
  table << "variant,nodes,axon,myelin,exterior,band,residual\n";
  for (int i = 0; i < n; ++i) {
    log_warnings(log, messages[i]);
    const VariantResult& v = results[i];
    table << v.name << ',' << v.nodes << ',' << v.fractions.at(Region::Axon) << ','
          << v.fractions.at(Region::Myelin) << ',' << v.fractions.at(Region::Exterior) << ','
          << v.band_fraction << ',' << v.solve.relative_residual << '\n';
    log.info("variant " + v.name + ": nodes " + std::to_string(v.nodes) + ", fractions axon " +
             fmt(v.fractions.at(Region::Axon), 4) + ", myelin " +
             fmt(v.fractions.at(Region::Myelin), 4) + ", exterior " +
             fmt(v.fractions.at(Region::Exterior), 4) + ", band " + fmt(v.band_fraction, 4) +
             ", residual " + fmt(v.solve.relative_residual, 3));
  }
  return {results};
}

CompareResult run_compare(const RunConfig& cfg_in, const RunContext& ctx) {
  const RunConfig cfg = effective(cfg_in, ctx);
  const fs::path dir = prepare_output(cfg, ctx);
  RunLog log(dir / "log.txt", ctx.quiet);
  CompareResult result;

  const GeometrySpec& g = cfg.geometry;
  const double k = std::sqrt(cfg.materials.k2(Region::Exterior));
  result.kappa = kappa(k, g.Z, minimal_kappa_modes(k, g.Z));
  result.dtn_modes = cfg.dtn_modes > 0 ? cfg.dtn_modes : default_dtn_modes(k, g.Z);
  log_warnings(log, cfg.pml().warnings(result.kappa));

  const int nr = scaled(cfg.nr, cfg.levels);
  const int nz = scaled(cfg.nz, cfg.levels);
  const double hr = (g.rho - g.r_inner) / nr;
  const int nr_phys = static_cast<int>(std::lround((g.R - g.r_inner) / hr));
  if (std::abs(nr_phys * hr - (g.R - g.r_inner)) > 1e-9 * (g.R - g.r_inner)) {
    throw ValidationError("compare needs R on a radial grid line of the PML mesh");
  }
  GeometrySpec g_dtn = g;
  g_dtn.rho = g.R;
  const Mesh mesh_pml = build_structured_mesh(g, nr, nz);
  const Mesh mesh_dtn = build_structured_mesh(g_dtn, nr_phys, nz);
  result.physical_nodes = mesh_dtn.num_nodes();

  // The r-major numbering makes the DtN mesh a prefix of the PML mesh.
  for (int i = 0; i < mesh_dtn.num_nodes(); ++i) {
    const Point a = mesh_dtn.nodes[i], b = mesh_pml.nodes[i];
    if (std::abs(a.r - b.r) > 1e-9 * g.rho || std::abs(a.z - b.z) > 1e-9 * g.Z) {
      throw ValidationError("DtN and PML meshes do not share the physical nodes");
    }
  }
  log.info("compare: k = " + fmt(k) + ", kappa = " + fmt(result.kappa) + ", M = " +
           std::to_string(result.dtn_modes) + ", physical nodes " +
           std::to_string(result.physical_nodes));

  const double k2 = k * k;
  OutgoingMode exact_mode(k, g.Z, cfg.exact_mode, std::nullopt);

  const auto solve_dtn = [&](int M) {
    ComplexSystem sys;
    sys.matrix = assemble_volume(mesh_dtn, cfg.materials, cfg.mode, std::nullopt);
    const DtnBlock block = assemble_dtn_block(mesh_dtn, cfg.materials.wave_config(g.Z), g.R, M,
                                              cfg.mode);
    // The block goes in before elimination so constrained rows stay identity rows.
    subtract_dtn_block(sys.matrix, block);
    sys.rhs = Eigen::VectorXcd::Zero(mesh_dtn.num_nodes());
    apply_dirichlet(sys, annulus_dirichlet(mesh_dtn, exact_mode, true));
    return solve(sys).solution;
  };
  const auto solve_pml = [&](double chi0) {
    const PmlProfile p{g.R, g.rho, chi0};
    ComplexSystem sys = annulus_system(mesh_pml, cfg, exact_mode, p);
    return solve(sys).solution;
  };
  const auto discrepancy = [&](const Eigen::VectorXcd& dtn, const Eigen::VectorXcd& pml,
                               double chi0) {
    CompareRow row;
    row.chi0 = chi0;
    row.bound = chi0 > 0.0 ? pml_error_bound({g.R, g.rho, chi0}, result.kappa)
                           : std::numeric_limits<double>::infinity();
    SolutionField diff{&mesh_dtn, dtn - pml.head(mesh_dtn.num_nodes()), cfg.mode, nullptr};
    const WeightedNorms n = weighted_norms(diff, k2, all_triangles());
    row.discrepancy_U = n.u_norm;
    row.discrepancy_V = n.v_norm;
    return row;
  };

  const Eigen::VectorXcd u_dtn = solve_dtn(result.dtn_modes);
  const Eigen::VectorXcd u_pml = solve_pml(cfg.chi0);
  result.main = discrepancy(u_dtn, u_pml, cfg.chi0);

  SolutionField dtn_field{&mesh_dtn, u_dtn, cfg.mode, nullptr};
  SolutionField pml_field{&mesh_pml, u_pml, cfg.mode, nullptr};
  result.dtn_error_U = error_against_exact(dtn_field, exact_mode.exact(), k2, all_triangles())
                           .weighted_L2;
  result.pml_error_U =
      error_against_exact(pml_field, exact_mode.exact(), k2, physical_triangles()).weighted_L2;
  log.info("chi0 " + fmt(cfg.chi0) + ": discrepancy U " + fmt(result.main.discrepancy_U) +
           ", V " + fmt(result.main.discrepancy_V) + ", bound " + fmt(result.main.bound));
  log.info("error against exact mode (U, r <= R): DtN " + fmt(result.dtn_error_U) + ", PML " +
           fmt(result.pml_error_U));

  for (double chi0 : cfg.chi0_sweep) {
    result.sweep.push_back(discrepancy(u_dtn, solve_pml(chi0), chi0));
    const CompareRow& r = result.sweep.back();
    log.info("sweep chi0 " + fmt(chi0) + ": discrepancy U " + fmt(r.discrepancy_U) +
             ", bound " + fmt(r.bound));
  }

  if (!cfg.dtn_modes_sweep.empty()) {
    const int m_ref = *std::max_element(cfg.dtn_modes_sweep.begin(), cfg.dtn_modes_sweep.end());
    const Eigen::VectorXcd u_ref = solve_dtn(m_ref);
    for (int M : cfg.dtn_modes_sweep) {
      const Eigen::VectorXcd u = (M == m_ref) ? u_ref : solve_dtn(M);
      SolutionField diff{&mesh_dtn, u - u_ref, cfg.mode, nullptr};
      result.modes_sweep.push_back({M, weighted_norms(diff, k2, all_triangles()).u_norm});
      log.info("DtN M " + std::to_string(M) + ": change U " +
               fmt(result.modes_sweep.back().change_U));
    }
  }

  std::ofstream table = open_table(dir / "tables" / "compare.csv");
  table << "chi0,bound,discrepancy_U,discrepancy_V\n";
  const auto write_row = [&table](const CompareRow& r) {
    table << r.chi0 << ',' << r.bound << ',' << r.discrepancy_U << ',' << r.discrepancy_V << '\n';
  };
  write_row(result.main);
  for (const CompareRow& r : result.sweep) write_row(r);
  std::ofstream modes = open_table(dir / "tables" / "dtn_modes.csv");
  modes << "M,change_U\n";
  for (const DtnModesRow& r : result.modes_sweep) modes << r.modes << ',' << r.change_U << '\n';
  std::ofstream summary = open_table(dir / "tables" / "summary.csv");
  summary << "kappa,M,dtn_error_U,pml_error_U\n"
          << result.kappa << ',' << result.dtn_modes << ',' << result.dtn_error_U << ','
          << result.pml_error_U << '\n';

  write_csv(dtn_field, dir / "fields" / "dtn.csv");
  write_csv(pml_field, dir / "fields" / "pml.csv");
  write_vtk(dtn_field, dir / "fields" / "dtn.vtk");
  write_vtk(pml_field, dir / "fields" / "pml.vtk");
  return result;
}

AdviseResult run_advise(const RunConfig& cfg_in, const RunContext& ctx) {
  const RunConfig cfg = effective(cfg_in, ctx);
  const fs::path dir = prepare_output(cfg, ctx);
  RunLog log(dir / "log.txt", ctx.quiet);
  AdviseResult result;

  const GeometrySpec& g = cfg.geometry;
  if (cfg.kappa_override) {
    result.kappa = *cfg.kappa_override;
  } else {
    const double k = std::sqrt(cfg.materials.k2(Region::Exterior));
    if (!(g.Z > 0.0)) throw ValidationError("geometry.Z must be positive");
    result.kappa = kappa(k, g.Z, minimal_kappa_modes(k, g.Z));
  }
  log.info("advise: kappa = " + fmt(result.kappa) + ", R = " + fmt(g.R) + ", rho = " +
           fmt(g.rho) + ", target = " + fmt(cfg.target));

  std::vector<double> chi0_grid = cfg.chi0_grid;
  if (chi0_grid.empty()) chi0_grid = {1, 2, 5, 10, 20, 40, 80};
  std::vector<double> d_grid = cfg.d_grid;
  if (d_grid.empty()) d_grid = {g.rho - g.R};
  for (double d : d_grid) {
    for (double chi0 : chi0_grid) {
      const PmlProfile p{g.R, g.R + d, chi0};
      result.table.push_back({chi0, d, pml_error_bound(p, result.kappa),
                              is_admissible(p, result.kappa)});
    }
  }
  std::ofstream table = open_table(dir / "tables" / "bounds.csv");
  table << "chi0,d,bound,admissible\n";
  for (const AdviseRow& r : result.table) {
    table << r.chi0 << ',' << r.d << ',' << r.bound << ',' << (r.admissible ? 1 : 0) << '\n';
  }

  result.suggested_chi0 = suggest_chi0(cfg.target, g.R, g.rho, result.kappa);
  result.suggested_bound = pml_error_bound({g.R, g.rho, result.suggested_chi0}, result.kappa);
  std::ofstream rec = open_table(dir / "tables" / "recommendation.csv");
  rec << "kappa,R,rho,target,chi0,bound\n"
      << result.kappa << ',' << g.R << ',' << g.rho << ',' << cfg.target << ','
      << result.suggested_chi0 << ',' << result.suggested_bound << '\n';
  log.info("suggested chi0 = " + fmt(result.suggested_chi0) + " (bound " +
           fmt(result.suggested_bound) + ", d = " + fmt(g.rho - g.R) + ")");
  return result;
}

void run_workflow(const RunConfig& cfg, const RunContext& ctx) {
  switch (cfg.workflow) {
    case Workflow::Converge: run_converge(cfg, ctx); return;
    case Workflow::Simulate: run_simulate(cfg, ctx); return;
    case Workflow::Compare: run_compare(cfg, ctx); return;
    case Workflow::Advise: run_advise(cfg, ctx); return;
  }
}

}  // namespace axonpml
