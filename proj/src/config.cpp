#include "axonpml/config.hpp"

#include <fstream>
#include <set>
#include <type_traits>

#include "axonpml/errors.hpp"

namespace axonpml {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

// nlohmann converts bool <-> number and truncates floats to int; reject both.
template <typename T>
bool strict_kind(const json& j) {
  if constexpr (std::is_same_v<T, bool>) {
    return j.is_boolean();
  } else if constexpr (std::is_integral_v<T>) {
    return j.is_number_integer();
  } else if constexpr (std::is_floating_point_v<T>) {
    return j.is_number();
  } else if constexpr (std::is_same_v<T, std::string>) {
    return j.is_string();
  } else {
    if (!j.is_array()) return false;
    for (const json& item : j) {
      if (!strict_kind<typename T::value_type>(item)) return false;
    }
    return true;
  }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!strict_kind<T>(*it)) {
    throw ValidationError("wrong type for '" + std::string(key) + "' in " + where);
  }
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError("wrong type for '" + std::string(key) + "' in " + where);
  }
}

std::vector<std::pair<double, double>> read_intervals(const json& j, const std::string& where) {
  std::vector<std::pair<double, double>> out;
  if (!j.is_array()) throw ValidationError(where + " must be a list of [z0, z1] pairs");
  for (const json& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ValidationError(where + " must be a list of [z0, z1] pairs");
    }
    out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

json intervals_json(const std::vector<std::pair<double, double>>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back({a, b});
  return out;
}

Workflow workflow_from_string(const std::string& s) {
  if (s == "converge") return Workflow::Converge;
  if (s == "simulate") return Workflow::Simulate;
  if (s == "compare") return Workflow::Compare;
  if (s == "advise") return Workflow::Advise;
  throw ValidationError("unknown workflow '" + s + "'");
}

const std::set<std::string> kRegionKeys{"axon", "myelin", "exterior"};

}  // namespace

std::string_view to_string(Workflow w) {
  switch (w) {
    case Workflow::Converge: return "converge";
    case Workflow::Simulate: return "simulate";
    case Workflow::Compare: return "compare";
    case Workflow::Advise: return "advise";
  }
  return "?";
}

std::optional<PmlProfile> RunConfig::pml_if_present() const {
  if (!geometry.has_pml()) return std::nullopt;
  return pml();
}

void RunConfig::validate() const {
  if (name.empty() || name.find('/') != std::string::npos || name == "." || name == "..") {
    throw ValidationError("run name must be a plain directory name");
  }
  if (nr < 1 || nz < 1) throw ValidationError("mesh.nr and mesh.nz must be >= 1");
  if (levels < 1) throw ValidationError("mesh.levels must be >= 1");
  if (dtn_modes < 0) throw ValidationError("dtn.modes must be >= 0 (0 selects the default)");

  if (workflow == Workflow::Advise) {
    if (!(geometry.R > 0.0)) throw ValidationError("geometry.R must be positive");
    if (!(target > 0.0)) throw ValidationError("advise.target must be positive");
    if (kappa_override && !(*kappa_override > 0.0)) {
      throw ValidationError("advise.kappa must be positive");
    }
    for (double d : d_grid) {
      if (!(d > 0.0)) throw ValidationError("advise.d_grid entries must be positive");
    }
    for (double c : chi0_grid) {
      if (!(c >= 0.0)) throw ValidationError("advise.chi0_grid entries must be non-negative");
    }
    if (!materials.media.count(Region::Exterior)) {
      throw ValidationError("materials.exterior is required");
    }
    materials.validate(mode);
    return;
  }

  geometry.validate();
  materials.validate(mode);
  for (Region r : {Region::Axon, Region::Myelin, Region::Exterior}) {
    const bool needed = r == Region::Exterior || (r == Region::Axon && geometry.has_axon()) ||
                        (r == Region::Myelin && geometry.has_myelin());
    if (needed && !materials.media.count(r)) {
      throw ValidationError("materials." + std::string(to_string(r)) + " is required");
    }
  }
  if (geometry.has_pml()) pml().validate();
  if (!(materials.k2(Region::Exterior) > 0.0)) {
    throw ValidationError("exterior wavenumber must be positive");
  }

  switch (workflow) {
    case Workflow::Converge:
    case Workflow::Compare:
      if (!(geometry.r_inner > 0.0)) {
        throw ValidationError("the exact outgoing mode needs an annulus (geometry.r_inner > 0)");
      }
      if (exact_mode < 1) throw ValidationError("exact.m must be >= 1");
      if (workflow == Workflow::Compare) {
        if (!geometry.has_pml()) throw ValidationError("compare needs a PML (rho > R)");
        wave().validate(true);
        for (double c : chi0_sweep) {
          if (!(c >= 0.0)) throw ValidationError("compare.chi0_sweep entries must be >= 0");
        }
        for (int m : dtn_modes_sweep) {
          if (m < 1) throw ValidationError("compare.dtn_modes_sweep entries must be >= 1");
        }
      }
      break;
    case Workflow::Simulate: {
      if (incident.profile != "zero" && incident.profile != "bessel_j1") {
        throw ValidationError("unknown incident profile '" + incident.profile + "'");
      }
      std::set<std::string> names;
      for (const VariantSpec& v : variants) {
        if (v.name.empty() || v.name.find('/') != std::string::npos) {
          throw ValidationError("variant names must be non-empty plain names");
        }
        if (!names.insert(v.name).second) throw ValidationError("duplicate variant " + v.name);
        GeometrySpec g = geometry;
        g.myelin_z_intervals = v.myelin_z_intervals;
        g.validate();
        if (g.has_myelin() && !materials.media.count(Region::Myelin)) {
          throw ValidationError("materials.myelin is required by variant " + v.name);
        }
      }
      break;
    }
    case Workflow::Advise:
      break;
  }
}

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "config",
                 {"workflow", "name", "mode", "geometry", "materials", "pml", "mesh", "dtn",
                  "exact", "boundary", "variants", "compare", "advise"});
  RunConfig cfg;
  if (!doc.contains("workflow")) throw ValidationError("config needs a 'workflow'");
  std::string workflow;
  read(doc, "workflow", "config", workflow);
  cfg.workflow = workflow_from_string(workflow);
  read(doc, "name", "config", cfg.name);
  std::string mode = "TM";
  read(doc, "mode", "config", mode);
  if (mode == "TM") {
    cfg.mode = Mode::TM;
  } else if (mode == "TE") {
    cfg.mode = Mode::TE;
  } else {
    throw ValidationError("mode must be \"TM\" or \"TE\"");
  }

  if (auto it = doc.find("geometry"); it != doc.end()) {
    const json& g = *it;
    reject_unknown(g, "geometry",
                   {"Z", "r_inner", "R", "rho", "axon_radius", "myelin_outer",
                    "myelin_z_intervals"});
    read(g, "Z", "geometry", cfg.geometry.Z);
    read(g, "r_inner", "geometry", cfg.geometry.r_inner);
    read(g, "R", "geometry", cfg.geometry.R);
    cfg.geometry.rho = cfg.geometry.R;
    read(g, "rho", "geometry", cfg.geometry.rho);
    read(g, "axon_radius", "geometry", cfg.geometry.axon_radius);
    read(g, "myelin_outer", "geometry", cfg.geometry.myelin_outer);
    if (g.contains("myelin_z_intervals")) {
      cfg.geometry.myelin_z_intervals =
          read_intervals(g["myelin_z_intervals"], "geometry.myelin_z_intervals");
    }
  }

  if (auto it = doc.find("materials"); it != doc.end()) {
    const json& m = *it;
    reject_unknown(m, "materials", {"omega", "mu", "axon", "myelin", "exterior"});
    read(m, "omega", "materials", cfg.materials.omega);
    read(m, "mu", "materials", cfg.materials.mu);
    for (const std::string& key : kRegionKeys) {
      if (!m.contains(key)) continue;
      const std::string where = "materials." + key;
      reject_unknown(m[key], where, {"epsilon", "sigma"});
      Medium med;
      read(m[key], "epsilon", where, med.epsilon);
      read(m[key], "sigma", where, med.sigma);
      cfg.materials.media[*region_from_string(key)] = med;
    }
  }

  if (auto it = doc.find("pml"); it != doc.end()) {
    reject_unknown(*it, "pml", {"chi0"});
    read(*it, "chi0", "pml", cfg.chi0);
  }
  if (auto it = doc.find("mesh"); it != doc.end()) {
    reject_unknown(*it, "mesh", {"nr", "nz", "levels"});
    read(*it, "nr", "mesh", cfg.nr);
    read(*it, "nz", "mesh", cfg.nz);
    read(*it, "levels", "mesh", cfg.levels);
  }
  if (auto it = doc.find("dtn"); it != doc.end()) {
    reject_unknown(*it, "dtn", {"modes"});
    read(*it, "modes", "dtn", cfg.dtn_modes);
  }
  if (auto it = doc.find("exact"); it != doc.end()) {
    reject_unknown(*it, "exact", {"m"});
    read(*it, "m", "exact", cfg.exact_mode);
  }
  if (auto it = doc.find("boundary"); it != doc.end()) {
    reject_unknown(*it, "boundary", {"incident", "u_N", "u_1"});
    read(*it, "u_N", "boundary", cfg.u_N);
    read(*it, "u_1", "boundary", cfg.u_1);
    if (it->contains("incident")) {
      const json& inc = (*it)["incident"];
      reject_unknown(inc, "boundary.incident", {"profile", "kc", "amplitude"});
      read(inc, "profile", "boundary.incident", cfg.incident.profile);
      read(inc, "kc", "boundary.incident", cfg.incident.kc);
      read(inc, "amplitude", "boundary.incident", cfg.incident.amplitude);
    }
  }
  if (auto it = doc.find("variants"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("variants must be a list");
    for (const json& v : *it) {
      reject_unknown(v, "variant", {"name", "myelin_z_intervals"});
      VariantSpec spec;
      read(v, "name", "variant", spec.name);
      if (v.contains("myelin_z_intervals")) {
        spec.myelin_z_intervals =
            read_intervals(v["myelin_z_intervals"], "variant.myelin_z_intervals");
      }
      cfg.variants.push_back(std::move(spec));
    }
  }
  if (auto it = doc.find("compare"); it != doc.end()) {
    reject_unknown(*it, "compare", {"chi0_sweep", "dtn_modes_sweep"});
    read(*it, "chi0_sweep", "compare", cfg.chi0_sweep);
    read(*it, "dtn_modes_sweep", "compare", cfg.dtn_modes_sweep);
  }
  if (auto it = doc.find("advise"); it != doc.end()) {
    reject_unknown(*it, "advise", {"target", "kappa", "chi0_grid", "d_grid"});
    read(*it, "target", "advise", cfg.target);
    if (it->contains("kappa") && !(*it)["kappa"].is_null()) {
      double k = 0.0;
      read(*it, "kappa", "advise", k);
      cfg.kappa_override = k;
    }
    read(*it, "chi0_grid", "advise", cfg.chi0_grid);
    read(*it, "d_grid", "advise", cfg.d_grid);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json doc;
  doc["workflow"] = std::string(to_string(cfg.workflow));
  doc["name"] = cfg.name;
  doc["mode"] = cfg.mode == Mode::TM ? "TM" : "TE";
  const GeometrySpec& g = cfg.geometry;
  doc["geometry"] = {{"Z", g.Z},
                     {"r_inner", g.r_inner},
                     {"R", g.R},
                     {"rho", g.rho},
                     {"axon_radius", g.axon_radius},
                     {"myelin_outer", g.myelin_outer},
                     {"myelin_z_intervals", intervals_json(g.myelin_z_intervals)}};
  json mat = {{"omega", cfg.materials.omega}, {"mu", cfg.materials.mu}};
  for (const auto& [region, m] : cfg.materials.media) {
    mat[std::string(to_string(region))] = {{"epsilon", m.epsilon}, {"sigma", m.sigma}};
  }
  doc["materials"] = mat;
  doc["pml"] = {{"chi0", cfg.chi0}};
  doc["mesh"] = {{"nr", cfg.nr}, {"nz", cfg.nz}, {"levels", cfg.levels}};
  doc["dtn"] = {{"modes", cfg.dtn_modes}};
  doc["exact"] = {{"m", cfg.exact_mode}};
  doc["boundary"] = {{"incident",
                      {{"profile", cfg.incident.profile},
                       {"kc", cfg.incident.kc},
                       {"amplitude", cfg.incident.amplitude}}},
                     {"u_N", cfg.u_N},
                     {"u_1", cfg.u_1}};
  json variants = json::array();
  for (const VariantSpec& v : cfg.variants) {
    variants.push_back(
        {{"name", v.name}, {"myelin_z_intervals", intervals_json(v.myelin_z_intervals)}});
  }
  doc["variants"] = variants;
  doc["compare"] = {{"chi0_sweep", cfg.chi0_sweep}, {"dtn_modes_sweep", cfg.dtn_modes_sweep}};
  doc["advise"] = {{"target", cfg.target},
                   {"kappa", cfg.kappa_override ? json(*cfg.kappa_override) : json(nullptr)},
                   {"chi0_grid", cfg.chi0_grid},
                   {"d_grid", cfg.d_grid}};
  return doc;
}

}  // namespace axonpml
