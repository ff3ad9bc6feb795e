#include <filesystem>
#include <fstream>

#include "axonpml/config.hpp"
#include "axonpml/errors.hpp"
#include "doctest.h"

using namespace axonpml;
using nlohmann::json;

namespace {

json converge_doc() {
  return json::parse(R"({
    "workflow": "converge",
    "name": "small",
    "mode": "TM",
    "geometry": {"Z": 3.141592653589793, "r_inner": 1.0, "R": 3.0, "rho": 4.0},
    "materials": {"exterior": {"epsilon": 4.0}},
    "pml": {"chi0": 5.0},
    "mesh": {"nr": 8, "nz": 4}
  })");
}

json simulate_doc() {
  return json::parse(R"({
    "workflow": "simulate",
    "mode": "TE",
    "geometry": {"Z": 10.0, "R": 2.5, "rho": 3.5, "axon_radius": 0.5, "myelin_outer": 0.8},
    "materials": {"omega": 5.0,
                  "axon": {"epsilon": 2.0, "sigma": 0.2},
                  "myelin": {"epsilon": 10.0},
                  "exterior": {"epsilon": 1.2}},
    "pml": {"chi0": 20.0},
    "boundary": {"incident": {"profile": "bessel_j1", "kc": 7.6}},
    "variants": [{"name": "a", "myelin_z_intervals": [[0, 9.5]]},
                 {"name": "c", "myelin_z_intervals": []}]
  })");
}

}  // namespace

TEST_CASE("defaults are filled in") {
  const RunConfig cfg = parse_config(converge_doc());
  CHECK(cfg.workflow == Workflow::Converge);
  CHECK(cfg.name == "small");
  CHECK(cfg.mode == Mode::TM);
  CHECK(cfg.materials.omega == 1.0);
  CHECK(cfg.materials.mu == 1.0);
  CHECK(cfg.materials.medium(Region::Exterior).sigma == 0.0);
  CHECK(cfg.levels == 1);
  CHECK(cfg.dtn_modes == 0);
  CHECK(cfg.exact_mode == 1);
  CHECK(cfg.incident.profile == "zero");
  CHECK_NOTHROW(cfg.validate());

  json doc = converge_doc();
  doc["geometry"].erase("rho");
  CHECK(parse_config(doc).geometry.rho == 3.0);
}

TEST_CASE("unknown keys are rejected at every level") {
  for (const char* path : {"/extra", "/geometry/extra", "/materials/exterior/extra", "/pml/extra",
                           "/mesh/extra"}) {
    json doc = converge_doc();
    doc[json::json_pointer(path)] = 1;
    CHECK_THROWS_AS(parse_config(doc), ValidationError);
  }
  json doc = simulate_doc();
  doc["variants"][0]["colour"] = "red";
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
}

TEST_CASE("type errors and bad enumerations") {
  json doc = converge_doc();
  doc["mesh"]["nr"] = "eight";
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = converge_doc();
  doc["mesh"]["nr"] = 8.5;
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = converge_doc();
  doc["mode"] = "TEM";
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = converge_doc();
  doc["workflow"] = "explore";
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = converge_doc();
  doc.erase("workflow");
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = simulate_doc();
  doc["variants"][0]["myelin_z_intervals"] = json::array({json::array({1.0})});
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
}

TEST_CASE("semantic validation") {
  auto invalid = [](const std::function<void(json&)>& edit, json doc) {
    edit(doc);
    const RunConfig cfg = parse_config(doc);
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
  };
  invalid([](json& d) { d["mesh"]["nr"] = 0; }, converge_doc());
  invalid([](json& d) { d["mesh"]["levels"] = 0; }, converge_doc());
  invalid([](json& d) { d["pml"]["chi0"] = -1.0; }, converge_doc());
  invalid([](json& d) { d["geometry"]["r_inner"] = 0.0; }, converge_doc());
  invalid([](json& d) { d["geometry"]["rho"] = 2.0; }, converge_doc());
  invalid([](json& d) { d["exact"] = {{"m", 0}}; }, converge_doc());
  invalid([](json& d) { d["materials"].erase("exterior"); }, converge_doc());
  invalid([](json& d) { d["materials"]["exterior"]["sigma"] = 0.1; }, converge_doc());
  invalid([](json& d) { d["name"] = "../escape"; }, converge_doc());
  invalid([](json& d) { d["boundary"]["incident"]["profile"] = "gauss"; }, simulate_doc());
  invalid([](json& d) { d["variants"][1]["name"] = "a"; }, simulate_doc());
  invalid([](json& d) { d["materials"].erase("myelin"); }, simulate_doc());
  invalid(
      [](json& d) {
        d["workflow"] = "compare";
        d["geometry"]["rho"] = 3.0;
      },
      converge_doc());
}

TEST_CASE("compare rejects a resonant exterior wavenumber") {
  json doc = converge_doc();  // k = 2 = 2 pi / Z
  doc["workflow"] = "compare";
  CHECK_THROWS_AS(parse_config(doc).validate(), ResonanceError);
  doc["materials"]["exterior"]["epsilon"] = 6.25;
  CHECK_NOTHROW(parse_config(doc).validate());
}

TEST_CASE("echo round-trips through the parser") {
  for (const json& doc : {converge_doc(), simulate_doc()}) {
    const RunConfig cfg = parse_config(doc);
    const json echo = to_json(cfg);
    const RunConfig again = parse_config(echo);
    CHECK(to_json(again) == echo);
  }
}

TEST_CASE("presets load and validate") {
  for (const auto& entry : std::filesystem::directory_iterator(AXONPML_PRESETS)) {
    CAPTURE(entry.path().string());
    const RunConfig cfg = load_config(entry.path());
    CHECK_NOTHROW(cfg.validate());
  }
}

TEST_CASE("unreadable or malformed files") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
  const auto path = std::filesystem::temp_directory_path() / "axonpml_bad.json";
  std::ofstream(path) << "{\"workflow\": ";
  CHECK_THROWS_AS(load_config(path), ValidationError);
}

TEST_CASE("booleans and floats are not silently converted") {
  json doc = converge_doc();
  doc["pml"]["chi0"] = true;
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = simulate_doc();
  doc["compare"] = {{"dtn_modes_sweep", {10, 20.5}}};
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = converge_doc();
  doc["pml"]["chi0"] = 5;  // integer literal for a real parameter is fine
  CHECK(parse_config(doc).chi0 == 5.0);
}
