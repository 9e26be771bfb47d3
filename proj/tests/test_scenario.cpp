#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "spinmode/renorm.hpp"
#include "spinmode/scenario.hpp"

using namespace spinmode;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json profile_doc(int samples = 9) {
  return json{{"schema", 1},
              {"name", "tiny profile"},
              {"model", "jc"},
              {"params",
               {{"omega_hz", 1241600.0},
                {"omega_m_hz", 1304000.0},
                {"g_hz", 78000.0},
                {"n_max", 20}}},
              {"protocol", "shift_profile"},
              {"settings", {{"t_max_periods", 0.5}, {"samples", samples}}}};
}

json sweep_doc(int repetitions, std::uint64_t seed) {
  json doc{{"schema", 1},
           {"name", "tiny sweep"},
           {"model", "jc"},
           {"params", {{"omega_m_hz", 1304000.0}, {"g_hz", 78000.0}, {"n_max", 20}}},
           {"protocol", "ramsey_average_sweep"},
           {"settings",
            {{"detuning_over_g", {1.0, 2.0}}, {"phase_points", 8}, {"repetitions", repetitions}}}};
  if (repetitions > 0) doc["settings"]["seed"] = seed;
  return doc;
}

json series_doc(int samples, int repetitions) {
  json doc{{"schema", 1},
           {"name", "tiny series"},
           {"model", "jc"},
           {"params",
            {{"omega_hz", 1241600.0},
             {"omega_m_hz", 1304000.0},
             {"g_hz", 78000.0},
             {"n_max", 20}}},
           {"protocol", "time_resolved"},
           {"settings",
            {{"t_max_periods", 0.25},
             {"samples", samples},
             {"observables", {"sigma_y", "sigma_z"}},
             {"repetitions", repetitions}}}};
  if (repetitions > 0) doc["settings"]["seed"] = 17;
  return doc;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("spinmode_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string schema_error(const json& doc) {
  try {
    (void)parse_scenario(doc);
  } catch (const ScenarioError& e) {
    CHECK(e.kind == ScenarioError::Kind::schema);
    return e.what();
  }
  FAIL("expected a schema error");
  return {};
}

int data_rows(const std::string& csv) {
  int rows = 0;
  bool header_seen = false;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("#", 0) == 0 || line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

}  // namespace

TEST_CASE("a minimal document parses with the documented defaults") {
  const Scenario sc = parse_scenario(profile_doc());
  CHECK(sc.protocol == Protocol::shift_profile);
  CHECK(sc.model == Model::jc);
  CHECK(sc.samples == 9);
  CHECK(sc.directory == ".");
  CHECK(sc.basename == "tiny_profile");
  CHECK(sc.format == OutputFormat::both);
  CHECK(sc.params.omega_m == doctest::Approx(2 * 3.14159265358979 * 1304000.0));
  CHECK(sc.t_max == doctest::Approx(0.5 * period(sc.mapped_params())).epsilon(1e-12));
}

TEST_CASE("unknown keys are refused and named") {
  json doc = profile_doc();
  doc["extra"] = 1;
  CHECK(schema_error(doc).find("extra") != std::string::npos);

  doc = profile_doc();
  doc["params"]["coupling_hz"] = 2.0;
  CHECK(schema_error(doc).find("coupling_hz") != std::string::npos);

  doc = profile_doc();
  doc["settings"]["step"] = 3;
  CHECK(schema_error(doc).find("step") != std::string::npos);

  doc = profile_doc();
  doc["output"] = {{"folder", "x"}};
  CHECK(schema_error(doc).find("folder") != std::string::npos);
}

TEST_CASE("temperature accepts exactly one parameterisation") {
  json doc = profile_doc();
  doc["params"]["nbar"] = 0.1;
  doc["params"]["beta"] = 1e-7;
  CHECK(schema_error(doc).find("nbar") != std::string::npos);
  doc["params"].erase("nbar");
  CHECK_NOTHROW((void)parse_scenario(doc));
}

TEST_CASE("time windows accept exactly one parameterisation") {
  json doc = profile_doc();
  doc["settings"]["t_max_s"] = 1e-6;
  CHECK(schema_error(doc).find("t_max") != std::string::npos);
  doc["settings"].erase("t_max_periods");
  const Scenario sc = parse_scenario(doc);
  CHECK(sc.t_max == 1e-6);
  doc["settings"].erase("t_max_s");
  CHECK(schema_error(doc).find("t_max") != std::string::npos);
}

TEST_CASE("schema version must match") {
  json doc = profile_doc();
  doc["schema"] = 99;
  CHECK(schema_error(doc).find("99") != std::string::npos);
}

TEST_CASE("sampled protocols demand a seed") {
  json doc = sweep_doc(100, 1);
  doc["settings"].erase("seed");
  CHECK(schema_error(doc).find("seed") != std::string::npos);
  CHECK_NOTHROW((void)parse_scenario(sweep_doc(0, 0)));
}

TEST_CASE("the sweep rejects a vanishing detuning by pointing at the formula") {
  json doc = sweep_doc(0, 0);
  doc["settings"]["detuning_over_g"] = {1.0, 0.0};
  const std::string message = schema_error(doc);
  CHECK(message.find("Delta != 0") != std::string::npos);
}

TEST_CASE("the sweep only drives the exchange model") {
  json doc = sweep_doc(0, 0);
  doc["model"] = "ti_full";
  doc["params"] = {{"omega_star_hz", 1177000.0},
                   {"omega_rabi_hz", 390000.0},
                   {"eta", 0.1},
                   {"omega_m_hz", 1304000.0}};
  CHECK(schema_error(doc).find("jc") != std::string::npos);
}

TEST_CASE("frequency tracking insists on its preconditions") {
  json doc = series_doc(121, 0);
  doc["settings"]["estimate_larmor"] = true;
  doc["settings"]["estimator_observable"] = "sigma_x";
  CHECK(schema_error(doc).find("estimator_observable") != std::string::npos);

  doc["settings"]["estimator_observable"] = "sigma_y";
  doc["settings"]["frame"] = "rotating";
  CHECK(schema_error(doc).find("lab") != std::string::npos);

  doc["settings"]["frame"] = "lab";
  doc["settings"]["samples"] = 12;
  CHECK(schema_error(doc).find("samples") != std::string::npos);

  doc["settings"]["samples"] = 121;
  CHECK_NOTHROW((void)parse_scenario(doc));
}

TEST_CASE("ion scenarios map their parameters for derived quantities") {
  json doc{{"schema", 1},
           {"name", "ion profile"},
           {"model", "ti_ld"},
           {"params",
            {{"omega_star_hz", 1177000.0},
             {"omega_rabi_hz", 390000.0},
             {"eta", 0.1},
             {"omega_m_hz", 1304000.0},
             {"n_max", 20}}},
           {"protocol", "shift_profile"},
           {"settings", {{"t_max_periods", 0.5}, {"samples", 5}}}};
  const Scenario sc = parse_scenario(doc);
  const ModelParams mapped = sc.mapped_params();
  CHECK(mapped.omega ==
        doctest::Approx(std::hypot(sc.params.omega_star, sc.params.omega_rabi)));
  CHECK(mapped.g == doctest::Approx(0.5 * 0.1 * sc.params.omega_rabi));
}

TEST_CASE("profile runs put commented csv plus a mirror on disk") {
  const fs::path dir = fresh_dir("profile");
  RunOptions opts;
  opts.out_dir = dir.string();
  const RunOutcome outcome = run_scenario(profile_doc(), opts);
  REQUIRE(outcome.files.size() == 2);
  REQUIRE(!outcome.summary.empty());
  CHECK(outcome.summary.front().find("9 samples") != std::string::npos);

  const std::string csv = slurp(dir / "tiny_profile_profile.csv");
  CHECK(csv.rfind("# generator: spinmode", 0) == 0);
  CHECK(csv.find("# scenario: {") != std::string::npos);
  CHECK(csv.find("time_s,abs_gamma,shift_rad_s,singular") != std::string::npos);
  CHECK(data_rows(csv) == 9);

  const json mirror = json::parse(slurp(dir / "tiny_profile.json"));
  CHECK(mirror["tables"]["profile"]["rows"].size() == 9);
  CHECK(mirror["scenario"]["protocol"] == "shift_profile");
}

TEST_CASE("identical runs produce identical bytes") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  RunOptions opts;
  opts.out_dir = a.string();
  run_scenario(sweep_doc(150, 42), opts);
  opts.out_dir = b.string();
  run_scenario(sweep_doc(150, 42), opts);
  for (const char* f : {"tiny_sweep_sweep.csv", "tiny_sweep_fringes.csv", "tiny_sweep.json"})
    CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("the mirror file is enough to reproduce a run byte for byte") {
  const fs::path a = fresh_dir("mirror_a");
  const fs::path b = fresh_dir("mirror_b");
  RunOptions opts;
  opts.out_dir = a.string();
  run_scenario(sweep_doc(80, 7), opts);

  const json mirror = json::parse(slurp(a / "tiny_sweep.json"));
  opts.out_dir = b.string();
  run_scenario(mirror["scenario"], opts);
  CHECK(slurp(a / "tiny_sweep_fringes.csv") == slurp(b / "tiny_sweep_fringes.csv"));
  CHECK(slurp(a / "tiny_sweep_sweep.csv") == slurp(b / "tiny_sweep_sweep.csv"));
}

TEST_CASE("a seed override reshuffles the sampled counts") {
  const fs::path a = fresh_dir("seed_a");
  const fs::path b = fresh_dir("seed_b");
  RunOptions opts;
  opts.out_dir = a.string();
  run_scenario(sweep_doc(150, 42), opts);
  opts.out_dir = b.string();
  opts.seed_override = 43;
  run_scenario(sweep_doc(150, 42), opts);
  CHECK(slurp(a / "tiny_sweep_fringes.csv") != slurp(b / "tiny_sweep_fringes.csv"));
}

TEST_CASE("worker count never changes the output bytes") {
  const fs::path a = fresh_dir("workers_1");
  const fs::path b = fresh_dir("workers_4");
  RunOptions opts;
  opts.workers = 1;
  opts.out_dir = a.string();
  run_scenario(series_doc(40, 120), opts);
  opts.workers = 4;
  opts.out_dir = b.string();
  run_scenario(series_doc(40, 120), opts);
  CHECK(slurp(a / "tiny_series_series.csv") == slurp(b / "tiny_series_series.csv"));
  CHECK(slurp(a / "tiny_series.json") == slurp(b / "tiny_series.json"));
}

TEST_CASE("time resolved tables are wide with one row per sample") {
  const fs::path dir = fresh_dir("wide");
  RunOptions opts;
  opts.out_dir = dir.string();
  run_scenario(series_doc(242, 5), opts);
  const std::string csv = slurp(dir / "tiny_series_series.csv");
  CHECK(csv.find("time_s,sigma_y_exact,sigma_y_up_count,sigma_y_estimate,"
                 "sigma_z_exact,sigma_z_up_count,sigma_z_estimate") != std::string::npos);
  CHECK(data_rows(csv) == 242);
}

TEST_CASE("exact runs leave the sampling columns out") {
  const fs::path dir = fresh_dir("exact");
  RunOptions opts;
  opts.out_dir = dir.string();
  run_scenario(series_doc(10, 0), opts);
  const std::string csv = slurp(dir / "tiny_series_series.csv");
  CHECK(csv.find("time_s,sigma_y_exact,sigma_z_exact\n") != std::string::npos);
  CHECK(csv.find("up_count") == std::string::npos);
}

TEST_CASE("generator extraction scenarios label interior rows") {
  json doc{{"schema", 1},
           {"name", "tiny tcl"},
           {"model", "jc"},
           {"params",
            {{"omega_hz", 1241600.0},
             {"omega_m_hz", 1304000.0},
             {"g_hz", 78000.0},
             {"n_max", 14}}},
           {"protocol", "tcl_extract"},
           {"settings", {{"t_max_periods", 0.25}, {"samples", 41}}}};
  const fs::path dir = fresh_dir("tcl");
  RunOptions opts;
  opts.out_dir = dir.string();
  const RunOutcome outcome = run_scenario(doc, opts);
  const std::string csv = slurp(dir / "tiny_tcl_tcl.csv");
  CHECK(data_rows(csv) == 41 - 4);
  CHECK(csv.find("omega_tilde_rad_s") != std::string::npos);
  CHECK(outcome.summary.front().find("37 interior samples") != std::string::npos);

  const json mirror = json::parse(slurp(dir / "tiny_tcl.json"));
  const auto& cols = mirror["tables"]["tcl"]["columns"];
  const auto& row = mirror["tables"]["tcl"]["rows"][5];
  std::size_t i_num = 0, i_formula = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] == "omega_tilde_rad_s") i_num = i;
    if (cols[i] == "omega_formula_rad_s") i_formula = i;
  }
  const double a = row[i_num].get<double>();
  const double b = row[i_formula].get<double>();
  CHECK(std::abs(a - b) < 1e-2 * std::abs(b));
}

TEST_CASE("comparison scenarios tabulate both models and their gap") {
  json doc{{"schema", 1},
           {"name", "tiny compare"},
           {"model", "ti_rsb"},
           {"params",
            {{"omega_star_hz", 1177000.0},
             {"omega_rabi_hz", 390000.0},
             {"eta", 0.2},
             {"omega_m_hz", 1304000.0},
             {"n_max", 20}}},
           {"protocol", "compare_models"},
           {"settings", {{"duration_periods", 0.5}, {"samples", 20}}}};
  const fs::path dir = fresh_dir("compare");
  RunOptions opts;
  opts.out_dir = dir.string();
  const RunOutcome outcome = run_scenario(doc, opts);
  const std::string csv = slurp(dir / "tiny_compare_compare.csv");
  CHECK(data_rows(csv) == 21);
  CHECK(csv.find("trace_distance") != std::string::npos);
  CHECK(outcome.summary.front().find("max trace distance") != std::string::npos);
}

TEST_CASE("csv only output suppresses the mirror") {
  json doc = profile_doc();
  doc["output"] = {{"format", "csv"}, {"basename", "p"}};
  const fs::path dir = fresh_dir("csvonly");
  RunOptions opts;
  opts.out_dir = dir.string();
  const RunOutcome outcome = run_scenario(doc, opts);
  CHECK(outcome.files.size() == 1);
  CHECK(fs::exists(dir / "p_profile.csv"));
  CHECK(!fs::exists(dir / "p.json"));
}
