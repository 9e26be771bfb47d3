#include "spinmode/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "spinmode/analysis.hpp"
#include "spinmode/renorm.hpp"
#include "spinmode/rng.hpp"
#include "spinmode/tcl.hpp"
#include "spinmode/version.hpp"

namespace spinmode {

using nlohmann::json;

Protocol protocol_from_string(const std::string& name) {
  if (name == "shift_profile") return Protocol::shift_profile;
  if (name == "ramsey_average_sweep") return Protocol::ramsey_average_sweep;
  if (name == "time_resolved") return Protocol::time_resolved;
  if (name == "compare_models") return Protocol::compare_models;
  if (name == "tcl_extract") return Protocol::tcl_extract;
  throw std::invalid_argument("unknown protocol '" + name + "'");
}

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::shift_profile: return "shift_profile";
    case Protocol::ramsey_average_sweep: return "ramsey_average_sweep";
    case Protocol::time_resolved: return "time_resolved";
    case Protocol::compare_models: return "compare_models";
    case Protocol::tcl_extract: return "tcl_extract";
  }
  throw std::logic_error("to_string(Protocol): bad enum");
}

ModelParams Scenario::mapped_params() const {
  return model == Model::jc ? params : map_ti_to_jc(params);
}

namespace {

[[noreturn]] void fail_schema(const std::string& message) {
  throw ScenarioError(ScenarioError::Kind::schema, message);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return item.key() == k; }))
      fail_schema(where + ": unknown key '" + item.key() + "'");
  }
}

const json& member(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_schema(where + ": missing key '" + key + "'");
  return *it;
}

double number(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_number()) fail_schema(where + ": key '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key, double fallback) {
  return obj.contains(key) ? number(obj, where, key) : fallback;
}

long long integer(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    fail_schema(where + ": key '" + std::string(key) + "' must be an integer");
  return v.get<long long>();
}

long long integer_or(const json& obj, const std::string& where, const char* key,
                     long long fallback) {
  return obj.contains(key) ? integer(obj, where, key) : fallback;
}

std::string text(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_string()) fail_schema(where + ": key '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

ModelParams parse_params(const json& j) {
  if (!j.is_object()) fail_schema("params: object expected");
  check_keys(j, "params",
             {"omega_hz", "omega_m_hz", "g_hz", "omega_star_hz", "omega_rabi_hz",
              "eta", "nbar", "beta", "n_max"});
  constexpr double two_pi = 2.0 * std::numbers::pi;
  ModelParams p;
  p.omega_m = two_pi * number(j, "params", "omega_m_hz");
  p.omega = two_pi * number_or(j, "params", "omega_hz", 0.0);
  p.g = two_pi * number_or(j, "params", "g_hz", 0.0);
  p.omega_star = two_pi * number_or(j, "params", "omega_star_hz", 0.0);
  p.omega_rabi = two_pi * number_or(j, "params", "omega_rabi_hz", 0.0);
  p.eta = number_or(j, "params", "eta", 0.0);
  p.n_max = int(integer_or(j, "params", "n_max", 30));
  if (j.contains("nbar") && j.contains("beta"))
    fail_schema("params: give exactly one of 'nbar' and 'beta'");
  if (j.contains("beta")) {
    try {
      p.set_beta(number(j, "params", "beta"));
    } catch (const std::invalid_argument& e) {
      fail_schema(std::string("params: ") + e.what());
    }
  } else {
    p.nbar = number_or(j, "params", "nbar", 0.0);
  }
  return p;
}

double resolve_t_max(const json& settings, const std::string& where, const char* abs_key,
                     const char* periods_key, const Scenario& sc) {
  const bool has_abs = settings.contains(abs_key);
  const bool has_periods = settings.contains(periods_key);
  if (has_abs == has_periods)
    fail_schema(where + ": give exactly one of '" + abs_key + "' and '" + periods_key + "'");
  double value = 0.0;
  if (has_abs) {
    value = number(settings, where, abs_key);
  } else {
    try {
      value = number(settings, where, periods_key) * period(sc.mapped_params());
    } catch (const std::invalid_argument& e) {
      fail_schema(where + ": " + e.what());
    }
  }
  if (!(value > 0.0)) fail_schema(where + ": time window must be positive");
  return value;
}

void parse_sampling(const json& settings, const std::string& where, Scenario& sc,
                    int min_samples) {
  sc.samples = int(integer(settings, where, "samples"));
  if (sc.samples < min_samples)
    fail_schema(where + ": samples >= " + std::to_string(min_samples) + " required");
}

void parse_repetitions(const json& settings, const std::string& where, Scenario& sc) {
  sc.repetitions = int(integer_or(settings, where, "repetitions", 0));
  if (sc.repetitions < 0) fail_schema(where + ": repetitions must be >= 0");
  if (settings.contains("seed")) {
    const json& v = settings["seed"];
    if (!v.is_number_unsigned() && !v.is_number_integer())
      fail_schema(where + ": 'seed' must be an unsigned integer");
    sc.seed = v.get<std::uint64_t>();
  } else if (sc.repetitions > 0) {
    fail_schema(where + ": 'seed' is required whenever repetitions > 0");
  }
}

void validate_model_params(const Scenario& sc) {
  try {
    if (sc.model == Model::jc)
      sc.params.validate_exchange();
    else
      sc.params.validate_ion();
  } catch (const std::invalid_argument& e) {
    fail_schema(std::string("params: ") + e.what());
  }
}

void parse_settings(const json& settings, Scenario& sc) {
  if (!settings.is_object()) fail_schema("settings: object expected");
  const std::string where = "settings(" + to_string(sc.protocol) + ")";
  switch (sc.protocol) {
    case Protocol::shift_profile: {
      check_keys(settings, where, {"t_max_s", "t_max_periods", "samples"});
      sc.t_max = resolve_t_max(settings, where, "t_max_s", "t_max_periods", sc);
      parse_sampling(settings, where, sc, 2);
      break;
    }
    case Protocol::ramsey_average_sweep: {
      check_keys(settings, where,
                 {"detuning_over_g", "phase_points", "repetitions", "seed"});
      if (sc.model != Model::jc)
        fail_schema(where + ": this protocol drives the exchange model, set model to jc");
      // the runner sets omega per grid point; keep the untouched field valid
      if (sc.params.omega == 0.0) sc.params.omega = sc.params.omega_m;
      const json& grid = member(settings, where, "detuning_over_g");
      if (!grid.is_array() || grid.empty())
        fail_schema(where + ": 'detuning_over_g' must be a nonempty array");
      for (const auto& v : grid) {
        if (!v.is_number()) fail_schema(where + ": 'detuning_over_g' entries must be numbers");
        const double x = v.get<double>();
        if (x == 0.0)
          fail_schema(where + ": Delta = 0 is invalid, the average shift "
                              "-2 g^2 sign(Delta)/(|Delta| + Omega_1) requires Delta != 0");
        if (!(sc.params.omega_m - x * sc.params.g > 0.0))
          fail_schema(where + ": detuning_over_g = " + std::to_string(x) +
                      " pushes the spin frequency below zero");
        sc.detuning_over_g.push_back(x);
      }
      if (!(sc.params.g > 0.0)) fail_schema(where + ": g_hz must be positive for a Delta/g sweep");
      sc.phase_points = int(integer(settings, where, "phase_points"));
      if (sc.phase_points < 3) fail_schema(where + ": phase_points >= 3 required");
      parse_repetitions(settings, where, sc);
      // pre-flight the wrap-around guard so long sweeps fail before running
      for (double x : sc.detuning_over_g) {
        ModelParams q = sc.params;
        q.omega = q.omega_m - x * q.g;
        if (std::abs(average_shift_vacuum(q) * period(q)) >= std::numbers::pi)
          fail_schema(where + ": detuning_over_g = " + std::to_string(x) +
                      " accumulates more than pi of phase per period, fit would wrap");
      }
      break;
    }
    case Protocol::time_resolved: {
      check_keys(settings, where,
                 {"t_max_s", "t_max_periods", "samples", "observables", "repetitions",
                  "seed", "frame", "estimate_larmor", "estimator_observable"});
      sc.t_max = resolve_t_max(settings, where, "t_max_s", "t_max_periods", sc);
      parse_sampling(settings, where, sc, 2);
      const json& obs = member(settings, where, "observables");
      if (!obs.is_array() || obs.empty())
        fail_schema(where + ": 'observables' must be a nonempty array");
      for (const auto& v : obs) {
        if (!v.is_string()) fail_schema(where + ": observables entries must be strings");
        try {
          sc.observables.push_back(observable_from_string(v.get<std::string>()));
        } catch (const std::invalid_argument& e) {
          fail_schema(where + ": " + e.what());
        }
      }
      parse_repetitions(settings, where, sc);
      if (settings.contains("frame")) {
        const std::string f = text(settings, where, "frame");
        if (f == "lab") sc.frame = Frame::lab;
        else if (f == "rotating") sc.frame = Frame::rotating;
        else fail_schema(where + ": frame must be 'lab' or 'rotating'");
      }
      if (settings.contains("estimate_larmor")) {
        const json& v = settings["estimate_larmor"];
        if (!v.is_boolean()) fail_schema(where + ": 'estimate_larmor' must be a boolean");
        sc.estimate_larmor = v.get<bool>();
      }
      if (settings.contains("estimator_observable")) {
        try {
          sc.estimator_observable =
              observable_from_string(text(settings, where, "estimator_observable"));
        } catch (const std::invalid_argument& e) {
          fail_schema(where + ": " + e.what());
        }
      }
      if (sc.estimate_larmor) {
        if (sc.frame != Frame::lab)
          fail_schema(where + ": the zero-crossing tracker reads the lab-frame signal, set frame to 'lab'");
        if (std::find(sc.observables.begin(), sc.observables.end(),
                      sc.estimator_observable) == sc.observables.end())
          fail_schema(where + ": estimator_observable must be listed in observables");
        const double hint = sc.mapped_params().omega;
        const double dt = sc.t_max / double(sc.samples - 1);
        if (hint > 0.0 && dt > (2.0 * std::numbers::pi / hint) / 20.0 * (1.0 + 1e-9))
          fail_schema(where + ": zero-crossing tracking needs at least 20 samples per "
                              "2 pi/omega; raise samples or shrink the window");
      }
      break;
    }
    case Protocol::compare_models: {
      check_keys(settings, where, {"duration_s", "duration_periods", "samples"});
      sc.t_max = resolve_t_max(settings, where, "duration_s", "duration_periods", sc);
      parse_sampling(settings, where, sc, 1);
      break;
    }
    case Protocol::tcl_extract: {
      check_keys(settings, where, {"t_max_s", "t_max_periods", "samples", "max_condition"});
      sc.t_max = resolve_t_max(settings, where, "t_max_s", "t_max_periods", sc);
      parse_sampling(settings, where, sc, 5);
      sc.max_condition = number_or(settings, where, "max_condition", 1e8);
      if (!(sc.max_condition > 1.0)) fail_schema(where + ": max_condition must exceed 1");
      break;
    }
  }
}

std::string default_basename(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out.empty() ? "results" : out;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const int w = int(std::min<std::size_t>(std::max(workers, 1), n));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex gate;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(gate);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> linspace(double t_max, int points) {
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = t_max * double(i) / double(points - 1);
  return out;
}

struct ProtocolOutput {
  std::vector<ResultTable> tables;
  std::vector<std::string> summary;
};

ProtocolOutput run_shift_profile(const Scenario& sc, int workers) {
  const ModelParams pm = sc.mapped_params();
  const auto times = linspace(sc.t_max, sc.samples);
  std::vector<Cell> shift(times.size());
  std::vector<double> absgamma(times.size());
  parallel_for(times.size(), workers, [&](std::size_t i) {
    absgamma[i] = std::abs(gamma_thermal(times[i], pm));
    if (auto s = shift_thermal(times[i], pm)) shift[i] = *s;
  });
  ResultTable table("profile", {"time_s", "abs_gamma", "shift_rad_s", "singular"});
  table.mark_integer("singular");
  std::size_t singular = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!shift[i]) ++singular;
    table.add_row({times[i], absgamma[i], shift[i], double(!shift[i])});
  }
  ProtocolOutput out;
  out.summary.push_back("shift_profile: " + std::to_string(times.size()) + " samples, " +
                        std::to_string(singular) + " singular");
  out.tables.push_back(std::move(table));
  return out;
}

ProtocolOutput run_ramsey_average_sweep(const Scenario& sc, int workers) {
  std::vector<double> phases(sc.phase_points);
  for (int j = 0; j < sc.phase_points; ++j)
    phases[j] = 2.0 * std::numbers::pi * double(j) / double(sc.phase_points);

  const std::size_t n = sc.detuning_over_g.size();
  std::vector<PhaseScanResult> scans(n);
  std::vector<CosineFit> fits(n);
  std::vector<double> fitted_shift(n);
  parallel_for(n, workers, [&](std::size_t i) {
    ModelParams q = sc.params;
    q.omega = q.omega_m - sc.detuning_over_g[i] * q.g;
    const std::uint64_t point_seed = rng::derive(sc.seed, 0x5eedu, i);
    scans[i] = ramsey_time_average(q, Model::jc, phases, sc.repetitions, point_seed);
    std::vector<double> p_up = scans[i].up_probability;
    if (sc.repetitions > 0)
      for (std::size_t j = 0; j < p_up.size(); ++j)
        p_up[j] = 0.5 * (1.0 + scans[i].records[j].estimate);
    fits[i] = fit_negative_cosine(phases, p_up);
    fitted_shift[i] = average_shift_from_phase(fits[i], q);
  });

  ResultTable sweep("sweep", {"detuning_over_g", "arm_duration_s", "contrast", "phase_rad",
                              "shift_fit_rad_s", "shift_formula_rad_s", "lamb_shift_rad_s"});
  ResultTable fringes("fringes", {"detuning_over_g", "phase_rad", "p_up_exact", "up_count",
                                  "repetitions", "estimate"});
  fringes.mark_integer("up_count");
  fringes.mark_integer("repetitions");
  for (std::size_t i = 0; i < n; ++i) {
    ModelParams q = sc.params;
    q.omega = q.omega_m - sc.detuning_over_g[i] * q.g;
    sweep.add_row({sc.detuning_over_g[i], scans[i].arm_duration, fits[i].contrast,
                   fits[i].phase, fitted_shift[i], average_shift_vacuum(q), lamb_shift(q)});
    for (std::size_t j = 0; j < phases.size(); ++j) {
      Cell up, reps, est;
      if (sc.repetitions > 0) {
        up = double(scans[i].records[j].up_count);
        reps = double(scans[i].records[j].repetitions);
        est = scans[i].records[j].estimate;
      }
      fringes.add_row({sc.detuning_over_g[i], phases[j], scans[i].up_probability[j],
                       up, reps, est});
    }
  }
  ProtocolOutput out;
  out.summary.push_back("ramsey_average_sweep: " + std::to_string(n) + " detunings x " +
                        std::to_string(phases.size()) + " phases");
  out.tables.push_back(std::move(sweep));
  out.tables.push_back(std::move(fringes));
  return out;
}

ProtocolOutput run_time_resolved(const Scenario& sc, int workers) {
  const auto times = linspace(sc.t_max, sc.samples);
  const std::size_t n = times.size();
  const std::size_t n_obs = sc.observables.size();

  // chunk the grid; stream offsets keep the draws identical to a serial run
  const int w = int(std::min<std::size_t>(std::max(workers, 1), n));
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  const std::size_t step = (n + w - 1) / w;
  for (std::size_t a = 0; a < n; a += step) chunks.emplace_back(a, std::min(a + step, n));

  std::vector<TimeScanResult> parts(chunks.size());
  parallel_for(chunks.size(), workers, [&](std::size_t c) {
    const auto [a, b] = chunks[c];
    const std::vector<double> slice(times.begin() + a, times.begin() + b);
    parts[c] = ramsey_time_resolved(sc.params, sc.model, slice, sc.observables,
                                    sc.repetitions, sc.seed, sc.frame, a);
  });

  std::vector<std::string> columns{"time_s"};
  for (auto obs : sc.observables) {
    columns.push_back(to_string(obs) + "_exact");
    if (sc.repetitions > 0) {
      columns.push_back(to_string(obs) + "_up_count");
      columns.push_back(to_string(obs) + "_estimate");
    }
  }
  ResultTable series("series", columns);
  if (sc.repetitions > 0)
    for (auto obs : sc.observables) series.mark_integer(to_string(obs) + "_up_count");

  std::vector<double> estimator_input(n);
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const auto& part = parts[c];
    for (std::size_t k = 0; k < part.times.size(); ++k) {
      std::vector<Cell> row{part.times[k]};
      for (std::size_t j = 0; j < n_obs; ++j) {
        row.push_back(part.series[j].exact[k]);
        if (sc.repetitions > 0) {
          row.push_back(double(part.series[j].records[k].up_count));
          row.push_back(part.series[j].records[k].estimate);
        }
        if (sc.observables[j] == sc.estimator_observable)
          estimator_input[chunks[c].first + k] = sc.repetitions > 0
                                                     ? part.series[j].records[k].estimate
                                                     : part.series[j].exact[k];
      }
      series.add_row(std::move(row));
    }
  }

  ProtocolOutput out;
  out.summary.push_back("time_resolved: " + std::to_string(n) + " times x " +
                        std::to_string(n_obs) + " observables" +
                        (sc.repetitions > 0
                             ? ", " + std::to_string(sc.repetitions) + " repetitions"
                             : ", exact expectations"));
  out.tables.push_back(std::move(series));

  if (sc.estimate_larmor) {
    const ModelParams pm = sc.mapped_params();
    const auto est = larmor_zero_crossings({times, estimator_input}, pm.omega);
    ResultTable larmor("larmor", {"time_s", "omega_rad_s", "shift_rad_s",
                                  "shift_formula_rad_s", "singular"});
    larmor.mark_integer("singular");
    for (std::size_t k = 0; k < est.times.size(); ++k) {
      Cell formula;
      if (auto s = shift_thermal(est.times[k], pm)) formula = *s;
      larmor.add_row({est.times[k], est.omega[k], est.omega[k] - pm.omega, formula,
                      double(!formula)});
    }
    out.summary.push_back("larmor: " + std::to_string(est.omega.size()) +
                          " interval estimates from " + std::to_string(est.crossings.size()) +
                          " crossings");
    out.tables.push_back(std::move(larmor));
  }
  return out;
}

ProtocolOutput run_compare_models(const Scenario& sc) {
  const ModelComparison cmp = compare_models(sc.params, sc.model, sc.t_max, sc.samples);
  ResultTable table("compare",
                    {"time_s", "sx_jc", "sy_jc", "sz_jc", "sx_ti", "sy_ti", "sz_ti",
                     "dsx", "dsy", "dsz", "trace_distance"});
  for (std::size_t k = 0; k < cmp.times.size(); ++k)
    table.add_row({cmp.times[k], cmp.jc[0][k], cmp.jc[1][k], cmp.jc[2][k], cmp.ti[0][k],
                   cmp.ti[1][k], cmp.ti[2][k], cmp.difference[0][k], cmp.difference[1][k],
                   cmp.difference[2][k], cmp.distance[k]});
  ProtocolOutput out;
  out.summary.push_back("compare_models: " + std::to_string(cmp.times.size()) +
                        " samples, max trace distance " + format_cell(cmp.max_distance, false));
  out.tables.push_back(std::move(table));
  return out;
}

ProtocolOutput run_tcl_extract(const Scenario& sc, int workers) {
  const Matrix h = coupled_hamiltonian(sc.model, sc.params);
  const MapReconstructor recon(h, thermal_mode_state(sc.params));
  const auto times = linspace(sc.t_max, sc.samples);
  std::vector<DynamicalMap> maps(times.size());
  parallel_for(times.size(), workers, [&](std::size_t i) { maps[i] = recon.map_at(times[i]); });

  const ModelParams pm = sc.mapped_params();
  ResultTable table("tcl", {"time_s", "omega_tilde_rad_s", "gamma_z_rad_s",
                            "gamma_plus_rad_s", "gamma_minus_rad_s", "residual",
                            "omega_formula_rad_s", "singular"});
  table.mark_integer("singular");
  std::size_t singular = 0;
  for (std::size_t i = 2; i + 2 < maps.size(); ++i) {
    Cell formula;
    if (auto s = shift_thermal(times[i], pm)) formula = pm.omega + *s;
    if (auto g = generator(maps, i, sc.max_condition)) {
      const JcForm f = jc_coefficients(minimal_dissipation_split(*g, times[i]));
      table.add_row({times[i], f.omega_tilde, f.gamma_z, f.gamma_plus, f.gamma_minus,
                     f.residual, formula, 0.0});
    } else {
      ++singular;
      table.add_row({times[i], {}, {}, {}, {}, {}, formula, 1.0});
    }
  }
  ProtocolOutput out;
  out.summary.push_back("tcl_extract: " + std::to_string(table.rows.size()) +
                        " interior samples, " + std::to_string(singular) + " singular");
  out.tables.push_back(std::move(table));
  return out;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail_schema("scenario: top-level object expected");
  check_keys(doc, "scenario",
             {"schema", "name", "model", "params", "protocol", "settings", "output"});
  Scenario sc;
  sc.schema = int(integer(doc, "scenario", "schema"));
  if (sc.schema != kScenarioSchema)
    fail_schema("scenario: schema " + std::to_string(sc.schema) + " unsupported, expected " +
                std::to_string(kScenarioSchema));
  sc.name = text(doc, "scenario", "name");
  try {
    sc.model = model_from_string(text(doc, "scenario", "model"));
    sc.protocol = protocol_from_string(text(doc, "scenario", "protocol"));
  } catch (const std::invalid_argument& e) {
    fail_schema(std::string("scenario: ") + e.what());
  }
  sc.params = parse_params(member(doc, "scenario", "params"));
  parse_settings(member(doc, "scenario", "settings"), sc);
  validate_model_params(sc);

  sc.basename = default_basename(sc.name);
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) fail_schema("output: object expected");
    check_keys(o, "output", {"directory", "basename", "format"});
    if (o.contains("directory")) sc.directory = text(o, "output", "directory");
    if (o.contains("basename")) sc.basename = text(o, "output", "basename");
    if (o.contains("format")) {
      try {
        sc.format = output_format_from_string(text(o, "output", "format"));
      } catch (const std::invalid_argument& e) {
        fail_schema(std::string("output: ") + e.what());
      }
    }
  }
  if (sc.basename.empty()) fail_schema("output: basename must not be empty");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail_schema("cannot open scenario file " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail_schema("scenario file " + file.string() + " is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

RunOutcome run_scenario(const json& doc, const RunOptions& options) {
  json effective = doc;
  if (options.seed_override) {
    if (!effective.contains("settings") || !effective["settings"].is_object())
      fail_schema("scenario: cannot override seed, no settings object");
    effective["settings"]["seed"] = *options.seed_override;
  }
  Scenario sc = parse_scenario(effective);
  if (options.out_dir) sc.directory = *options.out_dir;

  ProtocolOutput result;
  try {
    switch (sc.protocol) {
      case Protocol::shift_profile:
        result = run_shift_profile(sc, options.workers);
        break;
      case Protocol::ramsey_average_sweep:
        result = run_ramsey_average_sweep(sc, options.workers);
        break;
      case Protocol::time_resolved:
        result = run_time_resolved(sc, options.workers);
        break;
      case Protocol::compare_models:
        result = run_compare_models(sc);
        break;
      case Protocol::tcl_extract:
        result = run_tcl_extract(sc, options.workers);
        break;
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError(ScenarioError::Kind::runtime, e.what());
  }

  // the output location is not part of the experiment; keep it out of the
  // embedded copy so results re-run from metadata match byte for byte
  json embedded = effective;
  if (embedded.contains("output") && embedded["output"].is_object()) {
    embedded["output"].erase("directory");
    if (embedded["output"].empty()) embedded.erase("output");
  }
  RunOutcome outcome;
  outcome.files = write_results(sc.directory, sc.basename, result.tables, embedded, sc.format);
  outcome.summary = std::move(result.summary);
  return outcome;
}

RunOutcome run_scenario_file(const std::filesystem::path& file, const RunOptions& options) {
  std::ifstream in(file);
  if (!in) fail_schema("cannot open scenario file " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail_schema("scenario file " + file.string() + " is not valid JSON: " + e.what());
  }
  return run_scenario(doc, options);
}

}  // namespace spinmode
