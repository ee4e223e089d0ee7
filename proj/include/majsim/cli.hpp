#pragma once

#include "majsim/report.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <thread>

namespace majsim {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;  // gates | dj | noise | sweep
  std::string gate = "H";
  double tau = std::numbers::pi / 8;
  double ite_time = 20.0;
  std::vector<NoiseSpec> noise;
  std::string sweep_parameter;  // tau | ite_time
  std::vector<double> sweep_values;
  std::string output;          // empty = stdout
  std::string format = "json";  // json | csv
  int jobs = 1;
  std::uint64_t seed = 0;
  long shots = 0;
};

// "phase@4", "flip@3,4", optional trailing "@<position>"
inline NoiseSpec parse_noise_spec(const std::string& text) {
  NoiseSpec n;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == '@') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  parts.push_back(cur);
  if (parts.size() < 2 || parts.size() > 3) throw config_error("bad noise spec: " + text);
  if (parts[0] == "phase")
    n.kind = NoiseKind::phase;
  else if (parts[0] == "flip")
    n.kind = NoiseKind::flip;
  else
    throw config_error("unknown noise kind: " + parts[0]);
  std::string sites = parts[1];
  size_t pos = 0;
  try {
    while (pos < sites.size()) {
      size_t used = 0;
      n.sites.push_back(std::stoi(sites.substr(pos), &used));
      pos += used;
      if (pos < sites.size() && sites[pos] == ',') ++pos;
    }
    if (parts.size() == 3) n.position = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw config_error("bad noise spec: " + text);
  }
  return n;
}

inline NoiseSpec noise_from_json(const json& j) {
  NoiseSpec n;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "phase")
    n.kind = NoiseKind::phase;
  else if (kind == "flip")
    n.kind = NoiseKind::flip;
  else
    throw config_error("unknown noise kind: " + kind);
  for (const auto& s : j.at("sites")) n.sites.push_back(s.get<int>());
  if (j.contains("position")) n.position = j.at("position").get<int>();
  return n;
}

inline void apply_config_json(ExperimentConfig& cfg, const json& j) {
  if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
  if (j.contains("gate")) cfg.gate = j.at("gate").get<std::string>();
  if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
  if (j.contains("ite_time")) cfg.ite_time = j.at("ite_time").get<double>();
  if (j.contains("noise"))
    for (const auto& n : j.at("noise"))
      cfg.noise.push_back(n.is_string() ? parse_noise_spec(n.get<std::string>())
                                        : noise_from_json(n));
  if (j.contains("sweep")) {
    cfg.sweep_parameter = j.at("sweep").at("parameter").get<std::string>();
    for (const auto& v : j.at("sweep").at("values")) cfg.sweep_values.push_back(v.get<double>());
  }
  if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("shots")) cfg.shots = j.at("shots").get<long>();
}

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.experiment != "gates" && cfg.experiment != "dj" && cfg.experiment != "noise" &&
      cfg.experiment != "sweep")
    throw config_error("experiment must be one of gates, dj, noise, sweep");
  if (!std::isfinite(cfg.tau)) throw config_error("tau must be finite");
  if (!(cfg.ite_time > 0.0)) throw config_error("ite_time must be positive");
  if (cfg.format != "json" && cfg.format != "csv") throw config_error("format must be json or csv");
  if (cfg.jobs < 1) throw config_error("jobs must be at least 1");
  if (cfg.experiment == "noise") {
    if (cfg.noise.empty()) throw config_error("noise experiment needs at least one --noise spec");
    for (const auto& n : cfg.noise) {
      try {
        validate_noise(n, chain_sites);
      } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
      }
    }
  }
  if (cfg.experiment == "sweep") {
    if (cfg.sweep_parameter != "tau" && cfg.sweep_parameter != "ite_time")
      throw config_error("sweep parameter must be tau or ite_time");
    if (cfg.sweep_values.empty()) throw config_error("sweep range is empty");
    if (cfg.sweep_parameter == "ite_time")
      for (double v : cfg.sweep_values)
        if (!(v > 0.0)) throw config_error("ite_time sweep values must be positive");
  }
}

inline json json_config(const ExperimentConfig& cfg) {
  json noise = json::array();
  for (const auto& n : cfg.noise) {
    json sites = json::array();
    for (int s : n.sites) sites.push_back(s);
    noise.push_back(json{{"kind", n.kind == NoiseKind::phase ? "phase" : "flip"},
                         {"sites", std::move(sites)},
                         {"position", n.position}});
  }
  json j{{"experiment", cfg.experiment}, {"gate", cfg.gate},       {"tau", cfg.tau},
         {"ite_time", cfg.ite_time},     {"noise", std::move(noise)}, {"format", cfg.format},
         {"jobs", cfg.jobs},             {"seed", cfg.seed},       {"shots", cfg.shots}};
  if (!cfg.sweep_parameter.empty()) {
    json vals = json::array();
    for (double v : cfg.sweep_values) vals.push_back(v);
    j["sweep"] = json{{"parameter", cfg.sweep_parameter}, {"values", std::move(vals)}};
  }
  return j;
}

namespace detail {

inline GateRecipe recipe_for(const ExperimentConfig& cfg) {
  try {
    return recipe_by_name(cfg.gate, cfg.tau, cfg.ite_time);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
}

inline json cmd_gates(const ExperimentConfig& cfg) {
  GateRecipe recipe = recipe_for(cfg);
  LogicalGate g = extract_gate(recipe.schedule);
  TomographyResult tomo =
      simulate_tomography(recipe.schedule, standard_tomography_plan(), {cfg.shots, cfg.seed});
  double fid = process_fidelity(recipe.expected_even_block, g.even_block);
  double cross = process_fidelity(g.matrix4, tomo.gate.matrix4);
  Vec4 plus = Vec4::Zero();
  plus(0) = 1.0 / std::sqrt(2.0);
  plus(3) = 1.0 / std::sqrt(2.0);
  return json{{"gate", recipe.name},
              {"extracted", json_gate(g)},
              {"expected_even_block", json_matrix(recipe.expected_even_block)},
              {"fidelity", fid},
              {"density_on_plus_input", json_density(g.even_block, plus)},
              {"tomography",
               json{{"gate", json_gate(tomo.gate)},
                    {"fidelity_vs_extracted", cross},
                    {"settings", "16 product inputs x 16 two-label Pauli observables"},
                    {"expectations", json_real_matrix(tomo.expectations)}}}};
}

inline json json_dj_result(const DJResult& r) {
  json stages = json::array();
  for (const auto& st : r.trajectory)
    stages.push_back(json{{"label", st.label}, {"state", json_logical_state(st.state)}});
  return json{{"trajectory", std::move(stages)},
              {"verdict", r.ambiguous ? "ambiguous"
                                      : (r.verdict == OracleKind::constant ? "constant" : "balanced")},
              {"overlap_00", r.overlap_00},
              {"overlap_11", r.overlap_11}};
}

inline json cmd_dj(const ExperimentConfig& cfg) {
  DJOptions opt{cfg.ite_time, 0, 0.0};
  return json{{"constant", json_dj_result(run_dj(OracleKind::constant, opt))},
              {"balanced", json_dj_result(run_dj(OracleKind::balanced, opt))}};
}

inline json cmd_noise(const ExperimentConfig& cfg) {
  GateRecipe recipe = recipe_for(cfg);
  json runs = json::array();
  Vec4 plus = Vec4::Zero();
  plus(0) = 1.0 / std::sqrt(2.0);
  plus(3) = 1.0 / std::sqrt(2.0);
  for (const auto& n : cfg.noise) {
    CorruptedGate c = corrupted_gate(recipe, n);
    json sites = json::array();
    for (int s : n.sites) sites.push_back(s);
    json survival = json::array();
    for (double s : c.survival) survival.push_back(s);
    runs.push_back(json{{"kind", n.kind == NoiseKind::phase ? "phase" : "flip"},
                        {"sites", std::move(sites)},
                        {"position", n.position < 0 ? default_noise_position(recipe.schedule)
                                                    : n.position},
                        {"gate", json_gate(c.gate)},
                        {"density_on_plus_input", json_density(c.gate.even_block, plus)},
                        {"fidelity_vs_ideal", c.process_fidelity_vs_ideal},
                        {"survival", std::move(survival)},
                        {"leakage", c.leakage},
                        {"corrupted", c.corrupted}});
  }
  return json{{"gate", recipe.name}, {"runs", std::move(runs)}};
}

inline json cmd_sweep(const ExperimentConfig& cfg) {
  const bool over_tau = cfg.sweep_parameter == "tau";
  const size_t count = cfg.sweep_values.size();
  std::vector<json> rows(count);

  auto run_point = [&](size_t i) {
    double v = cfg.sweep_values[i];
    if (over_tau) {
      GateRecipe r = dynamic_phase(v, cfg.ite_time);
      LogicalGate g = extract_gate(r.schedule);
      double fid = process_fidelity(r.expected_even_block, g.even_block);
      rows[i] = json{{"tau", v},
                     {"even_block", json_matrix(g.even_block)},
                     {"expected_even_block", json_matrix(r.expected_even_block)},
                     {"fidelity", fid},
                     {"error", (g.even_block - r.expected_even_block).norm()}};
    } else {
      GateRecipe ref = recipe_by_name(cfg.gate, cfg.tau, 20.0);
      GateRecipe r = recipe_by_name(cfg.gate, cfg.tau, v);
      LogicalGate g = extract_gate(r.schedule);
      double fid = process_fidelity(ref.expected_even_block, g.even_block);
      rows[i] = json{{"ite_time", v},
                     {"fidelity", fid},
                     {"error", (g.even_block - ref.expected_even_block).norm()},
                     {"exp_minus_2t", std::exp(-2.0 * v)}};
    }
  };

  if (cfg.jobs <= 1) {
    for (size_t i = 0; i < count; ++i) run_point(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) run_point(i);
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(cfg.jobs, static_cast<int>(count)); ++w)
      pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  json points = json::array();
  for (auto& r : rows) points.push_back(std::move(r));
  return json{{"parameter", cfg.sweep_parameter}, {"gate", cfg.gate}, {"points", std::move(points)}};
}

inline std::string csv_escape(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string to_csv(const ExperimentConfig& cfg, const json& results) {
  std::ostringstream os;
  auto num = [](const json& v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return std::string(buf);
  };
  auto amp = [&](const json& a) { return csv_complex(cplx(a[0].get<double>(), a[1].get<double>())); };
  if (cfg.experiment == "dj") {
    os << "oracle,stage,label,a00,a01,a10,a11,residual\n";
    for (const char* oracle : {"constant", "balanced"}) {
      const json& r = results.at(oracle);
      int stage = 0;
      for (const auto& st : r.at("trajectory")) {
        const json& s = st.at("state");
        os << oracle << ',' << ++stage << ',' << csv_escape(st.at("label").get<std::string>());
        for (int k = 0; k < 4; ++k) os << ',' << amp(s.at("amplitudes")[k]);
        os << ',' << num(s.at("residual")) << '\n';
      }
    }
  } else if (cfg.experiment == "sweep") {
    const bool over_tau = cfg.sweep_parameter == "tau";
    os << (over_tau ? "tau,fidelity,error\n" : "ite_time,fidelity,error,exp_minus_2t\n");
    for (const auto& p : results.at("points")) {
      os << num(p.at(over_tau ? "tau" : "ite_time")) << ',' << num(p.at("fidelity")) << ','
         << num(p.at("error"));
      if (!over_tau) os << ',' << num(p.at("exp_minus_2t"));
      os << '\n';
    }
  } else if (cfg.experiment == "noise") {
    os << "kind,sites,position,fidelity_vs_ideal,leakage,corrupted,survival\n";
    for (const auto& r : results.at("runs")) {
      std::string sites;
      for (const auto& s : r.at("sites")) {
        if (!sites.empty()) sites += ';';
        sites += std::to_string(s.get<int>());
      }
      std::string survival;
      for (const auto& s : r.at("survival")) {
        if (!survival.empty()) survival += ';';
        survival += num(s);
      }
      os << r.at("kind").get<std::string>() << ',' << sites << ',' << r.at("position").get<int>()
         << ',' << num(r.at("fidelity_vs_ideal")) << ',' << num(r.at("leakage")) << ','
         << (r.at("corrupted").get<bool>() ? 1 : 0) << ',' << csv_escape(survival) << '\n';
    }
  } else {  // gates
    os << "field,value\n";
    os << "gate," << results.at("gate").get<std::string>() << '\n';
    os << "fidelity," << num(results.at("fidelity")) << '\n';
    os << "leakage," << num(results.at("extracted").at("leakage")) << '\n';
    os << "stripped_phase," << amp(results.at("extracted").at("stripped_phase")) << '\n';
    os << "tomography_fidelity_vs_extracted,"
       << num(results.at("tomography").at("fidelity_vs_extracted")) << '\n';
    const json& m4 = results.at("extracted").at("matrix4");
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        os << "matrix4[" << r << "][" << c << "]," << amp(m4[r][c]) << '\n';
    const json& eb = results.at("extracted").at("even_block");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        os << "even_block[" << r << "][" << c << "]," << amp(eb[r][c]) << '\n';
  }
  return os.str();
}

}  // namespace detail

// Runs the configured experiment and writes the report. Exit codes:
// 0 success, 2 usage/config error, 3 numerical validation failure.
inline int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate_config(cfg);
    json results;
    if (cfg.experiment == "gates") results = detail::cmd_gates(cfg);
    else if (cfg.experiment == "dj") results = detail::cmd_dj(cfg);
    else if (cfg.experiment == "noise") results = detail::cmd_noise(cfg);
    else results = detail::cmd_sweep(cfg);

    std::string payload;
    if (cfg.format == "json") {
      json report{{"artifact", json{{"name", artifact_name}, {"version", artifact_version}}},
                  {"config", json_config(cfg)},
                  {"results", std::move(results)}};
      payload = report.dump(2);
      payload += '\n';
    } else {
      payload = detail::to_csv(cfg, results);
    }

    if (cfg.output.empty()) {
      out << payload;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw config_error("cannot open output file: " + cfg.output);
      f << payload;
    }
    return 0;
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace majsim
