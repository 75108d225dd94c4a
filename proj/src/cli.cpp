#include "ataheat/cli.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ataheat/cluster.hpp"
#include "ataheat/errors.hpp"
#include "ataheat/experiments.hpp"
#include "ataheat/io.hpp"
#include "ataheat/oracle.hpp"
#include "ataheat/resources.hpp"
#include "ataheat/rng.hpp"

namespace ataheat::cli {

namespace {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
  }
}

template <typename T>
T get_required(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing required key \"" + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& obj, const std::string& where, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

struct Context {
  json config;
  std::filesystem::path out_dir;
  std::uint64_t seed = 1;
  bool oracle = true;
  std::vector<std::string> written;
};

std::ofstream open_output(Context& ctx, const std::string& name) {
  const std::filesystem::path path = ctx.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  ctx.written.push_back(name);
  return out;
}

std::string fmt(double v) { return io::format_double(v); }

void write_meta(Context& ctx, const std::string& command, const json& summary = json::object()) {
  const auto now = std::chrono::system_clock::now();
  json meta{{"command", command},
            {"schema_version", kSchemaVersion},
            {"version", kVersion},
            {"seed_used", ctx.seed},
            {"oracle", ctx.oracle},
            {"rng", Rng::kAlgorithm},
            {"config", ctx.config},
            {"outputs", ctx.written},
            {"generated_at_unix_ms",
             std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count()}};
  if (!summary.empty()) meta["summary"] = summary;

  const std::filesystem::path path = ctx.out_dir / (command + ".meta.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << meta.dump(2) << '\n';
}

// --- spectrum ---------------------------------------------------------------

void cmd_spectrum(Context& ctx) {
  const json& section = ctx.config.at("spectrum");
  require_keys(section, "spectrum", {"n", "c"});
  const int n = get_required<int>(section, "spectrum", "n");
  const double c = get_required<double>(section, "spectrum", "c");

  const GridSpec grid = GridSpec::dimensionless(n, c);
  const Spectrum exact = exact_spectrum(grid);
  const Spectrum approx = approx_spectrum(grid);

  std::ofstream out = open_output(ctx, "spectrum.csv");
  out << "k,exact,approx\n";
  for (std::size_t k = 0; k < exact.size(); ++k) {
    out << k << ',' << fmt(exact[k]) << ',' << fmt(approx[k]) << '\n';
  }
  write_meta(ctx, "spectrum");
}

// --- step -------------------------------------------------------------------

void cmd_step(Context& ctx) {
  const json& section = ctx.config.at("step");
  require_keys(section, "step",
               {"n", "c", "smoothness", "target_fidelity", "max_depth", "expansion",
                "evolution_steps"});
  const int n = get_required<int>(section, "step", "n");
  const double c = get_required<double>(section, "step", "c");
  const int smoothness = get_or<int>(section, "step", "smoothness", 20);
  const double target = get_or<double>(section, "step", "target_fidelity", 0.99);
  const std::size_t max_depth =
      get_or<std::size_t>(section, "step", "max_depth", std::min<std::size_t>(128, std::size_t{1} << n));
  const std::string expansion_name = get_or<std::string>(section, "step", "expansion", "latest-node");
  const std::size_t evolution_steps = get_or<std::size_t>(section, "step", "evolution_steps", 0);

  Expansion expansion;
  if (expansion_name == "latest-node") {
    expansion = Expansion::latest_node;
  } else if (expansion_name == "full-frontier") {
    expansion = Expansion::full_frontier;
  } else {
    throw ConfigError("step.expansion: expected \"latest-node\" or \"full-frontier\"");
  }

  const SingleStepProblem problem = make_single_step_problem(n, c, smoothness, ctx.seed);

  AtaConfig ata;
  ata.max_depth = max_depth;
  ata.expansion = expansion;

  std::ofstream iters = open_output(ctx, "step_iterations.csv");
  iters << "iteration,mask_added,loss,fidelity\n";

  const Statevector root = fourier(Statevector::from_real(problem.b));
  const AnsatzTree tree = grow_with_observer(
      root, problem.approx, problem.decomposition, ata,
      [&](const AnsatzTree& t) {
        const Statevector x = t.solution();
        const double fid = ctx.oracle ? fidelity(x.amps, problem.oracle_x)
                                      : std::numeric_limits<double>::quiet_NaN();
        iters << t.depth() << ',' << t.masks.back() << ',' << fmt(t.loss()) << ','
              << fmt(fid) << '\n';
        return false;
      });

  io::write_statevector_csv(ctx.out_dir / "step_solution.csv", tree.solution());
  ctx.written.push_back("step_solution.csv");

  json summary{{"depth", tree.depth()},
               {"loss", tree.loss()},
               {"fidelity", ctx.oracle ? fidelity(tree.solution().amps, problem.oracle_x) : 0.0}};
  if (ctx.oracle) {
    const MinDepthResult md = min_depth_for_fidelity(root, problem.approx, problem.decomposition,
                                                     problem.oracle_x, target, ata);
    summary["min_depth"] = md.depth;
    summary["min_depth_fidelity"] = md.fidelity;
    summary["saturated"] = md.saturated;
  }
  if (evolution_steps > 0) {
    const EvolutionDepthResult ed = min_evolution_depth(n, c, smoothness, evolution_steps,
                                                        target, max_depth, ctx.seed, expansion);
    summary["evolution_min_depth"] = ed.depth;
    summary["evolution_final_fidelity"] = ed.final_fidelity;
    summary["evolution_saturated"] = ed.saturated;
  }
  write_meta(ctx, "step", summary);
}

// --- evolve -----------------------------------------------------------------

void cmd_evolve(Context& ctx) {
  const json& section = ctx.config.at("evolve");
  require_keys(section, "evolve",
               {"n", "c", "steps", "max_depth", "d_cut", "preset", "envelope_degree",
                "dcut_sweep", "target_fidelity"});
  const int n = get_required<int>(section, "evolve", "n");
  const double c = get_required<double>(section, "evolve", "c");
  const std::size_t steps = get_required<std::size_t>(section, "evolve", "steps");
  const std::size_t max_depth = get_or<std::size_t>(section, "evolve", "max_depth", 35);
  const std::size_t d_cut = get_or<std::size_t>(section, "evolve", "d_cut", kNoDropout);
  const std::string preset = get_or<std::string>(section, "evolve", "preset", "heater_cooler");
  const int envelope_degree = get_or<int>(section, "evolve", "envelope_degree", 20);
  const double target = get_or<double>(section, "evolve", "target_fidelity", 0.99);
  const std::vector<std::size_t> dcut_sweep =
      get_or<std::vector<std::size_t>>(section, "evolve", "dcut_sweep", {});

  json summary;
  if (preset == "heater_cooler") {
    const HeaterCoolerResult result = run_heater_cooler(n, c, max_depth, steps, target, d_cut);
    io::write_trajectory_csv(ctx.out_dir / "evolve_trajectory.csv", result.trajectory);
    ctx.written.push_back("evolve_trajectory.csv");

    std::ofstream fid = open_output(ctx, "evolve_stationary_fidelity.csv");
    fid << "step,fidelity_vs_stationary\n";
    for (std::size_t i = 0; i < result.stationary_fidelity.size(); ++i) {
      fid << (i + 1) << ',' << fmt(result.stationary_fidelity[i]) << '\n';
    }
    summary = json{{"final_fidelity", result.final_fidelity},
                   {"steps_to_target", result.steps_to_target}};
  } else if (preset == "random_repr") {
    std::vector<std::size_t> cuts = dcut_sweep;
    if (cuts.empty()) {
      if (d_cut == kNoDropout) throw ConfigError("evolve: random_repr needs d_cut or dcut_sweep");
      cuts.push_back(d_cut);
    }
    std::ofstream sweep = open_output(ctx, "evolve_dropout_sweep.csv");
    sweep << "step,d_cut,infidelity\n";
    for (std::size_t cut : cuts) {
      const DropoutRun run = run_dropout_study(n, c, max_depth, cut, steps,
                                               envelope_degree, ctx.seed);
      const std::string name = "evolve_trajectory_dcut" + std::to_string(cut) + ".csv";
      io::write_trajectory_csv(ctx.out_dir / name, run.trajectory);
      ctx.written.push_back(name);
      for (std::size_t i = 0; i < run.infidelity.size(); ++i) {
        sweep << (i + 1) << ',' << cut << ',' << fmt(run.infidelity[i]) << '\n';
      }
      summary["final_infidelity_dcut" + std::to_string(cut)] = run.infidelity.back();
    }
  } else {
    throw ConfigError("evolve.preset: expected \"heater_cooler\" or \"random_repr\"");
  }
  write_meta(ctx, "evolve", summary);
}

// --- cluster ----------------------------------------------------------------

void cmd_cluster(Context& ctx) {
  const json& section = ctx.config.at("cluster");
  require_keys(section, "cluster",
               {"mode", "n", "n_list", "samples", "depth_cap", "c", "threshold", "g_list",
                "steps", "tree_depth", "loss_tol"});
  const std::string mode = get_required<std::string>(section, "cluster", "mode");
  const double c = get_or<double>(section, "cluster", "c", 0.1);
  const double threshold = get_or<double>(section, "cluster", "threshold", 1.0);

  json reports = json::array();
  std::ofstream sweep = open_output(ctx, "cluster_sweep.csv");

  if (mode == "haar") {
    const std::vector<int> n_list =
        get_or<std::vector<int>>(section, "cluster", "n_list", {5, 6, 7, 8, 9});
    const std::size_t samples = get_or<std::size_t>(section, "cluster", "samples", 8);
    const std::size_t depth_cap = get_or<std::size_t>(section, "cluster", "depth_cap", 50);

    sweep << "n,cluster_size\n";
    for (int n : n_list) {
      HaarStudyConfig cfg;
      cfg.n = n;
      cfg.samples = samples;
      cfg.depth_cap = depth_cap;
      cfg.c = c;
      cfg.threshold = threshold;
      cfg.seed = ctx.seed;
      const ClusterReport report = haar_random_study(cfg);
      sweep << n << ',' << report.masks.size() << '\n';
      const std::string occ = "cluster_occurrence_n" + std::to_string(n) + ".csv";
      io::write_occurrence_csv(ctx.out_dir / occ, report);
      ctx.written.push_back(occ);
      json entry = io::to_json(report);
      entry["n"] = n;
      reports.push_back(std::move(entry));
    }
  } else if (mode == "smoothness") {
    const int n = get_required<int>(section, "cluster", "n");
    const std::vector<int> g_list =
        get_or<std::vector<int>>(section, "cluster", "g_list", {5, 10, 20, 40, 80});
    const std::size_t steps = get_or<std::size_t>(section, "cluster", "steps", 30);
    const std::size_t tree_depth = get_or<std::size_t>(section, "cluster", "tree_depth", 30);
    const double loss_tol = get_or<double>(section, "cluster", "loss_tol", 1e-9);

    sweep << "smoothness,cluster_size\n";
    for (int g : g_list) {
      const ClusterReport report =
          evolution_cluster(n, c, g, steps, tree_depth, ctx.seed, threshold, loss_tol);
      sweep << g << ',' << report.masks.size() << '\n';
      const std::string occ = "cluster_occurrence_g" + std::to_string(g) + ".csv";
      io::write_occurrence_csv(ctx.out_dir / occ, report);
      ctx.written.push_back(occ);
      json entry = io::to_json(report);
      entry["smoothness"] = g;
      reports.push_back(std::move(entry));
    }
  } else {
    throw ConfigError("cluster.mode: expected \"haar\" or \"smoothness\"");
  }

  std::ofstream rep = open_output(ctx, "cluster_report.json");
  rep << reports.dump(2) << '\n';
  write_meta(ctx, "cluster");
}

// --- resources ----------------------------------------------------------------

void cmd_resources(Context& ctx) {
  const json& section = ctx.config.at("resources");
  require_keys(section, "resources", {"n_list", "n_steps_list", "depth_list", "p_list"});
  const auto n_list = get_or<std::vector<int>>(section, "resources", "n_list", {4, 8, 12, 16, 20});
  const auto steps_list =
      get_or<std::vector<std::size_t>>(section, "resources", "n_steps_list", {100, 20000});
  const auto depth_list = get_or<std::vector<std::size_t>>(section, "resources", "depth_list", {35});
  const auto p_list = get_or<std::vector<double>>(section, "resources", "p_list", {0.5});

  std::ofstream out = open_output(ctx, "resources_table.csv");
  out << "method,n,n_steps,depth,ancilla,two_qubit_gates,success_probability,expected_runs\n";
  auto write_row = [&](const resources::ResourceEstimate& e) {
    out << (e.method == resources::Method::ata ? "ata" : "hhl") << ',' << e.n << ','
        << e.n_steps << ',' << e.depth_d << ',' << e.ancilla_m << ','
        << fmt(e.two_qubit_gates) << ',' << fmt(e.success_probability) << ','
        << fmt(e.expected_runs) << '\n';
  };
  for (int n : n_list) {
    for (std::size_t steps : steps_list) {
      for (std::size_t d : depth_list) write_row(resources::estimate_ata(n, steps, d));
      for (double p : p_list) write_row(resources::estimate_hhl(n, steps, p));
    }
  }
  write_meta(ctx, "resources");
}

}  // namespace

int run_command(const Options& options) {
  try {
    std::ifstream in(options.config_path);
    if (!in) {
      std::cerr << "error: cannot read config " << options.config_path << '\n';
      return 1;
    }
    json config;
    try {
      in >> config;
    } catch (const json::exception& e) {
      std::cerr << "error: config parse failure: " << e.what() << '\n';
      return 1;
    }

    require_keys(config, "config",
                 {"schema_version", "seed", "spectrum", "step", "evolve", "cluster", "resources"});
    const int schema = get_required<int>(config, "config", "schema_version");
    if (schema != kSchemaVersion) {
      throw ConfigError("config.schema_version: expected " + std::to_string(kSchemaVersion));
    }
    if (!config.contains(options.verb)) {
      throw ConfigError("config: missing the \"" + options.verb + "\" section");
    }

    Context ctx;
    ctx.config = config;
    ctx.out_dir = options.out_dir;
    ctx.seed = options.seed.value_or(get_or<std::uint64_t>(config, "config", "seed", 1));
    ctx.oracle = options.oracle.value_or(true);
    std::filesystem::create_directories(ctx.out_dir);

    if (options.verb == "spectrum") {
      cmd_spectrum(ctx);
    } else if (options.verb == "step") {
      cmd_step(ctx);
    } else if (options.verb == "evolve") {
      cmd_evolve(ctx);
    } else if (options.verb == "cluster") {
      cmd_cluster(ctx);
    } else if (options.verb == "resources") {
      cmd_resources(ctx);
    } else {
      std::cerr << "error: unknown command \"" << options.verb << "\"\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ataheat::cli
