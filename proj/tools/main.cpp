#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voxevo/errors.hpp"
#include "voxevo/serialize.hpp"
#include "voxevo/sweep.hpp"

namespace {

using voxevo::Json;

// KEY=VALUE with dotted paths into the config document; VALUE is parsed as
// JSON when possible and kept as a raw string otherwise, so
// --set sim.dt=1e-3 and --set aggregation=GM both work.
void apply_set(Json& root, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) {
    throw voxevo::ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
  }
  const std::string key = kv.substr(0, eq);
  const std::string value = kv.substr(eq + 1);
  Json parsed = Json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;

  Json* node = &root;
  std::size_t pos = 0;
  while (true) {
    const auto dot = key.find('.', pos);
    const std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (part.empty()) throw voxevo::ConfigError("--set: empty key segment in '" + key + "'");
    if (dot == std::string::npos) {
      (*node)[part] = std::move(parsed);
      return;
    }
    node = &(*node)[part];
    pos = dot + 1;
  }
}

Json load_document(const std::string& path, const std::vector<std::string>& sets) {
  Json doc = path.empty() ? Json::object() : voxevo::read_json_file(path);
  for (const std::string& kv : sets) apply_set(doc, kv);
  return doc;
}

// Shared schema for simulate/robustness parameter files.
struct SimBundle {
  voxevo::MaterialParams material;
  voxevo::ActuationParams actuation;
  voxevo::SimConfig sim;
};

SimBundle sim_bundle_from_json(const Json& doc) {
  if (!doc.is_object()) throw voxevo::ConfigError("parameter file: expected an object");
  for (const auto& item : doc.items()) {
    if (item.key() != "material" && item.key() != "actuation" && item.key() != "sim") {
      throw voxevo::ConfigError("parameter file: unknown key '" + item.key() + "'");
    }
  }
  SimBundle bundle;
  if (doc.contains("material")) bundle.material = voxevo::material_from_json(doc.at("material"));
  if (doc.contains("actuation")) bundle.actuation = voxevo::actuation_from_json(doc.at("actuation"));
  if (doc.contains("sim")) bundle.sim = voxevo::sim_config_from_json(doc.at("sim"));
  return bundle;
}

struct EvolveArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
  bool resume = false;
  bool deterministic = false;
  std::vector<std::string> sets;
};

int cmd_evolve(const EvolveArgs& args) {
  Json doc = load_document(args.config_path, args.sets);
  voxevo::CoevoConfig cfg;
  if (doc.contains("base")) {
    // Sweep specs double as single-run configs: first configuration, base seed.
    voxevo::SweepSpec spec = voxevo::sweep_spec_from_json(doc);
    cfg = spec.base;
    cfg.aggregation = spec.aggregations.front();
    cfg.n_collaborators = spec.n_values.front();
    cfg.seed = spec.base_seed;
  } else {
    cfg = voxevo::coevo_config_from_json(doc);
  }
  if (args.seed_set) cfg.seed = args.seed;
  if (args.jobs > 0) cfg.jobs = args.jobs;
  voxevo::validate_config(cfg);

  voxevo::RunOptions options;
  options.out_dir = args.out_dir;
  options.resume = args.resume;
  options.deterministic = args.deterministic;
  voxevo::RunState state = voxevo::run_evolution_dir(cfg, options);
  std::cout << "generations=" << state.generation << " simulations=" << state.sim_count
            << " champion_aptitude="
            << (state.champion.valid ? voxevo::format_double(state.champion.aptitude)
                                     : std::string("none"))
            << "\n";
  return 0;
}

struct SweepArgs {
  std::string spec_path;
  std::string out_dir;
  int jobs = 1;
  bool resume = false;
  bool deterministic = false;
  std::vector<std::string> sets;
};

int cmd_sweep(const SweepArgs& args) {
  Json doc = load_document(args.spec_path, args.sets);
  voxevo::SweepSpec spec = voxevo::sweep_spec_from_json(doc);
  voxevo::SweepOptions options;
  options.out_dir = args.out_dir;
  options.jobs = args.jobs;
  options.resume = args.resume;
  options.deterministic = args.deterministic;
  voxevo::SweepResult result = voxevo::run_sweep(spec, options);
  const std::size_t runs =
      spec.aggregations.size() * spec.n_values.size() * static_cast<std::size_t>(spec.trials);
  std::cout << "runs=" << runs << " failures=" << result.failures.size() << " summary="
            << (std::filesystem::path(args.out_dir) / "summary.csv").string() << "\n";
  return result.failures.empty() ? 0 : 2;
}

struct RobustnessArgs {
  std::string morphology_path;
  std::string config_path;
  std::string out_dir;
  int count = 1000;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool deterministic = false;
  std::vector<std::string> sets;
};

int cmd_robustness(const RobustnessArgs& args) {
  const voxevo::VoxelGrid grid =
      voxevo::grid_from_json(voxevo::read_json_file(args.morphology_path));
  const SimBundle bundle = sim_bundle_from_json(load_document(args.config_path, args.sets));
  const voxevo::RobustnessReport report = voxevo::evaluate_robustness(
      grid, bundle.material, bundle.actuation, bundle.sim, args.count, args.seed, args.jobs);

  const std::filesystem::path out(args.out_dir);
  voxevo::atomic_write_file(out / "robustness.csv",
                            voxevo::robustness_to_csv(report.deltas, !args.deterministic));
  voxevo::write_json_file(out / "summary.json", voxevo::robustness_summary_to_json(report));
  std::cout << "scenarios=" << report.scenario_count << " blowups=" << report.blowup_count
            << " median=" << voxevo::format_double(report.median) << "\n";
  return 0;
}

struct DecodeArgs {
  std::string genome_path;
  std::string role = "sam";
  std::string out_path;
  std::string morphology_path;
  std::vector<int> dims{20, 8, 8};
  bool no_enclosure = false;
  bool no_filter = false;
};

int cmd_decode(const DecodeArgs& args) {
  const voxevo::Genome genome = voxevo::genome_from_json(voxevo::read_json_file(args.genome_path));
  if (args.role == "sam") {
    const voxevo::Dims dims{args.dims[0], args.dims[1], args.dims[2]};
    voxevo::VoxelGrid grid = voxevo::decode_morphology(genome, dims);
    if (!args.no_enclosure) grid = voxevo::apply_enclosure(grid);
    if (!args.no_filter) grid = voxevo::connectivity_filter(grid);
    voxevo::write_json_file(args.out_path, voxevo::grid_to_json(grid));
    std::cout << "cells=" << grid.present_count() << "\n";
  } else {
    if (args.morphology_path.empty()) {
      throw voxevo::ConfigError("decode --role controller requires --morphology");
    }
    const voxevo::VoxelGrid grid =
        voxevo::grid_from_json(voxevo::read_json_file(args.morphology_path));
    const voxevo::ControllerMap ctrl = voxevo::decode_controller(genome, grid);
    voxevo::write_json_file(args.out_path, voxevo::controller_to_json(ctrl));
    std::cout << "phases=" << ctrl.phases.size() << "\n";
  }
  return 0;
}

struct SimulateArgs {
  std::string morphology_path;
  std::string controller_path;
  std::string config_path;
  std::string trace_path;
  bool deterministic = false;
  std::vector<std::string> sets;
};

int cmd_simulate(const SimulateArgs& args) {
  const voxevo::VoxelGrid grid =
      voxevo::grid_from_json(voxevo::read_json_file(args.morphology_path));
  const voxevo::ControllerMap ctrl =
      voxevo::controller_from_json(voxevo::read_json_file(args.controller_path));
  const SimBundle bundle = sim_bundle_from_json(load_document(args.config_path, args.sets));
  const voxevo::Trace trace =
      voxevo::simulate(grid, ctrl, bundle.material, bundle.actuation, bundle.sim);
  if (!args.trace_path.empty()) {
    voxevo::atomic_write_file(args.trace_path, voxevo::trace_to_csv(trace, !args.deterministic));
  }
  std::cout << voxevo::format_double(voxevo::displacement(trace, bundle.sim.displacement_mode))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-evolution of voxel soft-robot morphologies and actuation controllers"};
  app.require_subcommand(1);

  EvolveArgs evolve_args;
  CLI::App* evolve = app.add_subcommand("evolve", "Run one co-evolution to completion");
  evolve->add_option("--config", evolve_args.config_path, "Run config JSON (defaults apply if omitted)")
      ->check(CLI::ExistingFile);
  evolve->add_option("--out", evolve_args.out_dir, "Run directory")->required();
  evolve->add_option("--seed", evolve_args.seed, "Override the config seed");
  evolve->add_option("--jobs", evolve_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  evolve->add_flag("--resume", evolve_args.resume, "Continue from out/checkpoint.json if present");
  evolve->add_flag("--deterministic", evolve_args.deterministic, "Suppress timestamp comments");
  evolve->add_option("--set", evolve_args.sets, "Config override KEY=VALUE (dotted paths)");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a configuration sweep");
  sweep->add_option("--spec", sweep_args.spec_path, "Sweep spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_args.out_dir, "Sweep output directory")->required();
  sweep->add_option("--jobs", sweep_args.jobs, "Worker threads per run")->check(CLI::PositiveNumber);
  sweep->add_flag("--resume", sweep_args.resume, "Resume unfinished trials");
  sweep->add_flag("--deterministic", sweep_args.deterministic, "Suppress timestamp comments");
  sweep->add_option("--set", sweep_args.sets, "Spec override KEY=VALUE (dotted paths)");

  RobustnessArgs robustness_args;
  CLI::App* robustness = app.add_subcommand("robustness", "Random-phase robustness battery");
  robustness->add_option("--morphology", robustness_args.morphology_path, "Morphology JSON")
      ->required()
      ->check(CLI::ExistingFile);
  robustness->add_option("--out", robustness_args.out_dir, "Output directory")->required();
  robustness->add_option("--count", robustness_args.count, "Scenario count")
      ->check(CLI::PositiveNumber);
  robustness->add_option("--seed", robustness_args.seed, "Scenario seed");
  robustness->add_option("--jobs", robustness_args.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  robustness->add_flag("--deterministic", robustness_args.deterministic,
                       "Suppress timestamp comments");
  robustness->add_option("--config", robustness_args.config_path,
                         "Parameter JSON with material/actuation/sim sections")
      ->check(CLI::ExistingFile);
  robustness->add_option("--set", robustness_args.sets, "Parameter override KEY=VALUE");

  DecodeArgs decode_args;
  CLI::App* decode = app.add_subcommand("decode", "Decode a genome to a morphology or phase map");
  decode->add_option("--genome", decode_args.genome_path, "Genome JSON")
      ->required()
      ->check(CLI::ExistingFile);
  decode->add_option("--role", decode_args.role, "sam (morphology network) or controller")
      ->check(CLI::IsMember({"sam", "controller"}));
  decode->add_option("--out", decode_args.out_path, "Output JSON path")->required();
  decode->add_option("--morphology", decode_args.morphology_path,
                     "Morphology JSON (required for --role controller)")
      ->check(CLI::ExistingFile);
  decode->add_option("--dims", decode_args.dims, "Canvas dims for --role sam")->expected(3);
  decode->add_flag("--no-enclosure", decode_args.no_enclosure, "Skip the boundary shell");
  decode->add_flag("--no-filter", decode_args.no_filter, "Skip the connectivity filter");

  SimulateArgs simulate_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate one morphology/controller pair");
  simulate->add_option("--morphology", simulate_args.morphology_path, "Morphology JSON")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--controller", simulate_args.controller_path, "Phase-map JSON")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--config", simulate_args.config_path,
                       "Parameter JSON with material/actuation/sim sections")
      ->check(CLI::ExistingFile);
  simulate->add_option("--trace", simulate_args.trace_path, "Write the centroid trace CSV here");
  simulate->add_flag("--deterministic", simulate_args.deterministic,
                     "Suppress timestamp comments");
  simulate->add_option("--set", simulate_args.sets, "Parameter override KEY=VALUE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors are exit 1; --help/--version exit 0
  }

  evolve_args.seed_set = evolve->count("--seed") > 0;

  try {
    if (*evolve) return cmd_evolve(evolve_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*robustness) return cmd_robustness(robustness_args);
    if (*decode) return cmd_decode(decode_args);
    if (*simulate) return cmd_simulate(simulate_args);
  } catch (const voxevo::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
