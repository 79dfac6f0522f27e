#include "voxevo/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voxevo/errors.hpp"

namespace voxevo {
namespace {

constexpr int kSweepTeamSizes[] = {2, 3, 5, 7, 10};
constexpr std::uint64_t kSeedBlock = 1000003;  // prime stride between configurations

int team_size_rank(int n) {
  for (std::size_t i = 0; i < std::size(kSweepTeamSizes); ++i) {
    if (kSweepTeamSizes[i] == n) return static_cast<int>(i);
  }
  throw std::invalid_argument("unsupported sweep team size " + std::to_string(n));
}

}  // namespace

Json sweep_spec_to_json(const SweepSpec& spec) {
  Json aggs = Json::array();
  for (Aggregation a : spec.aggregations) aggs.push_back(std::string(aggregation_name(a)));
  return Json{{"n_values", spec.n_values},
              {"aggregations", std::move(aggs)},
              {"trials", spec.trials},
              {"base_seed", spec.base_seed},
              {"base", coevo_config_to_json(spec.base)}};
}

SweepSpec sweep_spec_from_json(const Json& j) {
  SweepSpec spec;
  spec.n_values = j.at("n_values").get<std::vector<int>>();
  for (const Json& a : j.at("aggregations")) {
    spec.aggregations.push_back(aggregation_from_name(a.get<std::string>()));
  }
  spec.trials = j.value("trials", spec.trials);
  spec.base_seed = j.value("base_seed", spec.base_seed);
  if (j.contains("base")) spec.base = coevo_config_from_json(j.at("base"));
  validate_sweep_spec(spec);
  return spec;
}

void validate_sweep_spec(const SweepSpec& spec) {
  if (spec.n_values.empty()) throw ConfigError("sweep: n_values must be non-empty");
  if (spec.aggregations.empty()) throw ConfigError("sweep: aggregations must be non-empty");
  if (spec.trials < 1) throw ConfigError("sweep: trials must be >= 1");
  for (int n : spec.n_values) {
    try {
      team_size_rank(n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (n > spec.base.pop_size) {
      throw ConfigError("sweep: team size exceeds population size");
    }
  }
  for (Aggregation agg : spec.aggregations) {
    if (agg == Aggregation::kWm) {
      for (int n : spec.n_values) {
        if (!wm_supports(n)) {
          throw ConfigError("sweep: no weight row for weighted mean with n=" + std::to_string(n));
        }
      }
    }
  }
}

std::uint64_t derive_trial_seed(std::uint64_t base_seed, Aggregation agg, int n, int trial) {
  const int agg_rank = static_cast<int>(agg);
  const int n_rank = team_size_rank(n);
  return base_seed +
         kSeedBlock * (static_cast<std::uint64_t>(agg_rank) * std::size(kSweepTeamSizes) +
                       static_cast<std::uint64_t>(n_rank)) +
         static_cast<std::uint64_t>(trial);
}

std::string config_label(Aggregation agg, int n) {
  return std::string(aggregation_name(agg)) + "_n" + std::to_string(n);
}

RunState run_evolution_dir(const CoevoConfig& cfg, const RunOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);
  const fs::path checkpoint_path = options.out_dir / "checkpoint.json";
  const fs::path gen_log_path = options.out_dir / "gen_log.csv";

  RunState state;
  bool resumed = false;
  if (options.resume && fs::exists(checkpoint_path)) {
    try {
      state = run_state_from_json(read_json_file(checkpoint_path));
    } catch (const CorruptCheckpoint&) {
      throw;
    } catch (const std::exception& e) {
      throw CorruptCheckpoint(checkpoint_path.string() + ": " + e.what());
    }
    resumed = true;
  } else {
    state = init_run(cfg);
    write_json_file(options.out_dir / "config.json", coevo_config_to_json(cfg));
  }

  if (resumed && state.generation >= state.cfg.generations) {
    return state;  // finished run: resuming is a no-op
  }

  const bool timestamps = !options.deterministic;
  const auto write_progress = [&](const RunState& s) {
    write_json_file(checkpoint_path, run_state_to_json(s));
    atomic_write_file(gen_log_path, gen_log_to_csv(s.log, timestamps));
  };

  coevolve(state, write_progress);
  if (state.log.empty()) write_progress(state);  // zero-generation runs still leave outputs

  if (state.champion.valid) {
    write_json_file(options.out_dir / "champion_sam.json", genome_to_json(state.champion.sam));
    write_json_file(options.out_dir / "champion_ctrl.json", genome_to_json(state.champion.ctrl));
  }
  return state;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  validate_sweep_spec(spec);
  validate_config(spec.base);
  namespace fs = std::filesystem;
  fs::create_directories(options.out_dir);

  SweepResult result;
  std::string summary;
  if (!options.deterministic) summary += timestamp_line();
  summary += "configuration,generation,mean_best,ci95,trials_used\n";

  for (Aggregation agg : spec.aggregations) {
    for (int n : spec.n_values) {
      const std::string label = config_label(agg, n);
      std::vector<std::vector<double>> best_by_trial;  // best aptitude per generation
      for (int trial = 0; trial < spec.trials; ++trial) {
        CoevoConfig cfg = spec.base;
        cfg.aggregation = agg;
        cfg.n_collaborators = n;
        cfg.seed = derive_trial_seed(spec.base_seed, agg, n, trial);
        cfg.jobs = options.jobs;
        RunOptions run_options;
        run_options.out_dir = options.out_dir / label / ("trial_" + std::to_string(trial));
        run_options.resume = options.resume;
        run_options.deterministic = options.deterministic;
        try {
          RunState state = run_evolution_dir(cfg, run_options);
          std::vector<double> best;
          best.reserve(state.log.size());
          for (const GenLogRow& row : state.log) best.push_back(row.best_aptitude);
          best_by_trial.push_back(std::move(best));
        } catch (const std::exception& e) {
          result.failures.push_back(label + "/trial_" + std::to_string(trial) + ": " + e.what());
        }
      }

      std::size_t generations = 0;
      for (const auto& best : best_by_trial) generations = std::max(generations, best.size());
      for (std::size_t g = 0; g < generations; ++g) {
        std::vector<double> values;
        for (const auto& best : best_by_trial) {
          if (g < best.size()) values.push_back(best[g]);
        }
        const double m = static_cast<double>(values.size());
        double mean = 0.0;
        for (double v : values) mean += v;
        mean /= m;
        double ci95 = 0.0;
        if (values.size() > 1) {
          double var = 0.0;
          for (double v : values) var += (v - mean) * (v - mean);
          var /= (m - 1.0);
          ci95 = 1.96 * std::sqrt(var / m);
        }
        summary += label + "," + std::to_string(g) + "," + format_double(mean) + "," +
                   format_double(ci95) + "," + std::to_string(values.size()) + "\n";
      }
    }
  }

  atomic_write_file(options.out_dir / "summary.csv", summary);
  if (!result.failures.empty()) {
    std::string log;
    for (const std::string& line : result.failures) log += line + "\n";
    atomic_write_file(options.out_dir / "failures.log", log);
  }
  return result;
}

}  // namespace voxevo
