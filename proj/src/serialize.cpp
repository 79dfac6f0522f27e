#include "voxevo/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "voxevo/errors.hpp"

namespace voxevo {
namespace {

void require_known_keys(const Json& j, const char* what,
                        std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(what) + ": expected an object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(std::string(what) + ": unknown key '" + item.key() + "'");
    }
  }
}

}  // namespace

std::string timestamp_line() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ\n", &tm);
  return buf;
}

// --- genomes -----------------------------------------------------------------

Json genome_to_json(const Genome& g) {
  Json nodes = Json::array();
  for (const NodeGene& n : g.nodes) {
    nodes.push_back({{"id", n.id},
                     {"role", std::string(node_role_name(n.role))},
                     {"activation", std::string(activation_name(n.activation))},
                     {"bias", n.bias}});
  }
  Json conns = Json::array();
  for (const ConnectionGene& c : g.connections) {
    conns.push_back({{"innovation", c.innovation},
                     {"from", c.from},
                     {"to", c.to},
                     {"weight", c.weight},
                     {"enabled", c.enabled}});
  }
  return Json{{"num_inputs", g.num_inputs},
              {"num_outputs", g.num_outputs},
              {"nodes", std::move(nodes)},
              {"connections", std::move(conns)}};
}

Genome genome_from_json(const Json& j) {
  Genome g;
  g.num_inputs = j.at("num_inputs").get<int>();
  g.num_outputs = j.at("num_outputs").get<int>();
  for (const Json& n : j.at("nodes")) {
    g.nodes.push_back({n.at("id").get<int>(),
                       node_role_from_name(n.at("role").get<std::string>()),
                       activation_from_name(n.at("activation").get<std::string>()),
                       n.at("bias").get<double>()});
  }
  for (const Json& c : j.at("connections")) {
    g.connections.push_back({c.at("innovation").get<int>(), c.at("from").get<int>(),
                             c.at("to").get<int>(), c.at("weight").get<double>(),
                             c.at("enabled").get<bool>()});
  }
  return g;
}

// --- voxel grids ---------------------------------------------------------------

Json grid_to_json(const VoxelGrid& grid) {
  Json layers = Json::array();
  for (int z = 0; z < grid.dims.nz; ++z) {
    Json layer = Json::array();
    for (int y = 0; y < grid.dims.ny; ++y) {
      std::string row(static_cast<std::size_t>(grid.dims.nx), '.');
      for (int x = 0; x < grid.dims.nx; ++x) {
        switch (grid.at({x, y, z})) {
          case Cell::kEmpty: break;
          case Cell::kPassive: row[static_cast<std::size_t>(x)] = 'P'; break;
          case Cell::kContractile: row[static_cast<std::size_t>(x)] = 'C'; break;
        }
      }
      layer.push_back(std::move(row));
    }
    layers.push_back(std::move(layer));
  }
  return Json{{"dims", {grid.dims.nx, grid.dims.ny, grid.dims.nz}}, {"layers", std::move(layers)}};
}

VoxelGrid grid_from_json(const Json& j) {
  const Json& d = j.at("dims");
  VoxelGrid grid(Dims{d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>()});
  const Json& layers = j.at("layers");
  if (static_cast<int>(layers.size()) != grid.dims.nz) {
    throw ConfigError("grid: layer count does not match dims");
  }
  for (int z = 0; z < grid.dims.nz; ++z) {
    const Json& layer = layers.at(static_cast<std::size_t>(z));
    if (static_cast<int>(layer.size()) != grid.dims.ny) {
      throw ConfigError("grid: row count does not match dims");
    }
    for (int y = 0; y < grid.dims.ny; ++y) {
      const std::string row = layer.at(static_cast<std::size_t>(y)).get<std::string>();
      if (static_cast<int>(row.size()) != grid.dims.nx) {
        throw ConfigError("grid: row length does not match dims");
      }
      for (int x = 0; x < grid.dims.nx; ++x) {
        switch (row[static_cast<std::size_t>(x)]) {
          case '.': break;
          case 'P': grid.set({x, y, z}, Cell::kPassive); break;
          case 'C': grid.set({x, y, z}, Cell::kContractile); break;
          default: throw ConfigError("grid: unexpected cell character");
        }
      }
    }
  }
  return grid;
}

// --- controllers ---------------------------------------------------------------

Json controller_to_json(const ControllerMap& ctrl) {
  Json j = Json::object();
  for (const auto& [coord, phase] : ctrl.phases) {
    j[std::to_string(coord.x) + "," + std::to_string(coord.y) + "," + std::to_string(coord.z)] =
        phase;
  }
  return j;
}

ControllerMap controller_from_json(const Json& j) {
  ControllerMap ctrl;
  for (const auto& item : j.items()) {
    Coord c{};
    if (std::sscanf(item.key().c_str(), "%d,%d,%d", &c.x, &c.y, &c.z) != 3) {
      throw ConfigError("controller: bad coordinate key '" + item.key() + "'");
    }
    ctrl.phases[c] = item.value().get<double>();
  }
  return ctrl;
}

// --- configs ---------------------------------------------------------------------

Json evolution_config_to_json(const EvolutionConfig& cfg) {
  return Json{{"population_size", cfg.population_size},
              {"compat_threshold", cfg.compat_threshold},
              {"compat_disjoint_coeff", cfg.compat_disjoint_coeff},
              {"compat_weight_coeff", cfg.compat_weight_coeff},
              {"max_stagnation", cfg.max_stagnation},
              {"survival_threshold", cfg.survival_threshold},
              {"elitism", cfg.elitism},
              {"crossover_rate", cfg.crossover_rate},
              {"add_node_rate", cfg.add_node_rate},
              {"del_node_rate", cfg.del_node_rate},
              {"add_conn_rate", cfg.add_conn_rate},
              {"del_conn_rate", cfg.del_conn_rate},
              {"toggle_conn_rate", cfg.toggle_conn_rate},
              {"activation_mutate_rate", cfg.activation_mutate_rate},
              {"weight_mutate_rate", cfg.weight_mutate_rate},
              {"weight_perturb_sigma", cfg.weight_perturb_sigma},
              {"disabled_inherit_prob", cfg.disabled_inherit_prob}};
}

EvolutionConfig evolution_config_from_json(const Json& j) {
  require_known_keys(j, "evolution config",
                     {"population_size", "compat_threshold", "compat_disjoint_coeff",
                      "compat_weight_coeff", "max_stagnation", "survival_threshold", "elitism",
                      "crossover_rate", "add_node_rate", "del_node_rate", "add_conn_rate",
                      "del_conn_rate", "toggle_conn_rate", "activation_mutate_rate",
                      "weight_mutate_rate", "weight_perturb_sigma", "disabled_inherit_prob"});
  EvolutionConfig cfg;
  cfg.population_size = j.value("population_size", cfg.population_size);
  cfg.compat_threshold = j.value("compat_threshold", cfg.compat_threshold);
  cfg.compat_disjoint_coeff = j.value("compat_disjoint_coeff", cfg.compat_disjoint_coeff);
  cfg.compat_weight_coeff = j.value("compat_weight_coeff", cfg.compat_weight_coeff);
  cfg.max_stagnation = j.value("max_stagnation", cfg.max_stagnation);
  cfg.survival_threshold = j.value("survival_threshold", cfg.survival_threshold);
  cfg.elitism = j.value("elitism", cfg.elitism);
  cfg.crossover_rate = j.value("crossover_rate", cfg.crossover_rate);
  cfg.add_node_rate = j.value("add_node_rate", cfg.add_node_rate);
  cfg.del_node_rate = j.value("del_node_rate", cfg.del_node_rate);
  cfg.add_conn_rate = j.value("add_conn_rate", cfg.add_conn_rate);
  cfg.del_conn_rate = j.value("del_conn_rate", cfg.del_conn_rate);
  cfg.toggle_conn_rate = j.value("toggle_conn_rate", cfg.toggle_conn_rate);
  cfg.activation_mutate_rate = j.value("activation_mutate_rate", cfg.activation_mutate_rate);
  cfg.weight_mutate_rate = j.value("weight_mutate_rate", cfg.weight_mutate_rate);
  cfg.weight_perturb_sigma = j.value("weight_perturb_sigma", cfg.weight_perturb_sigma);
  cfg.disabled_inherit_prob = j.value("disabled_inherit_prob", cfg.disabled_inherit_prob);
  return cfg;
}

Json material_to_json(const MaterialParams& mat) {
  return Json{{"youngs_modulus", mat.youngs_modulus},
              {"poisson_ratio", mat.poisson_ratio},
              {"static_friction", mat.static_friction},
              {"dynamic_friction", mat.dynamic_friction},
              {"density", mat.density},
              {"voxel_size", mat.voxel_size}};
}

MaterialParams material_from_json(const Json& j) {
  require_known_keys(j, "material", {"youngs_modulus", "poisson_ratio", "static_friction",
                                     "dynamic_friction", "density", "voxel_size"});
  MaterialParams mat;
  mat.youngs_modulus = j.value("youngs_modulus", mat.youngs_modulus);
  mat.poisson_ratio = j.value("poisson_ratio", mat.poisson_ratio);
  mat.static_friction = j.value("static_friction", mat.static_friction);
  mat.dynamic_friction = j.value("dynamic_friction", mat.dynamic_friction);
  mat.density = j.value("density", mat.density);
  mat.voxel_size = j.value("voxel_size", mat.voxel_size);
  return mat;
}

Json actuation_to_json(const ActuationParams& act) {
  return Json{{"volumetric_amplitude", act.volumetric_amplitude}, {"frequency", act.frequency}};
}

ActuationParams actuation_from_json(const Json& j) {
  require_known_keys(j, "actuation", {"volumetric_amplitude", "frequency"});
  ActuationParams act;
  act.volumetric_amplitude = j.value("volumetric_amplitude", act.volumetric_amplitude);
  act.frequency = j.value("frequency", act.frequency);
  return act;
}

Json sim_config_to_json(const SimConfig& cfg) {
  return Json{{"dt", cfg.dt},
              {"duration", cfg.duration},
              {"damping", cfg.damping},
              {"gravity", {cfg.gravity.x(), cfg.gravity.y(), cfg.gravity.z()}},
              {"record_every", cfg.record_every},
              {"displacement_mode", cfg.displacement_mode == DisplacementMode::kMax ? "max" : "final"}};
}

SimConfig sim_config_from_json(const Json& j) {
  require_known_keys(
      j, "sim config", {"dt", "duration", "damping", "gravity", "record_every", "displacement_mode"});
  SimConfig cfg;
  cfg.dt = j.value("dt", cfg.dt);
  cfg.duration = j.value("duration", cfg.duration);
  cfg.damping = j.value("damping", cfg.damping);
  if (j.contains("gravity")) {
    const Json& g = j.at("gravity");
    if (!g.is_array() || g.size() != 3) {
      throw ConfigError("sim config: gravity must be a 3-element array");
    }
    cfg.gravity = {g.at(0).get<double>(), g.at(1).get<double>(), g.at(2).get<double>()};
  }
  cfg.record_every = j.value("record_every", cfg.record_every);
  if (j.contains("displacement_mode")) {
    const std::string mode = j.at("displacement_mode").get<std::string>();
    if (mode == "final") {
      cfg.displacement_mode = DisplacementMode::kFinal;
    } else if (mode == "max") {
      cfg.displacement_mode = DisplacementMode::kMax;
    } else {
      throw ConfigError("sim config: displacement_mode must be 'final' or 'max'");
    }
  }
  return cfg;
}

Json coevo_config_to_json(const CoevoConfig& cfg) {
  return Json{{"pop_size", cfg.pop_size},
              {"generations", cfg.generations},
              {"n_collaborators", cfg.n_collaborators},
              {"aggregation", std::string(aggregation_name(cfg.aggregation))},
              {"canvas", {cfg.canvas.nx, cfg.canvas.ny, cfg.canvas.nz}},
              {"enclosure", cfg.enclosure},
              {"seed", cfg.seed},
              {"jobs", cfg.jobs},
              {"sam_evo", evolution_config_to_json(cfg.sam_evo)},
              {"ctrl_evo", evolution_config_to_json(cfg.ctrl_evo)},
              {"material", material_to_json(cfg.material)},
              {"actuation", actuation_to_json(cfg.actuation)},
              {"sim", sim_config_to_json(cfg.sim)}};
}

CoevoConfig coevo_config_from_json(const Json& j) {
  require_known_keys(j, "run config",
                     {"pop_size", "generations", "n_collaborators", "aggregation", "canvas",
                      "enclosure", "seed", "jobs", "sam_evo", "ctrl_evo", "material", "actuation",
                      "sim"});
  CoevoConfig cfg;
  cfg.pop_size = j.value("pop_size", cfg.pop_size);
  cfg.generations = j.value("generations", cfg.generations);
  cfg.n_collaborators = j.value("n_collaborators", cfg.n_collaborators);
  if (j.contains("aggregation")) {
    cfg.aggregation = aggregation_from_name(j.at("aggregation").get<std::string>());
  }
  if (j.contains("canvas")) {
    const Json& c = j.at("canvas");
    if (!c.is_array() || c.size() != 3) {
      throw ConfigError("run config: canvas must be a 3-element array");
    }
    cfg.canvas = Dims{c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>()};
  }
  cfg.enclosure = j.value("enclosure", cfg.enclosure);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.jobs = j.value("jobs", cfg.jobs);
  if (j.contains("sam_evo")) cfg.sam_evo = evolution_config_from_json(j.at("sam_evo"));
  if (j.contains("ctrl_evo")) cfg.ctrl_evo = evolution_config_from_json(j.at("ctrl_evo"));
  if (j.contains("material")) cfg.material = material_from_json(j.at("material"));
  if (j.contains("actuation")) cfg.actuation = actuation_from_json(j.at("actuation"));
  if (j.contains("sim")) cfg.sim = sim_config_from_json(j.at("sim"));
  return cfg;
}

// --- checkpoints -------------------------------------------------------------------

namespace {

constexpr const char* kCheckpointFormat = "voxevo-checkpoint-1";

Json wrapped_genome_to_json(const Genome& g) {
  Json j{{"id", g.id}, {"genome", genome_to_json(g)}};
  j["fitness"] = g.fitness ? Json(*g.fitness) : Json(nullptr);
  return j;
}

Genome wrapped_genome_from_json(const Json& j) {
  Genome g = genome_from_json(j.at("genome"));
  g.id = j.at("id").get<int>();
  const Json& fit = j.at("fitness");
  if (!fit.is_null()) g.fitness = fit.get<double>();
  return g;
}

Json population_to_json(const Population& pop) {
  Json genomes = Json::array();
  for (const Genome& g : pop.genomes) genomes.push_back(wrapped_genome_to_json(g));
  Json species = Json::array();
  for (const Species& s : pop.species) {
    Json members = Json::array();
    for (int idx : s.members) members.push_back(pop.genomes.at(static_cast<std::size_t>(idx)).id);
    species.push_back({{"id", s.id},
                       {"representative", wrapped_genome_to_json(s.representative)},
                       {"members", std::move(members)},
                       {"best_fitness_ever", s.best_fitness_ever},
                       {"scored", s.scored},
                       {"last_improved", s.last_improved},
                       {"created", s.created}});
  }
  return Json{{"generation", pop.generation},
              {"next_genome_id", pop.next_genome_id},
              {"next_species_id", pop.next_species_id},
              {"registry",
               {{"next_innovation", pop.registry.next_innovation()},
                {"next_node_id", pop.registry.next_node_id()}}},
              {"genomes", std::move(genomes)},
              {"species", std::move(species)}};
}

Population population_from_json(const Json& j) {
  Population pop;
  pop.generation = j.at("generation").get<int>();
  pop.next_genome_id = j.at("next_genome_id").get<int>();
  pop.next_species_id = j.at("next_species_id").get<int>();
  const Json& reg = j.at("registry");
  pop.registry = InnovationRegistry(reg.at("next_innovation").get<int>(),
                                    reg.at("next_node_id").get<int>());
  std::map<int, int> index_of;
  for (const Json& g : j.at("genomes")) {
    pop.genomes.push_back(wrapped_genome_from_json(g));
    index_of[pop.genomes.back().id] = static_cast<int>(pop.genomes.size()) - 1;
  }
  for (const Json& s : j.at("species")) {
    Species sp;
    sp.id = s.at("id").get<int>();
    sp.representative = wrapped_genome_from_json(s.at("representative"));
    for (const Json& m : s.at("members")) {
      auto it = index_of.find(m.get<int>());
      if (it == index_of.end()) throw CorruptCheckpoint("species member references missing genome");
      sp.members.push_back(it->second);
    }
    sp.best_fitness_ever = s.at("best_fitness_ever").get<double>();
    sp.scored = s.at("scored").get<bool>();
    sp.last_improved = s.at("last_improved").get<int>();
    sp.created = s.at("created").get<int>();
    pop.species.push_back(std::move(sp));
  }
  return pop;
}

}  // namespace

Json run_state_to_json(const RunState& state) {
  Json top_sams = Json::array();
  for (const Genome& g : state.top_sams) top_sams.push_back(wrapped_genome_to_json(g));
  Json top_ctrls = Json::array();
  for (const Genome& g : state.top_ctrls) top_ctrls.push_back(wrapped_genome_to_json(g));
  Json log = Json::array();
  for (const GenLogRow& row : state.log) {
    log.push_back({{"generation", row.generation},
                   {"evolving", row.evolving},
                   {"best_aptitude", row.best_aptitude},
                   {"mean_aptitude", row.mean_aptitude},
                   {"species_count_sam", row.species_count_sam},
                   {"species_count_ctrl", row.species_count_ctrl}});
  }
  Json champion(nullptr);
  if (state.champion.valid) {
    champion = Json{{"sam", wrapped_genome_to_json(state.champion.sam)},
                    {"ctrl", wrapped_genome_to_json(state.champion.ctrl)},
                    {"aptitude", state.champion.aptitude},
                    {"generation", state.champion.generation}};
  }
  return Json{{"format", kCheckpointFormat},
              {"config", coevo_config_to_json(state.cfg)},
              {"sams", population_to_json(state.sams)},
              {"ctrls", population_to_json(state.ctrls)},
              {"top_sams", std::move(top_sams)},
              {"top_ctrls", std::move(top_ctrls)},
              {"champion", std::move(champion)},
              {"log", std::move(log)},
              {"champion_history", state.champion_history},
              {"rng", state.rng.save_state()},
              {"generation", state.generation},
              {"sim_count", state.sim_count}};
}

RunState run_state_from_json(const Json& j) {
  try {
    if (!j.is_object() || j.value("format", std::string()) != kCheckpointFormat) {
      throw CorruptCheckpoint("checkpoint: unrecognized format");
    }
    RunState state;
    state.cfg = coevo_config_from_json(j.at("config"));
    state.sams = population_from_json(j.at("sams"));
    state.ctrls = population_from_json(j.at("ctrls"));
    for (const Json& g : j.at("top_sams")) state.top_sams.push_back(wrapped_genome_from_json(g));
    for (const Json& g : j.at("top_ctrls")) state.top_ctrls.push_back(wrapped_genome_from_json(g));
    const Json& champ = j.at("champion");
    if (!champ.is_null()) {
      state.champion.valid = true;
      state.champion.sam = wrapped_genome_from_json(champ.at("sam"));
      state.champion.ctrl = wrapped_genome_from_json(champ.at("ctrl"));
      state.champion.aptitude = champ.at("aptitude").get<double>();
      state.champion.generation = champ.at("generation").get<int>();
    }
    for (const Json& row : j.at("log")) {
      state.log.push_back({row.at("generation").get<int>(),
                           row.at("evolving").get<std::string>(),
                           row.at("best_aptitude").get<double>(),
                           row.at("mean_aptitude").get<double>(),
                           row.at("species_count_sam").get<int>(),
                           row.at("species_count_ctrl").get<int>()});
    }
    state.champion_history = j.at("champion_history").get<std::vector<double>>();
    state.rng.load_state(j.at("rng").get<std::string>());
    state.generation = j.at("generation").get<int>();
    state.sim_count = j.at("sim_count").get<std::uint64_t>();
    return state;
  } catch (const CorruptCheckpoint&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptCheckpoint(std::string("checkpoint: ") + e.what());
  }
}

// --- CSV -----------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) {
    throw std::runtime_error("bad numeric field '" + s + "'");
  }
  return v;
}

std::string gen_log_to_csv(const std::vector<GenLogRow>& rows, bool timestamp_header) {
  std::string out;
  if (timestamp_header) out += timestamp_line();
  out += "generation,evolving_population,best_aptitude,mean_aptitude,species_count_sam,"
         "species_count_ctrl\n";
  for (const GenLogRow& r : rows) {
    out += std::to_string(r.generation) + "," + r.evolving + "," + format_double(r.best_aptitude) +
           "," + format_double(r.mean_aptitude) + "," + std::to_string(r.species_count_sam) + "," +
           std::to_string(r.species_count_ctrl) + "\n";
  }
  return out;
}

std::string trace_to_csv(const Trace& trace, bool timestamp_header) {
  std::string out;
  if (timestamp_header) out += timestamp_line();
  out += "t,x,y,z\n";
  for (const TraceSample& s : trace) {
    out += format_double(s.t) + "," + format_double(s.centroid.x()) + "," +
           format_double(s.centroid.y()) + "," + format_double(s.centroid.z()) + "\n";
  }
  return out;
}

Trace trace_from_csv(const std::string& text) {
  Trace trace;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0) continue;
    TraceSample s;
    std::istringstream fields(line);
    std::string field;
    double* slots[4] = {&s.t, &s.centroid.x(), &s.centroid.y(), &s.centroid.z()};
    for (double* slot : slots) {
      if (!std::getline(fields, field, ',')) throw std::runtime_error("trace csv: short row");
      *slot = parse_double(field);
    }
    trace.push_back(s);
  }
  return trace;
}

std::string robustness_to_csv(const std::vector<double>& deltas, bool timestamp_header) {
  std::string out;
  if (timestamp_header) out += timestamp_line();
  out += "scenario_id,delta_yz\n";
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    out += std::to_string(i) + "," + format_double(deltas[i]) + "\n";
  }
  return out;
}

Json robustness_summary_to_json(const RobustnessReport& report) {
  return Json{{"scenario_count", report.scenario_count},
              {"blowup_count", report.blowup_count},
              {"min", report.min},
              {"q1", report.q1},
              {"median", report.median},
              {"q3", report.q3},
              {"max", report.max}};
}

// --- files ---------------------------------------------------------------------------

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path parent = path.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  atomic_write_file(path, j.dump(2) + "\n");
}

Json read_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace voxevo
