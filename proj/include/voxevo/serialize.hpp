#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "voxevo/coevolve.hpp"
#include "voxevo/decode.hpp"
#include "voxevo/genome.hpp"
#include "voxevo/robustness.hpp"

namespace voxevo {

using Json = nlohmann::json;

// --- genomes ---------------------------------------------------------------
// Schema: num_inputs, num_outputs, nodes[{id, role, activation, bias}],
// connections[{innovation, from, to, weight, enabled}]. Reals keep full
// precision; the round-trip is lossless.
Json genome_to_json(const Genome& g);
Genome genome_from_json(const Json& j);

// --- voxel grids -----------------------------------------------------------
// Schema: dims [nx, ny, nz] plus one layer per z slice; each layer is ny
// strings of nx characters ('.' empty, 'P' passive, 'C' contractile).
Json grid_to_json(const VoxelGrid& grid);
VoxelGrid grid_from_json(const Json& j);

// --- controllers -----------------------------------------------------------
// The document is a flat map "x,y,z" -> phase.
Json controller_to_json(const ControllerMap& ctrl);
ControllerMap controller_from_json(const Json& j);

// --- configs ---------------------------------------------------------------
Json evolution_config_to_json(const EvolutionConfig& cfg);
EvolutionConfig evolution_config_from_json(const Json& j);
Json material_to_json(const MaterialParams& mat);
MaterialParams material_from_json(const Json& j);
Json actuation_to_json(const ActuationParams& act);
ActuationParams actuation_from_json(const Json& j);
Json sim_config_to_json(const SimConfig& cfg);
SimConfig sim_config_from_json(const Json& j);
Json coevo_config_to_json(const CoevoConfig& cfg);
// Missing keys fall back to defaults; unknown keys raise ConfigError.
CoevoConfig coevo_config_from_json(const Json& j);

// --- checkpoints -----------------------------------------------------------
Json run_state_to_json(const RunState& state);
// Throws CorruptCheckpoint on malformed or truncated documents.
RunState run_state_from_json(const Json& j);

// --- CSV -------------------------------------------------------------------
// Shortest round-trip decimal form (std::to_chars); parses back bit-exactly.
std::string format_double(double v);
double parse_double(const std::string& s);

// "# generated <UTC timestamp>\n" comment CSV writers prepend unless asked
// for deterministic output.
std::string timestamp_line();

std::string gen_log_to_csv(const std::vector<GenLogRow>& rows, bool timestamp_header);
std::string trace_to_csv(const Trace& trace, bool timestamp_header);
Trace trace_from_csv(const std::string& text);
std::string robustness_to_csv(const std::vector<double>& deltas, bool timestamp_header);
Json robustness_summary_to_json(const RobustnessReport& report);

// --- files -----------------------------------------------------------------
// Write to a sibling temp file, then rename into place.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

}  // namespace voxevo
