#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entdom/dynamics.hpp"
#include "entdom/topography.hpp"

namespace entdom {

enum class Task { Poles, Stability, Covariance, Purity, Map, Line };
enum class OutputFormat { Csv, Json };

const char* to_string(Task task);
const char* to_string(OutputFormat format);

// Fully resolved run description. Flat "section.key" strings address every
// field; unknown keys are rejected rather than ignored. Defaults follow the
// canonical setting (gamma = 0.05, omega_p = m = 1, vacuum, Lambda = 100).
struct RunConfig {
    AtomPairConfig physical{};  // physical.z1/z2/rho/gamma/omega_p/mass/field/beta

    struct Numerics {
        double quad_rtol = 1e-8;
        int workers = 0;  // 0 = all cores
        std::optional<ComplexRect> pole_region;
    } numerics;

    Task task = Task::Covariance;

    struct Grid {
        double rho_min = 0.02, rho_max = 2.0;
        int rho_count = 100;
        double z2_min = 0.02, z2_max = 2.0;
        int z2_count = 100;
    } grid;

    struct Line {
        std::string vary = "z2";
        double from = 0.01, to = 2.0;
        int count = 100;
    } line;

    struct Output {
        std::string path = "entdom_out.csv";
        OutputFormat format = OutputFormat::Csv;
    } output;

    GridSpec to_grid_spec() const;
    LineSpec to_line_spec() const;
    void validate() const;
};

// Applies one "section.key=value" assignment. Throws ConfigError for unknown
// keys or unparsable values.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Parses an INI-style config file: [section] headers, key = value lines,
// '#'/';' comments. Returns assignments in file order.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

// Environment overrides: for each known key, ENTDOM_SECTION_KEY (uppercase,
// dots to underscores) is consulted. Returns the assignments found.
std::vector<std::pair<std::string, std::string>> environment_overrides();

// defaults -> config file -> environment -> explicit overrides, then validate.
RunConfig load_run_config(const std::optional<std::string>& config_path,
                          const std::vector<std::pair<std::string, std::string>>& overrides);

// Every key with its resolved value, for the run manifest.
std::map<std::string, std::string> resolved_key_map(const RunConfig& cfg);

// All recognized keys (sorted), e.g. for --help output.
std::vector<std::string> known_keys();

}  // namespace entdom
