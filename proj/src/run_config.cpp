#include "entdom/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>

#include "entdom/errors.hpp"

namespace entdom {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse number from '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse integer from '" + value + "'");
    }
}

std::string format_17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct KeyEntry {
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

// Pole-region overrides are stored piecewise; ensure_region materializes the
// optional with the default region of the current physical config.
ComplexRect& ensure_region(RunConfig& c) {
    if (!c.numerics.pole_region) c.numerics.pole_region = default_pole_region(c.physical);
    return *c.numerics.pole_region;
}

const std::map<std::string, KeyEntry>& registry() {
    static const std::map<std::string, KeyEntry> reg = [] {
        std::map<std::string, KeyEntry> r;
        auto add_double = [&](const std::string& key, auto getter, auto setter) {
            r[key] = {[setter, key](RunConfig& c, const std::string& k, const std::string& v) {
                          (void)k;
                          setter(c, parse_double(key, v));
                      },
                      [getter](const RunConfig& c) { return format_17(getter(c)); }};
        };
        auto add_int = [&](const std::string& key, auto getter, auto setter) {
            r[key] = {[setter, key](RunConfig& c, const std::string& k, const std::string& v) {
                          (void)k;
                          setter(c, parse_int(key, v));
                      },
                      [getter](const RunConfig& c) { return std::to_string(getter(c)); }};
        };

        add_double("physical.z1", [](const RunConfig& c) { return c.physical.atom1.z; },
                   [](RunConfig& c, double v) { c.physical.atom1.z = v; });
        add_double("physical.z2", [](const RunConfig& c) { return c.physical.atom2.z; },
                   [](RunConfig& c, double v) { c.physical.atom2.z = v; });
        add_double("physical.rho",
                   [](const RunConfig& c) {
                       return c.physical.atom2.rho_offset - c.physical.atom1.rho_offset;
                   },
                   [](RunConfig& c, double v) {
                       c.physical.atom2.rho_offset = c.physical.atom1.rho_offset + v;
                   });
        add_double("physical.gamma", [](const RunConfig& c) { return c.physical.gamma; },
                   [](RunConfig& c, double v) { c.physical.gamma = v; });
        add_double("physical.omega_p", [](const RunConfig& c) { return c.physical.omega_p; },
                   [](RunConfig& c, double v) { c.physical.omega_p = v; });
        add_double("physical.mass", [](const RunConfig& c) { return c.physical.mass; },
                   [](RunConfig& c, double v) { c.physical.mass = v; });
        add_double("physical.beta", [](const RunConfig& c) { return c.physical.field.beta; },
                   [](RunConfig& c, double v) { c.physical.field.beta = v; });
        r["physical.field"] = {
            [](RunConfig& c, const std::string&, const std::string& v) {
                if (v == "vacuum")
                    c.physical.field.kind = FieldState::Kind::Vacuum;
                else if (v == "thermal")
                    c.physical.field.kind = FieldState::Kind::Thermal;
                else
                    throw ConfigError("physical.field must be 'vacuum' or 'thermal', got '" + v +
                                      "'");
            },
            [](const RunConfig& c) {
                return std::string(c.physical.field.kind == FieldState::Kind::Vacuum ? "vacuum"
                                                                                     : "thermal");
            }};

        add_double("numerics.cutoff", [](const RunConfig& c) { return c.physical.cutoff.lambda; },
                   [](RunConfig& c, double v) { c.physical.cutoff.lambda = v; });
        add_double("numerics.quad_rtol", [](const RunConfig& c) { return c.numerics.quad_rtol; },
                   [](RunConfig& c, double v) { c.numerics.quad_rtol = v; });
        add_double("numerics.stability_epsilon",
                   [](const RunConfig& c) { return stability_epsilon(c.physical); },
                   [](RunConfig& c, double v) { c.physical.stability_eps = v; });
        add_int("numerics.workers", [](const RunConfig& c) { return c.numerics.workers; },
                [](RunConfig& c, int v) { c.numerics.workers = v; });
        add_double("numerics.pole_re_min",
                   [](const RunConfig& c) {
                       return c.numerics.pole_region ? c.numerics.pole_region->re_lo : 0.0;
                   },
                   [](RunConfig& c, double v) { ensure_region(c).re_lo = v; });
        add_double("numerics.pole_re_max",
                   [](const RunConfig& c) {
                       return c.numerics.pole_region ? c.numerics.pole_region->re_hi : 0.0;
                   },
                   [](RunConfig& c, double v) { ensure_region(c).re_hi = v; });
        add_double("numerics.pole_im_min",
                   [](const RunConfig& c) {
                       return c.numerics.pole_region ? c.numerics.pole_region->im_lo : 0.0;
                   },
                   [](RunConfig& c, double v) { ensure_region(c).im_lo = v; });
        add_double("numerics.pole_im_max",
                   [](const RunConfig& c) {
                       return c.numerics.pole_region ? c.numerics.pole_region->im_hi : 0.0;
                   },
                   [](RunConfig& c, double v) { ensure_region(c).im_hi = v; });

        r["task.type"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                              if (v == "poles") c.task = Task::Poles;
                              else if (v == "stability") c.task = Task::Stability;
                              else if (v == "covariance") c.task = Task::Covariance;
                              else if (v == "purity") c.task = Task::Purity;
                              else if (v == "map") c.task = Task::Map;
                              else if (v == "line") c.task = Task::Line;
                              else
                                  throw ConfigError(
                                      "task.type must be one of poles|stability|covariance|"
                                      "purity|map|line, got '" + v + "'");
                          },
                          [](const RunConfig& c) { return std::string(to_string(c.task)); }};

        add_double("task.rho_min", [](const RunConfig& c) { return c.grid.rho_min; },
                   [](RunConfig& c, double v) { c.grid.rho_min = v; });
        add_double("task.rho_max", [](const RunConfig& c) { return c.grid.rho_max; },
                   [](RunConfig& c, double v) { c.grid.rho_max = v; });
        add_int("task.rho_count", [](const RunConfig& c) { return c.grid.rho_count; },
                [](RunConfig& c, int v) { c.grid.rho_count = v; });
        add_double("task.z2_min", [](const RunConfig& c) { return c.grid.z2_min; },
                   [](RunConfig& c, double v) { c.grid.z2_min = v; });
        add_double("task.z2_max", [](const RunConfig& c) { return c.grid.z2_max; },
                   [](RunConfig& c, double v) { c.grid.z2_max = v; });
        add_int("task.z2_count", [](const RunConfig& c) { return c.grid.z2_count; },
                [](RunConfig& c, int v) { c.grid.z2_count = v; });

        r["task.vary"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                              if (!parse_sweep_axis(v))
                                  throw ConfigError("task.vary must be one of z2|rho|z1|gamma, "
                                                    "got '" + v + "'");
                              c.line.vary = v;
                          },
                          [](const RunConfig& c) { return c.line.vary; }};
        add_double("task.from", [](const RunConfig& c) { return c.line.from; },
                   [](RunConfig& c, double v) { c.line.from = v; });
        add_double("task.to", [](const RunConfig& c) { return c.line.to; },
                   [](RunConfig& c, double v) { c.line.to = v; });
        add_int("task.count", [](const RunConfig& c) { return c.line.count; },
                [](RunConfig& c, int v) { c.line.count = v; });

        r["output.path"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                                if (v.empty()) throw ConfigError("output.path must be nonempty");
                                c.output.path = v;
                            },
                            [](const RunConfig& c) { return c.output.path; }};
        r["output.format"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                                  if (v == "csv") c.output.format = OutputFormat::Csv;
                                  else if (v == "json") c.output.format = OutputFormat::Json;
                                  else
                                      throw ConfigError("output.format must be csv or json, got '" +
                                                        v + "'");
                              },
                              [](const RunConfig& c) {
                                  return std::string(to_string(c.output.format));
                              }};
        return r;
    }();
    return reg;
}

std::string env_name_for(const std::string& key) {
    std::string name = "ENTDOM_" + key;
    for (char& ch : name) {
        if (ch == '.') ch = '_';
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    return name;
}

}  // namespace

const char* to_string(Task task) {
    switch (task) {
        case Task::Poles: return "poles";
        case Task::Stability: return "stability";
        case Task::Covariance: return "covariance";
        case Task::Purity: return "purity";
        case Task::Map: return "map";
        case Task::Line: return "line";
    }
    return "?";
}

const char* to_string(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "json";
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto& reg = registry();
    const auto it = reg.find(key);
    if (it == reg.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second.set(cfg, key, value);
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(path + ":" + std::to_string(lineno) + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        if (key.find('.') == std::string::npos) {
            if (section.empty())
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": key outside any section");
            key = section + "." + key;
        }
        out.emplace_back(key, value);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> environment_overrides() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, entry] : registry()) {
        (void)entry;
        if (const char* v = std::getenv(env_name_for(key).c_str())) out.emplace_back(key, v);
    }
    return out;
}

RunConfig load_run_config(const std::optional<std::string>& config_path,
                          const std::vector<std::pair<std::string, std::string>>& overrides) {
    RunConfig cfg;
    if (config_path)
        for (const auto& [k, v] : parse_config_file(*config_path)) apply_key(cfg, k, v);
    for (const auto& [k, v] : environment_overrides()) apply_key(cfg, k, v);
    for (const auto& [k, v] : overrides) apply_key(cfg, k, v);
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    physical.validate();
    if (!(numerics.quad_rtol > 0.0) || numerics.quad_rtol > 1e-2)
        throw ConfigError("numerics.quad_rtol must be in (0, 1e-2]");
    if (numerics.workers < 0) throw ConfigError("numerics.workers must be >= 0");
    if (numerics.pole_region) {
        const auto& r = *numerics.pole_region;
        if (!(r.re_hi > r.re_lo) || !(r.im_hi > r.im_lo))
            throw ConfigError("pole region override must be a nondegenerate rectangle");
    }
    if (task == Task::Map) to_grid_spec().validate();
    if (task == Task::Line) to_line_spec().validate();
}

GridSpec RunConfig::to_grid_spec() const {
    GridSpec g;
    g.rho_min = grid.rho_min;
    g.rho_max = grid.rho_max;
    g.rho_count = grid.rho_count;
    g.z2_min = grid.z2_min;
    g.z2_max = grid.z2_max;
    g.z2_count = grid.z2_count;
    g.base = physical;
    return g;
}

LineSpec RunConfig::to_line_spec() const {
    LineSpec l;
    const auto axis = parse_sweep_axis(line.vary);
    if (!axis) throw ConfigError("task.vary must be one of z2|rho|z1|gamma");
    l.axis = *axis;
    l.from = line.from;
    l.to = line.to;
    l.count = line.count;
    l.base = physical;
    return l;
}

std::map<std::string, std::string> resolved_key_map(const RunConfig& cfg) {
    std::map<std::string, std::string> out;
    for (const auto& [key, entry] : registry()) out[key] = entry.get(cfg);
    return out;
}

std::vector<std::string> known_keys() {
    std::vector<std::string> out;
    for (const auto& [key, entry] : registry()) {
        (void)entry;
        out.push_back(key);
    }
    return out;
}

}  // namespace entdom
