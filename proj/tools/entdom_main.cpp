// entdom: steady-state entanglement of two harmonic atoms above a conducting
// plate. Subcommands map one-to-one onto the analyses: pole spectra and
// stability verdicts, covariance reports, (rho, z2) entanglement maps with
// threshold contours, and one-dimensional parameter sweeps.

#include <atomic>
#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "entdom/errors.hpp"
#include "entdom/output.hpp"
#include "entdom/parallel.hpp"

namespace {

using namespace entdom;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 2;
constexpr int kExitConfig = 3;
constexpr int kExitUnstable = 4;
constexpr int kExitNoConvergence = 5;

struct CliArgs {
    std::optional<std::string> config_path;
    std::vector<std::string> sets;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> workers;
};

RunConfig build_config(const CliArgs& args, Task task) {
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& s : args.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + s + "'");
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    overrides.emplace_back("task.type", to_string(task));
    if (args.out) overrides.emplace_back("output.path", *args.out);
    if (args.format) overrides.emplace_back("output.format", *args.format);
    if (args.workers) overrides.emplace_back("numerics.workers", std::to_string(*args.workers));
    return load_run_config(args.config_path, overrides);
}

void write_with_manifest(const RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& files) {
    std::vector<std::string> names;
    for (const auto& [path, content] : files) {
        write_text_file(path, content);
        names.push_back(path);
        std::cout << "wrote " << path << "\n";
    }
    const std::string manifest = sibling_path(cfg.output.path, "", ".manifest.json");
    write_text_file(manifest, run_manifest(cfg, names).dump(2) + "\n");
    std::cout << "wrote " << manifest << "\n";
}

int cmd_poles(const RunConfig& cfg, bool verdict_only) {
    const PoleSet poles = cfg.numerics.pole_region
                              ? find_poles(cfg.physical, *cfg.numerics.pole_region)
                              : find_poles(cfg.physical);
    int upper = 0;
    for (const auto& p : poles.poles)
        if (p.imag() > stability_epsilon(cfg.physical)) ++upper;
    std::cout << (poles.stable ? "STABLE" : "UNSTABLE") << "  poles=" << poles.poles.size()
              << "  upper_half=" << upper << "  margin=" << format_g17(poles.margin) << "\n";
    if (verdict_only) {
        write_with_manifest(cfg, {{cfg.output.path, stability_report(poles).dump(2) + "\n"}});
        return kExitOk;
    }
    if (cfg.output.format == OutputFormat::Csv)
        write_with_manifest(cfg, {{cfg.output.path, poles_csv(poles, cfg.physical)}});
    else
        write_with_manifest(cfg, {{cfg.output.path, poles_json(poles, cfg.physical).dump(2) + "\n"}});
    return kExitOk;
}

int cmd_covariance(const RunConfig& cfg, bool purity_only) {
    const PoleSet stability = analyze_stability(cfg.physical);
    if (!stability.stable) {
        std::cerr << "refusing: configuration is dynamically unstable (margin "
                  << format_g17(stability.margin) << ", " << stability.poles.size()
                  << " poles located); no steady state exists\n";
        return kExitUnstable;
    }
    CovarianceOptions copt;
    copt.quadrature.rtol = cfg.numerics.quad_rtol;
    const CovarianceMatrix cov = covariance(cfg.physical, stability, copt);
    nlohmann::json rep = covariance_report(cfg.physical, cov);
    if (purity_only)
        rep = nlohmann::json{{"atom1", rep["atom1"]}, {"atom2", rep["atom2"]}};

    std::cout << "lambda_minus_sq_pt=" << format_g17(rep.contains("pt_lambda_minus_sq")
                                                         ? rep["pt_lambda_minus_sq"].get<double>()
                                                         : pt_discriminant(cov.sigma))
              << "  purity2=" << format_g17(rep["atom2"]["purity"].get<double>()) << "\n";
    if (cfg.output.format == OutputFormat::Csv && !purity_only)
        write_with_manifest(cfg, {{cfg.output.path, covariance_report_csv(cfg.physical, cov)}});
    else
        write_with_manifest(cfg, {{cfg.output.path, rep.dump(2) + "\n"}});
    return kExitOk;
}

int cmd_map(const RunConfig& cfg) {
    const GridSpec grid = cfg.to_grid_spec();
    SweepOptions opt;
    opt.workers = cfg.numerics.workers;
    opt.covariance.quadrature.rtol = cfg.numerics.quad_rtol;
    std::atomic<std::size_t> progress{0};
    opt.progress = &progress;

    const std::size_t total =
        static_cast<std::size_t>(grid.rho_count) * static_cast<std::size_t>(grid.z2_count);
    std::atomic<bool> done{false};
    std::thread reporter([&] {
        while (!done.load()) {
            std::this_thread::sleep_for(std::chrono::seconds(5));
            const std::size_t p = progress.load();
            if (!done.load() && p < total)
                std::cerr << "  " << p << "/" << total << " cells\n";
        }
    });
    DomainMap map;
    try {
        map = sweep_map(grid, opt);
    } catch (...) {
        done = true;
        reporter.join();
        throw;
    }
    done = true;
    reporter.join();

    const std::string contours_path = sibling_path(cfg.output.path, "_contours", ".json");
    const std::string metrics_path = sibling_path(cfg.output.path, "_metrics", ".json");
    std::vector<std::pair<std::string, std::string>> files;
    if (cfg.output.format == OutputFormat::Csv)
        files.emplace_back(cfg.output.path, map_csv(map));
    else
        files.emplace_back(cfg.output.path, map_json(map).dump() + "\n");
    files.emplace_back(contours_path, contours_json(map, 0.25).dump(2) + "\n");
    files.emplace_back(metrics_path, metrics_json(map).dump(2) + "\n");
    write_with_manifest(cfg, files);

    std::cout << "entangled_cells=" << map.metrics.entangled_cell_count
              << "  closed_contour=" << (map.metrics.has_closed_contour ? "yes" : "no");
    if (map.metrics.has_closed_contour)
        std::cout << "  effective_radius=" << format_g17(map.metrics.effective_radius);
    std::cout << "\n";

    if (map.metrics.failed_cell_count > 0) {
        std::string log;
        for (int j = 0; j < grid.z2_count; ++j)
            for (int i = 0; i < grid.rho_count; ++i)
                if (map.at(i, j).status == CellStatus::Failed)
                    log += "cell rho=" + format_g17(grid.rho_at(i)) +
                           " z2=" + format_g17(grid.z2_at(j)) + ": " + map.at(i, j).error + "\n";
        const std::string log_path = sibling_path(cfg.output.path, "_errors", ".log");
        write_text_file(log_path, log);
        std::cerr << map.metrics.failed_cell_count << " cells failed; see " << log_path << "\n";
        return kExitPartial;
    }
    return kExitOk;
}

int cmd_line(const RunConfig& cfg) {
    SweepOptions opt;
    opt.workers = cfg.numerics.workers;
    opt.covariance.quadrature.rtol = cfg.numerics.quad_rtol;
    const std::vector<LineSample> rows = line_sweep(cfg.to_line_spec(), opt);

    if (cfg.output.format == OutputFormat::Csv)
        write_with_manifest(cfg, {{cfg.output.path, line_csv(rows)}});
    else
        write_with_manifest(cfg, {{cfg.output.path, line_json(rows).dump(2) + "\n"}});

    long failed = 0;
    for (const auto& r : rows)
        if (r.status == CellStatus::Failed) ++failed;
    if (failed > 0) {
        std::string log;
        for (const auto& r : rows)
            if (r.status == CellStatus::Failed)
                log += "sample param=" + format_g17(r.param) + ": " + r.error + "\n";
        const std::string log_path = sibling_path(cfg.output.path, "_errors", ".log");
        write_text_file(log_path, log);
        std::cerr << failed << " samples failed; see " << log_path << "\n";
        return kExitPartial;
    }
    return kExitOk;
}

int run(Task task, const CliArgs& args) {
    try {
        const RunConfig cfg = build_config(args, task);
        switch (task) {
            case Task::Poles: return cmd_poles(cfg, false);
            case Task::Stability: return cmd_poles(cfg, true);
            case Task::Covariance: return cmd_covariance(cfg, false);
            case Task::Purity: return cmd_covariance(cfg, true);
            case Task::Map: return cmd_map(cfg);
            case Task::Line: return cmd_line(cfg);
        }
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InstabilityError& e) {
        std::cerr << "refusing: " << e.what() << "\n";
        return kExitUnstable;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical non-convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Steady-state entanglement topography of two harmonic atoms coupled to a "
        "massless scalar field above a perfectly conducting plate"};
    app.require_subcommand(1);

    CliArgs args;
    app.add_option("--config", args.config_path, "INI-style config file");
    app.add_option("--set", args.sets, "Override a config key, e.g. --set physical.gamma=0.1")
        ->take_all();
    app.add_option("--out", args.out, "Output file path");
    app.add_option("--format", args.format, "Output format: csv or json");
    app.add_option("--workers", args.workers, "Worker threads for sweeps (0 = all cores)");

    Task task = Task::Covariance;
    const std::pair<const char*, Task> subcommands[] = {
        {"poles", Task::Poles},         {"stability", Task::Stability},
        {"covariance", Task::Covariance}, {"purity", Task::Purity},
        {"map", Task::Map},             {"line", Task::Line}};
    const char* descriptions[] = {
        "Locate complex poles and report the stability verdict",
        "Stability verdict and margin only",
        "Late-time covariance matrix and Gaussian measures",
        "Per-atom reduced purity and von Neumann entropy",
        "Sweep (rho, z2), extract threshold contours and metrics",
        "Sweep one parameter, emit figure-ready columns"};
    for (std::size_t k = 0; k < std::size(subcommands); ++k) {
        const Task t = subcommands[k].second;
        auto* sub = app.add_subcommand(subcommands[k].first, descriptions[k]);
        sub->fallthrough();  // global options may follow the subcommand
        sub->callback([&task, t] { task = t; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }
    return run(task, args);
}
