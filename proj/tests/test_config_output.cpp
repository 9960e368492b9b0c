#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <doctest.h>

#include "entdom/output.hpp"
#include "entdom/run_config.hpp"

using namespace entdom;

namespace {

std::string write_temp_config(const std::string& body) {
    const std::string path = "test_config_tmp.ini";
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("run config: defaults match the canonical setting") {
    const RunConfig cfg = load_run_config(std::nullopt, {});
    CHECK(cfg.physical.gamma == 0.05);
    CHECK(cfg.physical.omega_p == 1.0);
    CHECK(cfg.physical.mass == 1.0);
    CHECK(cfg.physical.cutoff.lambda == 100.0);
    CHECK(cfg.physical.field.kind == FieldState::Kind::Vacuum);
    CHECK(cfg.numerics.quad_rtol == 1e-8);
}

TEST_CASE("run config: file parsing with sections, comments, overrides win") {
    const std::string path = write_temp_config(
        "# comment\n"
        "[physical]\n"
        "gamma = 0.1\n"
        "z1 = 1.8\n"
        "z2 = 1.8806   ; inline comment\n"
        "rho = 0.05\n"
        "[task]\n"
        "type = poles\n"
        "[output]\n"
        "path = poles.csv\n");
    const RunConfig cfg = load_run_config(path, {{"physical.gamma", "0.05"}});
    std::remove(path.c_str());

    CHECK(cfg.physical.gamma == 0.05);  // override beats file
    CHECK(cfg.physical.atom1.z == 1.8);
    CHECK(cfg.physical.atom2.z == 1.8806);
    CHECK(cfg.physical.atom2.rho_offset == 0.05);
    CHECK(cfg.task == Task::Poles);
    CHECK(cfg.output.path == "poles.csv");
}

TEST_CASE("run config: unknown keys and bad values fail fast") {
    RunConfig cfg;
    CHECK_THROWS_AS(apply_key(cfg, "physical.typo", "1"), ConfigError);
    CHECK_THROWS_AS(apply_key(cfg, "nonsense.key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_key(cfg, "physical.gamma", "abc"), ConfigError);
    CHECK_THROWS_AS(apply_key(cfg, "task.type", "dance"), ConfigError);
    CHECK_THROWS_AS(apply_key(cfg, "output.format", "xml"), ConfigError);

    const std::string path = write_temp_config("[physical]\nunknown_key = 3\n");
    CHECK_THROWS_AS(load_run_config(path, {}), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("run config: environment override is honored") {
    ::setenv("ENTDOM_PHYSICAL_GAMMA", "0.2", 1);
    const RunConfig cfg = load_run_config(std::nullopt, {});
    ::unsetenv("ENTDOM_PHYSICAL_GAMMA");
    CHECK(cfg.physical.gamma == 0.2);

    // Explicit overrides outrank the environment.
    ::setenv("ENTDOM_PHYSICAL_GAMMA", "0.2", 1);
    const RunConfig cfg2 = load_run_config(std::nullopt, {{"physical.gamma", "0.3"}});
    ::unsetenv("ENTDOM_PHYSICAL_GAMMA");
    CHECK(cfg2.physical.gamma == 0.3);
}

TEST_CASE("run config: resolved key map echoes every key") {
    RunConfig cfg;
    apply_key(cfg, "physical.rho", "0.25");
    const auto keys = resolved_key_map(cfg);
    CHECK(keys.at("physical.rho") == "0.25");
    CHECK(keys.at("physical.gamma") == "0.050000000000000003");  // 17 significant digits
    CHECK(keys.at("task.type") == "covariance");
    CHECK(keys.size() == known_keys().size());
}

TEST_CASE("run config: grid and line specs materialize from keys") {
    RunConfig cfg;
    apply_key(cfg, "task.type", "map");
    apply_key(cfg, "task.rho_count", "11");
    apply_key(cfg, "task.z2_max", "1.5");
    const GridSpec g = cfg.to_grid_spec();
    CHECK(g.rho_count == 11);
    CHECK(g.z2_max == 1.5);
    CHECK(g.base.gamma == cfg.physical.gamma);

    apply_key(cfg, "task.vary", "rho");
    apply_key(cfg, "task.count", "5");
    const LineSpec l = cfg.to_line_spec();
    CHECK(l.axis == SweepAxis::Rho);
    CHECK(l.count == 5);
}

TEST_CASE("17-digit serialization round-trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 2.7182818284590452, 1e-17, -0.25}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("output: map CSV header and unstable-row convention") {
    DomainMap map;
    map.grid.rho_min = 0.5;
    map.grid.rho_max = 1.0;
    map.grid.rho_count = 2;
    map.grid.z2_min = 0.5;
    map.grid.z2_max = 1.0;
    map.grid.z2_count = 2;
    map.cells.resize(4);
    map.at(0, 0) = {CellStatus::Valued, 0.2, 0.01, 0.9, 0.55, 0.04, ""};
    map.at(1, 0) = {CellStatus::Unstable, 0, 0, 0, 0, -0.1, ""};
    map.at(0, 1) = {CellStatus::Valued, 0.3, 0.001, 0.8, 0.52, 0.05, ""};
    map.at(1, 1) = {CellStatus::Failed, 0, 0, 0, 0, 0, "quadrature"};

    const std::string csv = map_csv(map);
    CHECK(csv.rfind("rho,z2,lambda_minus_sq,stable,correlation,purity2\n", 0) == 0);
    CHECK(csv.find("\n1,0.5,,0,,\n") != std::string::npos);  // unstable: empty values, stable=0
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 5);  // header + 4 rows
}

TEST_CASE("output: line CSV columns and unstable rows") {
    std::vector<LineSample> rows(2);
    rows[0].param = 0.5;
    rows[0].status = CellStatus::Valued;
    rows[0].chi2_sq = 0.51;
    rows[0].correlation = 0.02;
    rows[0].lambda_minus_sq = 0.26;
    rows[0].purity2 = 0.93;
    rows[0].entropy2 = 0.12;
    rows[1].param = 0.6;
    rows[1].status = CellStatus::Unstable;

    const std::string csv = line_csv(rows);
    CHECK(csv.rfind("param,chi2_sq,correlation,lambda_minus_sq,purity2,entropy2\n", 0) == 0);
    CHECK(csv.find("\n0.59999999999999998,,,,,\n") != std::string::npos);
}

TEST_CASE("output: manifest embeds the fully resolved config") {
    RunConfig cfg;
    apply_key(cfg, "physical.gamma", "0.07");
    const auto manifest = run_manifest(cfg, {"a.csv", "b.json"});
    CHECK(manifest["tool"] == "entdom");
    CHECK(manifest["config"]["physical.gamma"] == "0.070000000000000007");
    CHECK(manifest["outputs"].size() == 2);
    CHECK(!manifest.contains("timestamp"));
}

TEST_CASE("output: sibling path derivation") {
    CHECK(sibling_path("out.csv", "_contours", ".json") == "out_contours.json");
    CHECK(sibling_path("dir.with.dot/out.csv", "_metrics", ".json") ==
          "dir.with.dot/out_metrics.json");
    CHECK(sibling_path("noext", "", ".manifest.json") == "noext.manifest.json");
}
