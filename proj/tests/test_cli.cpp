#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

using nlohmann::json;

namespace {

const std::string kCli = ENTDOM_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: poles reproduces the stable Fig-3 verdict with CSV output") {
    const int rc = run(
        "poles --set physical.z1=1.8 --set physical.z2=1.8806 --set physical.rho=0.05 "
        "--out cli_poles.csv");
    CHECK(rc == 0);
    CHECK(slurp("cli_stdout.txt").find("STABLE") != std::string::npos);

    const std::string csv = slurp("cli_poles.csv");
    CHECK(csv.rfind("re_omega,im_omega,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') > 2);

    const json manifest = json::parse(slurp("cli_poles.manifest.json"));
    CHECK(manifest["config"]["physical.z2"] == "1.8806");
    CHECK(manifest["task"] == "poles");
}

TEST_CASE("cli: unstable covariance request refuses with exit code 4") {
    const int rc = run(
        "covariance --set physical.z1=1.8 --set physical.z2=1.8 --set physical.rho=0.05 "
        "--out cli_cov.json --format json");
    CHECK(rc == 4);
}

TEST_CASE("cli: invalid config exits 3") {
    CHECK(run("covariance --set physical.gamma=-1 --out x.json") == 3);
    CHECK(run("covariance --set physical.bogus=1 --out x.json") == 3);
    CHECK(run("line --set task.vary=sideways --out x.csv") == 3);
}

TEST_CASE("cli: covariance JSON report and determinism across runs") {
    const std::string args =
        "covariance --set physical.z1=1 --set physical.z2=1.3 --set physical.rho=0.4 "
        "--format json --out cli_cov_a.json";
    CHECK(run(args) == 0);
    const json rep = json::parse(slurp("cli_cov_a.json"));
    CHECK(rep.contains("sigma"));
    CHECK(rep["sigma"].size() == 4);
    CHECK(rep.contains("pt_lambda_minus_sq"));
    CHECK(rep["atom2"].contains("purity"));

    CHECK(run("covariance --set physical.z1=1 --set physical.z2=1.3 --set physical.rho=0.4 "
              "--format json --out cli_cov_b.json") == 0);
    CHECK(slurp("cli_cov_a.json") == slurp("cli_cov_b.json"));  // byte-identical
}

TEST_CASE("cli: 2x2 map smoke run emits header + 4 rows and sibling files") {
    const int rc = run(
        "map --set task.rho_min=0.4 --set task.rho_max=0.8 --set task.rho_count=2 "
        "--set task.z2_min=0.8 --set task.z2_max=1.2 --set task.z2_count=2 "
        "--out cli_map.csv --workers 2");
    CHECK(rc == 0);
    const std::string csv = slurp("cli_map.csv");
    CHECK(csv.rfind("rho,z2,lambda_minus_sq,stable,correlation,purity2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    const json metrics = json::parse(slurp("cli_map_metrics.json"));
    CHECK(metrics.contains("entangled_cell_count"));
    const json contours = json::parse(slurp("cli_map_contours.json"));
    CHECK(contours["level"] == 0.25);
}

TEST_CASE("cli: parallel map output is byte-identical across runs") {
    const std::string args =
        "map --set task.rho_min=0.1 --set task.rho_max=0.7 --set task.rho_count=4 "
        "--set task.z2_min=0.7 --set task.z2_max=1.3 --set task.z2_count=4 ";
    CHECK(run(args + "--out cli_det_a.csv --workers 4") == 0);
    CHECK(run(args + "--out cli_det_b.csv --workers 1") == 0);
    CHECK(slurp("cli_det_a.csv") == slurp("cli_det_b.csv"));
    CHECK(slurp("cli_det_a_metrics.json") == slurp("cli_det_b_metrics.json"));
    CHECK(slurp("cli_det_a_contours.json") == slurp("cli_det_b_contours.json"));
}

TEST_CASE("cli: line sweep with config file, flag overrides file") {
    {
        std::ofstream cfg("cli_line.ini");
        cfg << "[physical]\nz1 = 1.0\nrho = 0.1\n"
               "[task]\ntype = line\nvary = z2\nfrom = 0.9\nto = 1.1\ncount = 3\n"
               "[output]\npath = ignored.csv\n";
    }
    const int rc = run("line --config cli_line.ini --out cli_line.csv");
    CHECK(rc == 0);
    const std::string csv = slurp("cli_line.csv");
    CHECK(csv.rfind("param,chi2_sq,correlation,lambda_minus_sq,purity2,entropy2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    std::remove("cli_line.ini");
}

TEST_CASE("cli: stability subcommand reports margin") {
    const int rc = run("stability --set physical.z2=1.4 --out cli_stab.json");
    CHECK(rc == 0);
    const json rep = json::parse(slurp("cli_stab.json"));
    CHECK(rep["stable"] == true);
    CHECK(rep["margin"].get<double>() > 0.0);
}
