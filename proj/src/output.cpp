#include "entdom/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "entdom/errors.hpp"

namespace entdom {

namespace {

using nlohmann::json;

json point_json(const std::array<double, 2>& p) { return json::array({p[0], p[1]}); }

const char* closure_name(Polyline::Closure c) {
    switch (c) {
        case Polyline::Closure::Open: return "open";
        case Polyline::Closure::Loop: return "loop";
        case Polyline::Closure::Axis: return "axis";
    }
    return "?";
}

}  // namespace

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string poles_csv(const PoleSet& poles, const AtomPairConfig& cfg) {
    std::string out = "re_omega,im_omega,residual\n";
    for (const auto& p : poles.poles) {
        out += format_g17(p.real());
        out += ',';
        out += format_g17(p.imag());
        out += ',';
        out += format_g17(std::abs(kernel_determinant(cfg, p)));
        out += '\n';
    }
    return out;
}

nlohmann::json poles_json(const PoleSet& poles, const AtomPairConfig& cfg) {
    json arr = json::array();
    for (const auto& p : poles.poles)
        arr.push_back({{"re_omega", p.real()},
                       {"im_omega", p.imag()},
                       {"residual", std::abs(kernel_determinant(cfg, p))}});
    return json{{"poles", arr},
                {"stable", poles.stable},
                {"margin", poles.margin},
                {"search_region",
                 {{"re_min", poles.search_region.re_lo},
                  {"re_max", poles.search_region.re_hi},
                  {"im_min", poles.search_region.im_lo},
                  {"im_max", poles.search_region.im_hi}}}};
}

std::string map_csv(const DomainMap& map) {
    std::string out = "rho,z2,lambda_minus_sq,stable,correlation,purity2\n";
    for (int j = 0; j < map.grid.z2_count; ++j) {
        for (int i = 0; i < map.grid.rho_count; ++i) {
            const CellResult& c = map.at(i, j);
            out += format_g17(map.grid.rho_at(i));
            out += ',';
            out += format_g17(map.grid.z2_at(j));
            out += ',';
            if (c.status == CellStatus::Valued) {
                out += format_g17(c.lambda_minus_sq);
                out += ",1,";
                out += format_g17(c.correlation);
                out += ',';
                out += format_g17(c.purity2);
            } else if (c.status == CellStatus::Unstable) {
                out += ",0,,";
            } else {
                out += ",,,";  // failed: stability itself unknown
            }
            out += '\n';
        }
    }
    return out;
}

nlohmann::json map_json(const DomainMap& map) {
    json cells = json::array();
    for (int j = 0; j < map.grid.z2_count; ++j) {
        for (int i = 0; i < map.grid.rho_count; ++i) {
            const CellResult& c = map.at(i, j);
            json cell{{"rho", map.grid.rho_at(i)}, {"z2", map.grid.z2_at(j)}};
            if (c.status == CellStatus::Valued) {
                cell["stable"] = true;
                cell["lambda_minus_sq"] = c.lambda_minus_sq;
                cell["correlation"] = c.correlation;
                cell["purity2"] = c.purity2;
                cell["stability_margin"] = c.stability_margin;
            } else if (c.status == CellStatus::Unstable) {
                cell["stable"] = false;
                cell["stability_margin"] = c.stability_margin;
            } else {
                cell["error"] = c.error;
            }
            cells.push_back(std::move(cell));
        }
    }
    return json{{"cells", cells}};
}

nlohmann::json contours_json(const DomainMap& map, double level) {
    json lines = json::array();
    for (const auto& line : map.contours) {
        json pts = json::array();
        for (const auto& p : line.points) pts.push_back(point_json(p));
        json entry{{"closed", line.closed()},
                   {"closure", closure_name(line.closure)},
                   {"points", pts}};
        if (line.closed()) {
            entry["area"] = std::abs(line.signed_area);
            entry["orientation"] = line.signed_area >= 0.0 ? "ccw" : "cw";
        }
        lines.push_back(std::move(entry));
    }
    return json{{"level", level}, {"polylines", lines}};
}

nlohmann::json metrics_json(const DomainMap& map) {
    const DomainMetrics& m = map.metrics;
    json out{{"entangled_cell_count", m.entangled_cell_count},
             {"has_closed_contour", m.has_closed_contour},
             {"failed_cell_count", m.failed_cell_count}};
    if (m.has_closed_contour) {
        out["area"] = m.area;
        out["effective_radius"] = m.effective_radius;
    } else {
        out["area"] = 0.0;
        out["effective_radius"] = nullptr;
        out["diagnostic"] = "no closed threshold contour in the scanned window";
    }
    if (m.entangled_cell_count > 0)
        out["centroid"] = json::array({m.centroid[0], m.centroid[1]});
    else
        out["centroid"] = nullptr;
    return out;
}

std::string line_csv(const std::vector<LineSample>& rows) {
    std::string out = "param,chi2_sq,correlation,lambda_minus_sq,purity2,entropy2\n";
    for (const auto& r : rows) {
        out += format_g17(r.param);
        if (r.status == CellStatus::Valued) {
            out += ',';
            out += format_g17(r.chi2_sq);
            out += ',';
            out += format_g17(r.correlation);
            out += ',';
            out += format_g17(r.lambda_minus_sq);
            out += ',';
            out += format_g17(r.purity2);
            out += ',';
            out += format_g17(r.entropy2);
        } else {
            out += ",,,,,";  // unstable or failed row
        }
        out += '\n';
    }
    return out;
}

nlohmann::json line_json(const std::vector<LineSample>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json row{{"param", r.param}};
        if (r.status == CellStatus::Valued) {
            row["chi2_sq"] = r.chi2_sq;
            row["correlation"] = r.correlation;
            row["lambda_minus_sq"] = r.lambda_minus_sq;
            row["purity2"] = r.purity2;
            row["entropy2"] = r.entropy2;
            row["stability_margin"] = r.stability_margin;
        } else if (r.status == CellStatus::Unstable) {
            row["unstable"] = true;
            row["stability_margin"] = r.stability_margin;
        } else {
            row["error"] = r.error;
        }
        arr.push_back(std::move(row));
    }
    return json{{"samples", arr}};
}

nlohmann::json covariance_report(const AtomPairConfig& cfg, const CovarianceMatrix& cov) {
    const SymplecticSpectrum spec = analyze_gaussian(cov.sigma);
    const double nu1 = reduced_nu(cov.block_a());
    const double nu2 = reduced_nu(cov.block_b());

    json sigma = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(cov.sigma(r, c));
        sigma.push_back(std::move(row));
    }
    (void)cfg;
    return json{
        {"sigma", sigma},
        {"invariants",
         {{"I1", spec.invariants.i1},
          {"I2", spec.invariants.i2},
          {"I3", spec.invariants.i3},
          {"I4", spec.invariants.i4},
          {"Delta", spec.invariants.delta},
          {"Delta_PT", spec.invariants.delta_pt},
          {"det_sigma", spec.invariants.det_sigma}}},
        {"lambda_minus", spec.lambda_minus},
        {"lambda_plus", spec.lambda_plus},
        {"pt_lambda_minus_sq", spec.pt_lambda_minus_sq},
        {"entangled", is_entangled(spec.pt_lambda_minus_sq)},
        {"log_negativity", log_negativity(spec.pt_lambda_minus_sq)},
        {"atom1", {{"nu", nu1}, {"purity", purity(nu1)}, {"entropy", von_neumann_entropy(nu1)}}},
        {"atom2", {{"nu", nu2}, {"purity", purity(nu2)}, {"entropy", von_neumann_entropy(nu2)}}}};
}

std::string covariance_report_csv(const AtomPairConfig& cfg, const CovarianceMatrix& cov) {
    const json rep = covariance_report(cfg, cov);
    std::string out = "key,value\n";
    const char* names[4] = {"chi1", "p1", "chi2", "p2"};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out += std::string("sigma_") + names[r] + "_" + names[c] + "," +
                   format_g17(cov.sigma(r, c)) + "\n";
    for (const char* key : {"I1", "I2", "I3", "I4", "Delta", "Delta_PT", "det_sigma"})
        out += std::string(key) + "," + format_g17(rep["invariants"][key].get<double>()) + "\n";
    for (const char* key : {"lambda_minus", "lambda_plus", "pt_lambda_minus_sq", "log_negativity"})
        out += std::string(key) + "," + format_g17(rep[key].get<double>()) + "\n";
    for (const char* atom : {"atom1", "atom2"})
        for (const char* key : {"nu", "purity", "entropy"})
            out += std::string(atom) + "_" + key + "," +
                   format_g17(rep[atom][key].get<double>()) + "\n";
    return out;
}

nlohmann::json stability_report(const PoleSet& poles) {
    return json{{"stable", poles.stable}, {"margin", poles.margin},
                {"pole_count", poles.poles.size()}};
}

nlohmann::json run_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
    json config = json::object();
    for (const auto& [k, v] : resolved_key_map(cfg)) config[k] = v;
    return json{{"tool", "entdom"}, {"task", to_string(cfg.task)}, {"config", config},
                {"outputs", outputs}};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

std::string sibling_path(const std::string& path, const std::string& suffix,
                         const std::string& extension) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    std::string stem = (dot == std::string::npos || (slash != std::string::npos && dot < slash))
                           ? path
                           : path.substr(0, dot);
    return stem + suffix + extension;
}

}  // namespace entdom
