#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entdom/gaussian_info.hpp"
#include "entdom/run_config.hpp"
#include "entdom/steady_state.hpp"
#include "entdom/topography.hpp"

namespace entdom {

// All numbers in data files are serialized with 17 significant digits so
// identical runs are byte-identical and values round-trip exactly.
std::string format_g17(double v);

std::string poles_csv(const PoleSet& poles, const AtomPairConfig& cfg);
nlohmann::json poles_json(const PoleSet& poles, const AtomPairConfig& cfg);

std::string map_csv(const DomainMap& map);
nlohmann::json map_json(const DomainMap& map);
nlohmann::json contours_json(const DomainMap& map, double level);
nlohmann::json metrics_json(const DomainMap& map);

std::string line_csv(const std::vector<LineSample>& rows);
nlohmann::json line_json(const std::vector<LineSample>& rows);

// Full covariance report: sigma, invariants, symplectic spectrum, PT
// discriminant, per-atom nu / purity / entropy.
nlohmann::json covariance_report(const AtomPairConfig& cfg, const CovarianceMatrix& cov);
std::string covariance_report_csv(const AtomPairConfig& cfg, const CovarianceMatrix& cov);

nlohmann::json stability_report(const PoleSet& poles);

// Run manifest: the fully resolved configuration plus the list of files the
// run produced. Deliberately carries no timestamps so data stays reproducible.
nlohmann::json run_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs);

void write_text_file(const std::string& path, const std::string& content);

// "out.csv" -> "out_contours.json" etc.
std::string sibling_path(const std::string& path, const std::string& suffix,
                         const std::string& extension);

}  // namespace entdom
