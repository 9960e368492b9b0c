#pragma once

#include <array>
#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "entdom/dynamics.hpp"
#include "entdom/steady_state.hpp"

namespace entdom {

// Rectangular scan of atom 2 over (rho, z2) with everything else fixed.
// Atom 1 keeps the position given in base; base.atom2 is replaced per cell.
struct GridSpec {
    double rho_min = 0.02, rho_max = 2.0;
    int rho_count = 100;
    double z2_min = 0.02, z2_max = 2.0;
    int z2_count = 100;
    AtomPairConfig base{};

    void validate() const;
    double rho_at(int i) const;
    double z2_at(int j) const;
};

enum class CellStatus { Valued, Unstable, Failed };

struct CellResult {
    CellStatus status = CellStatus::Failed;
    double lambda_minus_sq = 0.0;     // PT discriminant
    double correlation = 0.0;         // <{chi1, chi2}>/2
    double purity2 = 0.0;             // purity of the reduced atom-2 state
    double state_lambda_minus = 0.0;  // smaller symplectic eigenvalue of sigma
    double stability_margin = 0.0;    // -max Im over located poles
    std::string error;                // populated for Failed cells
};

struct Polyline {
    enum class Closure { Open, Loop, Axis };
    std::vector<std::array<double, 2>> points;  // (rho, z2)
    Closure closure = Closure::Open;
    double signed_area = 0.0;  // closed polylines only; > 0 counterclockwise

    bool closed() const { return closure != Closure::Open; }
};

struct DomainMetrics {
    long entangled_cell_count = 0;
    bool has_closed_contour = false;
    double area = 0.0;              // union of closed contours minus masked holes
    double effective_radius = 0.0;  // sqrt(area/pi); meaningful when closed
    std::array<double, 2> centroid{0.0, 0.0};
    long failed_cell_count = 0;
};

struct DomainMap {
    GridSpec grid;
    std::vector<CellResult> cells;  // index j * rho_count + i
    std::vector<Polyline> contours;
    DomainMetrics metrics;

    const CellResult& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * grid.rho_count + i]; }
    CellResult& at(int i, int j) { return cells[static_cast<std::size_t>(j) * grid.rho_count + i]; }
};

struct SweepOptions {
    int workers = 0;      // 0 = all hardware threads
    double level = 0.25;  // entanglement threshold on lambda_-^2
    CovarianceOptions covariance{};
    std::atomic<std::size_t>* progress = nullptr;  // incremented per finished cell
};

// Full map: per cell a stability check first, then covariance, PT
// discriminant, correlation and reduced purity. Cell failures are recorded
// in place and never abort the sweep. Contours and metrics are attached.
DomainMap sweep_map(const GridSpec& spec, const SweepOptions& opt = {});

// Marching-squares isolines of lambda_-^2 on the stable cells, linear
// interpolation along lattice edges. Squares touching UNSTABLE or failed
// cells are skipped, so no contour segment ever crosses the mask. Polylines
// whose both endpoints land on the rho_min edge (the symmetry-axis side of a
// cylindrically symmetric map) are closed along that edge and tagged Axis.
std::vector<Polyline> extract_contour(const DomainMap& map, double level = 0.25);

struct DomainRadius {
    double area = 0.0;
    double effective_radius = 0.0;
};

// Enclosed area of the union of closed threshold contours minus the masked
// holes inside, and the equivalent-circle radius. Absent (nullopt) when the
// map has no closed contour.
std::optional<DomainRadius> domain_radius(const DomainMap& map);

// Recomputes metrics for a given threshold level (used by sweep_map).
DomainMetrics compute_metrics(const DomainMap& map, double level);

enum class SweepAxis { Z2, Rho, Z1, Gamma };

struct LineSpec {
    SweepAxis axis = SweepAxis::Z2;
    double from = 0.01, to = 2.0;
    int count = 100;
    AtomPairConfig base{};

    void validate() const;
    double value_at(int k) const;
};

struct LineSample {
    double param = 0.0;
    CellStatus status = CellStatus::Failed;
    double chi2_sq = 0.0;       // <chi_2^2>
    double correlation = 0.0;
    double lambda_minus_sq = 0.0;
    double purity2 = 0.0;
    double entropy2 = 0.0;
    double stability_margin = 0.0;
    std::string error;
};

std::vector<LineSample> line_sweep(const LineSpec& spec, const SweepOptions& opt = {});

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(const std::string& name);

}  // namespace entdom
