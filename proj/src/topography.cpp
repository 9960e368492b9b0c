#include "entdom/topography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "entdom/errors.hpp"
#include "entdom/gaussian_info.hpp"
#include "entdom/parallel.hpp"

namespace entdom {

namespace {

double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

void GridSpec::validate() const {
    if (rho_count < 2 || z2_count < 2) throw ConfigError("grid counts must be >= 2");
    if (!(rho_min > 0.0) || !(z2_min > 0.0))
        throw ConfigError("grid minima must be > 0 (plate and coincidence excluded)");
    if (!(rho_max > rho_min) || !(z2_max > z2_min))
        throw ConfigError("grid maxima must exceed minima");
    AtomPairConfig probe = base;
    probe.atom2 = {probe.atom1.rho_offset + rho_min, z2_min};
    probe.validate();
}

double GridSpec::rho_at(int i) const {
    return lerp(rho_min, rho_max, static_cast<double>(i) / (rho_count - 1));
}

double GridSpec::z2_at(int j) const {
    return lerp(z2_min, z2_max, static_cast<double>(j) / (z2_count - 1));
}

namespace {

CellResult evaluate_cell(const AtomPairConfig& cfg, const SweepOptions& opt) {
    CellResult cell;
    try {
        const PoleSet stability = analyze_stability(cfg);
        cell.stability_margin = stability.margin;
        if (!stability.stable) {
            cell.status = CellStatus::Unstable;
            return cell;
        }
        const CovarianceMatrix cov = covariance(cfg, stability, opt.covariance);
        const SymplecticSpectrum spec = analyze_gaussian(cov.sigma);
        cell.lambda_minus_sq = spec.pt_lambda_minus_sq;
        cell.correlation = correlation_x1x2(cov);
        cell.purity2 = purity(reduced_nu(cov.block_b()));
        cell.state_lambda_minus = spec.lambda_minus;
        cell.status = CellStatus::Valued;
    } catch (const std::exception& e) {
        cell.status = CellStatus::Failed;
        cell.error = e.what();
    }
    return cell;
}

// ---------------------------------------------------------------------------
// Marching squares
// ---------------------------------------------------------------------------

// Lattice edges are identified by (i, j, orientation); every interpolated
// contour vertex lives on exactly one edge, which makes chain assembly exact.
struct EdgeKey {
    int i, j;
    bool vertical;
    auto operator<=>(const EdgeKey&) const = default;
};

struct Segment {
    EdgeKey e0, e1;
    std::array<double, 2> p0, p1;
};

struct LatticeView {
    const DomainMap& map;
    double value(int i, int j) const { return map.at(i, j).lambda_minus_sq; }
    bool valued(int i, int j) const { return map.at(i, j).status == CellStatus::Valued; }
    double x(int i) const { return map.grid.rho_at(i); }
    double y(int j) const { return map.grid.z2_at(j); }
};

std::array<double, 2> edge_point(const LatticeView& lat, const EdgeKey& e, double level) {
    const int i2 = e.vertical ? e.i : e.i + 1;
    const int j2 = e.vertical ? e.j + 1 : e.j;
    const double v0 = lat.value(e.i, e.j);
    const double v1 = lat.value(i2, j2);
    double t = (v0 == v1) ? 0.5 : (level - v0) / (v1 - v0);
    t = std::clamp(t, 0.0, 1.0);
    return {lerp(lat.x(e.i), lat.x(i2), t), lerp(lat.y(e.j), lat.y(j2), t)};
}

std::vector<Segment> build_segments(const LatticeView& lat, double level) {
    const int nx = lat.map.grid.rho_count;
    const int ny = lat.map.grid.z2_count;
    std::vector<Segment> segs;

    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            if (!lat.valued(i, j) || !lat.valued(i + 1, j) || !lat.valued(i, j + 1) ||
                !lat.valued(i + 1, j + 1))
                continue;
            const double v00 = lat.value(i, j), v10 = lat.value(i + 1, j);
            const double v01 = lat.value(i, j + 1), v11 = lat.value(i + 1, j + 1);
            // "inside" = below the level (the entangled side).
            int code = 0;
            if (v00 < level) code |= 1;
            if (v10 < level) code |= 2;
            if (v11 < level) code |= 4;
            if (v01 < level) code |= 8;
            if (code == 0 || code == 15) continue;

            const EdgeKey bottom{i, j, false}, top{i, j + 1, false};
            const EdgeKey left{i, j, true}, right{i + 1, j, true};
            auto emit = [&](const EdgeKey& a, const EdgeKey& b) {
                segs.push_back({a, b, edge_point(lat, a, level), edge_point(lat, b, level)});
            };

            switch (code) {
                case 1: case 14: emit(left, bottom); break;
                case 2: case 13: emit(bottom, right); break;
                case 3: case 12: emit(left, right); break;
                case 4: case 11: emit(right, top); break;
                case 6: case 9:  emit(bottom, top); break;
                case 7: case 8:  emit(top, left); break;
                case 5: case 10: {
                    // Saddle: disambiguate with the cell-center mean.
                    const double center = 0.25 * (v00 + v10 + v01 + v11);
                    const bool center_inside = center < level;
                    const bool corners_00_11 = (code == 5);
                    if (corners_00_11 == center_inside) {
                        emit(left, top);
                        emit(bottom, right);
                    } else {
                        emit(left, bottom);
                        emit(right, top);
                    }
                    break;
                }
                default: break;
            }
        }
    }
    return segs;
}

// Signed polygon area. The implicit closing edge runs straight from the last
// point back to the first; for axis-closed polylines it lies on the rho_min
// boundary.
double shoelace(const std::vector<std::array<double, 2>>& pts) {
    double area = 0.0;
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        area += pts[k][0] * pts[k + 1][1] - pts[k + 1][0] * pts[k][1];
    area += pts[n - 1][0] * pts[0][1] - pts[0][0] * pts[n - 1][1];
    return 0.5 * area;
}

std::vector<Polyline> assemble_chains(const LatticeView& lat, std::vector<Segment> segs) {
    // Map each edge to the segments touching it (at most two).
    std::map<EdgeKey, std::vector<std::size_t>> touch;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        touch[segs[s].e0].push_back(s);
        touch[segs[s].e1].push_back(s);
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<Polyline> out;
    const double axis_x = lat.x(0);
    const double axis_tol = 1e-12 * (std::abs(axis_x) + lat.x(lat.map.grid.rho_count - 1));

    auto walk = [&](std::size_t start, bool reverse) {
        std::vector<std::array<double, 2>> pts;
        std::size_t s = start;
        EdgeKey enter = reverse ? segs[s].e1 : segs[s].e0;
        pts.push_back(reverse ? segs[s].p1 : segs[s].p0);
        bool closed_loop = false;
        const EdgeKey first_edge = enter;
        while (true) {
            used[s] = true;
            const EdgeKey exit = (segs[s].e0 == enter) ? segs[s].e1 : segs[s].e0;
            pts.push_back((segs[s].e0 == enter) ? segs[s].p1 : segs[s].p0);
            const auto& cand = touch[exit];
            std::size_t next = segs.size();
            for (std::size_t c : cand)
                if (!used[c]) next = c;
            if (next == segs.size()) {
                if (exit == first_edge) closed_loop = true;
                break;
            }
            enter = exit;
            s = next;
        }
        Polyline line;
        line.points = std::move(pts);
        if (closed_loop ||
            (line.points.size() > 2 && line.points.front() == line.points.back())) {
            if (line.points.front() == line.points.back()) line.points.pop_back();
            line.closure = Polyline::Closure::Loop;
        }
        return line;
    };

    // Open chains first (ends with a single touching segment), then loops.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t s = 0; s < segs.size(); ++s) {
            if (used[s]) continue;
            const bool end0_open = touch[segs[s].e0].size() < 2;
            const bool end1_open = touch[segs[s].e1].size() < 2;
            if (pass == 0 && !end0_open && !end1_open) continue;
            Polyline line = walk(s, pass == 0 && !end0_open && end1_open);
            if (line.closure != Polyline::Closure::Loop) {
                const bool a_on_axis = std::abs(line.points.front()[0] - axis_x) <= axis_tol;
                const bool b_on_axis = std::abs(line.points.back()[0] - axis_x) <= axis_tol;
                if (a_on_axis && b_on_axis && line.points.size() > 2)
                    line.closure = Polyline::Closure::Axis;
            }
            if (line.closed()) line.signed_area = shoelace(line.points);
            out.push_back(std::move(line));
        }
    }
    return out;
}

bool point_in_polygon(const std::vector<std::array<double, 2>>& poly, double x, double y) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t k = 0, m = n - 1; k < n; m = k++) {
        const auto& pk = poly[k];
        const auto& pm = poly[m];
        if ((pk[1] > y) != (pm[1] > y)) {
            const double xc = pm[0] + (y - pm[1]) / (pk[1] - pm[1]) * (pk[0] - pm[0]);
            if (x < xc) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

std::vector<Polyline> extract_contour(const DomainMap& map, double level) {
    if (map.grid.rho_count < 2 || map.grid.z2_count < 2)
        throw ConfigError("contour extraction needs at least a 2x2 grid");
    const LatticeView lat{map};
    return assemble_chains(lat, build_segments(lat, level));
}

DomainMetrics compute_metrics(const DomainMap& map, double level) {
    DomainMetrics m;
    const int nx = map.grid.rho_count;
    const int ny = map.grid.z2_count;

    double cx = 0.0, cy = 0.0;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const CellResult& cell = map.at(i, j);
            if (cell.status == CellStatus::Failed) ++m.failed_cell_count;
            if (cell.status == CellStatus::Valued && cell.lambda_minus_sq < level) {
                ++m.entangled_cell_count;
                cx += map.grid.rho_at(i);
                cy += map.grid.z2_at(j);
            }
        }
    }
    if (m.entangled_cell_count > 0)
        m.centroid = {cx / m.entangled_cell_count, cy / m.entangled_cell_count};

    std::vector<const Polyline*> closed;
    for (const auto& p : map.contours)
        if (p.closed()) closed.push_back(&p);
    m.has_closed_contour = !closed.empty();
    if (!m.has_closed_contour) return m;

    // Even-odd union area of the closed contours.
    double area = 0.0;
    for (std::size_t a = 0; a < closed.size(); ++a) {
        int depth = 0;
        const auto rep = closed[a]->points.front();
        for (std::size_t b = 0; b < closed.size(); ++b)
            if (b != a && point_in_polygon(closed[b]->points, rep[0], rep[1])) ++depth;
        area += (depth % 2 == 0 ? 1.0 : -1.0) * std::abs(closed[a]->signed_area);
    }

    // Masked holes: unstable/failed lattice sites inside the union, each
    // weighted by one lattice cell of area.
    const double da = (map.grid.rho_at(1) - map.grid.rho_at(0)) *
                      (map.grid.z2_at(1) - map.grid.z2_at(0));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (map.at(i, j).status == CellStatus::Valued) continue;
            const double x = map.grid.rho_at(i);
            const double y = map.grid.z2_at(j);
            int count = 0;
            for (const auto* poly : closed)
                if (point_in_polygon(poly->points, x, y)) ++count;
            if (count % 2 == 1) area -= da;
        }
    }

    m.area = std::max(area, 0.0);
    m.effective_radius = std::sqrt(m.area / std::numbers::pi);
    return m;
}

std::optional<DomainRadius> domain_radius(const DomainMap& map) {
    if (!map.metrics.has_closed_contour) return std::nullopt;
    return DomainRadius{map.metrics.area, map.metrics.effective_radius};
}

DomainMap sweep_map(const GridSpec& spec, const SweepOptions& opt) {
    spec.validate();
    DomainMap map;
    map.grid = spec;
    const std::size_t total =
        static_cast<std::size_t>(spec.rho_count) * static_cast<std::size_t>(spec.z2_count);
    map.cells.resize(total);

    parallel_for(total, opt.workers, [&](std::size_t idx) {
        const int i = static_cast<int>(idx % spec.rho_count);
        const int j = static_cast<int>(idx / spec.rho_count);
        AtomPairConfig cfg = spec.base;
        cfg.atom2 = {cfg.atom1.rho_offset + spec.rho_at(i), spec.z2_at(j)};
        map.cells[idx] = evaluate_cell(cfg, opt);
        if (opt.progress) opt.progress->fetch_add(1, std::memory_order_relaxed);
    });

    map.contours = extract_contour(map, opt.level);
    map.metrics = compute_metrics(map, opt.level);
    return map;
}

void LineSpec::validate() const {
    if (count < 1) throw ConfigError("line sweep needs count >= 1");
    if (count > 1 && !(to != from)) throw ConfigError("line sweep needs a nonempty range");
    base.validate();
}

double LineSpec::value_at(int k) const {
    if (count == 1) return from;
    return lerp(from, to, static_cast<double>(k) / (count - 1));
}

std::vector<LineSample> line_sweep(const LineSpec& spec, const SweepOptions& opt) {
    spec.validate();
    std::vector<LineSample> rows(spec.count);

    parallel_for(static_cast<std::size_t>(spec.count), opt.workers, [&](std::size_t k) {
        const double v = spec.value_at(static_cast<int>(k));
        AtomPairConfig cfg = spec.base;
        switch (spec.axis) {
            case SweepAxis::Z2: cfg.atom2.z = v; break;
            case SweepAxis::Rho: cfg.atom2.rho_offset = cfg.atom1.rho_offset + v; break;
            case SweepAxis::Z1: cfg.atom1.z = v; break;
            case SweepAxis::Gamma: cfg.gamma = v; break;
        }
        LineSample row;
        row.param = v;
        try {
            cfg.validate();
            const PoleSet stability = analyze_stability(cfg);
            row.stability_margin = stability.margin;
            if (!stability.stable) {
                row.status = CellStatus::Unstable;
            } else {
                const CovarianceMatrix cov = covariance(cfg, stability, opt.covariance);
                const SymplecticSpectrum sp = analyze_gaussian(cov.sigma);
                const double nu2 = reduced_nu(cov.block_b());
                row.chi2_sq = cov.sigma(2, 2);
                row.correlation = correlation_x1x2(cov);
                row.lambda_minus_sq = sp.pt_lambda_minus_sq;
                row.purity2 = purity(nu2);
                row.entropy2 = von_neumann_entropy(nu2);
                row.status = CellStatus::Valued;
            }
        } catch (const std::exception& e) {
            row.status = CellStatus::Failed;
            row.error = e.what();
        }
        rows[k] = std::move(row);
        if (opt.progress) opt.progress->fetch_add(1, std::memory_order_relaxed);
    });
    return rows;
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Z2: return "z2";
        case SweepAxis::Rho: return "rho";
        case SweepAxis::Z1: return "z1";
        case SweepAxis::Gamma: return "gamma";
    }
    return "?";
}

std::optional<SweepAxis> parse_sweep_axis(const std::string& name) {
    if (name == "z2") return SweepAxis::Z2;
    if (name == "rho") return SweepAxis::Rho;
    if (name == "z1") return SweepAxis::Z1;
    if (name == "gamma") return SweepAxis::Gamma;
    return std::nullopt;
}

}  // namespace entdom
