#include "entdom/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "entdom/errors.hpp"

namespace entdom {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }
}  // namespace

double AtomPairConfig::coupling_sq() const { return 8.0 * kPi * mass * gamma; }

AtomPairConfig AtomPairConfig::swapped() const {
    AtomPairConfig out = *this;
    std::swap(out.atom1, out.atom2);
    return out;
}

void AtomPairConfig::validate() const {
    entdom::validate(atom1);
    entdom::validate(atom2);
    if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
    if (!(omega_p > 0.0)) throw ConfigError("omega_p must be > 0");
    if (!(mass > 0.0)) throw ConfigError("mass must be > 0");
    if (!(cutoff.lambda >= 20.0 * omega_p))
        throw ConfigError("cutoff lambda must be >= 20 omega_p for cutoff-insensitive results");
    if (field.kind == FieldState::Kind::Thermal && !(field.beta > 0.0))
        throw ConfigError("thermal field state requires beta > 0");
    if (atom1 == atom2) throw ConfigError("atoms must occupy distinct positions");
}

KernelMatrix kernel_matrix(const AtomPairConfig& cfg, std::complex<double> omega) {
    const double e2_over_m = cfg.coupling_sq() / cfg.mass;  // 8 pi gamma
    const std::complex<double> free_part =
        -omega * omega - 2.0 * kI * cfg.gamma * omega + cfg.omega_p * cfg.omega_p;
    KernelMatrix out;
    out.omega = omega;
    out.entries(0, 0) = free_part - e2_over_m * image_self(cfg.atom1.z, omega);
    out.entries(1, 1) = free_part - e2_over_m * image_self(cfg.atom2.z, omega);
    out.entries(0, 1) = -e2_over_m * retarded_halfspace(cfg.atom1, cfg.atom2, omega);
    out.entries(1, 0) = out.entries(0, 1);
    return out;
}

Eigen::Matrix2cd kernel_matrix_derivative(const AtomPairConfig& cfg, std::complex<double> omega) {
    const auto [rd, ri] = cfg.separation();
    const double g = cfg.gamma;
    Eigen::Matrix2cd d;
    // d/dw of gamma e^{2iwz}/z is 2 i gamma e^{2iwz}; of the free part, -2w - 2 i gamma.
    d(0, 0) = -2.0 * omega - 2.0 * kI * g + 2.0 * kI * g * std::exp(2.0 * kI * omega * cfg.atom1.z);
    d(1, 1) = -2.0 * omega - 2.0 * kI * g + 2.0 * kI * g * std::exp(2.0 * kI * omega * cfg.atom2.z);
    d(0, 1) = -2.0 * kI * g * (std::exp(kI * omega * rd) - std::exp(kI * omega * ri));
    d(1, 0) = d(0, 1);
    return d;
}

std::complex<double> kernel_determinant(const AtomPairConfig& cfg, std::complex<double> omega) {
    const auto D = kernel_matrix(cfg, omega).entries;
    return D(0, 0) * D(1, 1) - D(0, 1) * D(0, 1);
}

namespace {

// Sum of the magnitudes of all determinant terms at omega; |det D| is bounded
// by it, and relative residuals measured against it stay meaningful where the
// image exponentials dominate.
double det_scale(const AtomPairConfig& cfg, std::complex<double> w) {
    const auto [rd, ri] = cfg.separation();
    const double g = cfg.gamma;
    const double y = w.imag();
    const double base = std::norm(w) + 2.0 * g * std::abs(w) + cfg.omega_p * cfg.omega_p;
    const double s1 = base + (g / cfg.atom1.z) * std::exp(-2.0 * y * cfg.atom1.z);
    const double s2 = base + (g / cfg.atom2.z) * std::exp(-2.0 * y * cfg.atom2.z);
    const double s12 = 2.0 * g * (std::exp(-y * rd) / rd + std::exp(-y * ri) / ri);
    return s1 * s2 + s12 * s12;
}

struct BoundaryHit {
    std::complex<double> where;
};

// det D and its omega-derivative in one pass (shared exponentials).
void det_with_derivative(const AtomPairConfig& cfg, std::complex<double> w,
                         std::complex<double>& det, std::complex<double>& ddet) {
    const auto [rd, ri] = cfg.separation();
    const double g = cfg.gamma;
    const std::complex<double> kI{0.0, 1.0};
    const std::complex<double> e1 = std::exp(2.0 * kI * w * cfg.atom1.z);
    const std::complex<double> e2 = std::exp(2.0 * kI * w * cfg.atom2.z);
    const std::complex<double> ed = std::exp(kI * w * rd);
    const std::complex<double> ei = std::exp(kI * w * ri);

    const std::complex<double> free_part = -w * w - 2.0 * kI * g * w + cfg.omega_p * cfg.omega_p;
    const std::complex<double> dfree = -2.0 * w - 2.0 * kI * g;
    const std::complex<double> d11 = free_part + g * e1 / cfg.atom1.z;
    const std::complex<double> d22 = free_part + g * e2 / cfg.atom2.z;
    const std::complex<double> d12 = -2.0 * g * (ed / rd - ei / ri);
    const std::complex<double> p11 = dfree + 2.0 * kI * g * e1;
    const std::complex<double> p22 = dfree + 2.0 * kI * g * e2;
    const std::complex<double> p12 = -2.0 * kI * g * (ed - ei);

    det = d11 * d22 - d12 * d12;
    ddet = p11 * d22 + d11 * p22 - 2.0 * d12 * p12;
}

// Conservative bound on |d arg det D / d omega| along a horizontal line at
// height im_min, for |Re omega| up to re_max. Each delayed-feedback exponent
// of length L contributes at most L times its relative amplitude there; the
// smooth polynomial part adds a few radians per unit.
double phase_rate_at(const AtomPairConfig& cfg, double im_min, double re_max) {
    const auto [rd, ri] = cfg.separation();
    const double g = cfg.gamma;
    const double wp2 = cfg.omega_p * cfg.omega_p;
    const double poly = wp2 + re_max * re_max + 2.0 * g * re_max;
    const double quartic = wp2 * wp2;

    double rate = 4.0;
    auto add = [&](double length, double amplitude) {
        const double rel = amplitude * std::exp(std::min(-im_min * length, 700.0)) / quartic;
        rate += length * std::min(1.0, rel);
    };
    add(2.0 * cfg.atom1.z, (g / cfg.atom1.z) * poly);
    add(2.0 * cfg.atom2.z, (g / cfg.atom2.z) * poly);
    add(2.0 * (cfg.atom1.z + cfg.atom2.z), (g / cfg.atom1.z) * (g / cfg.atom2.z));
    add(2.0 * rd, (2.0 * g / rd) * (2.0 * g / rd));
    add(2.0 * ri, (2.0 * g / ri) * (2.0 * g / ri));
    add(rd + ri, 2.0 * (2.0 * g / rd) * (2.0 * g / ri));
    return rate;
}

// Newton polish on det D, optionally deflated against already-found roots:
// h = det / prod (w - r_k), step = 1 / (det'/det - sum 1/(w - r_k)).
bool polish_root(const AtomPairConfig& cfg, std::complex<double> start,
                 const std::vector<std::complex<double>>& deflate,
                 std::complex<double>& root) {
    std::complex<double> w = start;
    for (int it = 0; it < 120; ++it) {
        std::complex<double> det, ddet;
        det_with_derivative(cfg, w, det, ddet);
        if (det == 0.0) {
            root = w;
            return true;
        }
        std::complex<double> logderiv = ddet / det;
        for (const auto& r : deflate) {
            const std::complex<double> dw = w - r;
            if (dw == 0.0) return false;
            logderiv -= 1.0 / dw;
        }
        if (logderiv == 0.0) return false;
        const std::complex<double> step = 1.0 / logderiv;
        w -= step;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(w))) {
            if (std::abs(kernel_determinant(cfg, w)) <= 1e-12 * det_scale(cfg, w)) {
                root = w;
                return true;
            }
            return false;
        }
    }
    return false;
}

class PoleSearch {
public:
    PoleSearch(const AtomPairConfig& cfg, std::size_t eval_budget)
        : cfg_(cfg), budget_(eval_budget) {}

    std::vector<std::complex<double>> run(const ComplexRect& region) {
        // A zero sitting on the requested boundary defeats the argument
        // principle; expand the rectangle slightly and filter afterwards.
        ComplexRect search = region;
        const double pad_re = 1e-4 * std::max(region.width(), 1e-6);
        const double pad_im = 1e-4 * std::max(region.height(), 1e-6);
        for (int attempt = 0;; ++attempt) {
            try {
                roots_.clear();
                const int total = winding(search);
                subdivide(search, total);
                int found = static_cast<int>(roots_.size());
                if (found != total)
                    throw ConvergenceError("pole search lost roots: winding number " +
                                           std::to_string(total) + ", located " +
                                           std::to_string(found));
                break;
            } catch (const BoundaryHit&) {
                if (attempt >= 8)
                    throw ConvergenceError("pole search: zero pinned to region boundary");
                const double f = static_cast<double>(attempt + 1);
                search = {search.re_lo - f * pad_re, search.re_hi + f * pad_re,
                          search.im_lo - f * pad_im, search.im_hi + f * pad_im};
            }
        }
        const double keep_pad = 1e-9 * (region.width() + region.height());
        std::vector<std::complex<double>> kept;
        for (auto r : roots_)
            if (region.contains(r, keep_pad)) kept.push_back(r);
        std::sort(kept.begin(), kept.end(), [](auto a, auto b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        return kept;
    }

    int winding(const ComplexRect& r) {
        const std::complex<double> c0{r.re_lo, r.im_lo}, c1{r.re_hi, r.im_lo},
            c2{r.re_hi, r.im_hi}, c3{r.re_lo, r.im_hi};
        double sum = 0.0;
        sum += edge_phase(c0, c1);
        sum += edge_phase(c1, c2);
        sum += edge_phase(c2, c3);
        sum += edge_phase(c3, c0);
        const double wn = sum / (2.0 * kPi);
        const int w = static_cast<int>(std::lround(wn));
        if (std::abs(wn - w) > 0.25)
            throw ConvergenceError("argument-principle winding did not settle: " +
                                   std::to_string(wn));
        return w;
    }

private:
    struct BoundarySample {
        std::complex<double> w;
        std::complex<double> f;
        double log_rate;  // |det'/det|, bounds the local phase speed
    };

    BoundarySample sample(std::complex<double> w) {
        if (++evals_ > budget_)
            throw ConvergenceError("pole search exceeded its evaluation budget");
        std::complex<double> det, ddet;
        det_with_derivative(cfg_, w, det, ddet);
        if (std::abs(det) < 1e-13 * det_scale(cfg_, w)) throw BoundaryHit{w};
        return {w, det, std::abs(ddet / det)};
    }

    // Walks one rectangle edge. The initial grid bounds the exponential phase
    // motion per interval; refinement then splits any interval that could
    // hide a half turn, judged by both the observed phase step and the
    // endpoint log-derivative rates (which blow up near off-edge zeros, so an
    // aliased full turn cannot slip through between coarse samples).
    double edge_phase(std::complex<double> a, std::complex<double> b) {
        const double len = std::abs(b - a);
        const double rate = phase_rate_at(cfg_, std::min(a.imag(), b.imag()),
                                          std::max(std::abs(a.real()), std::abs(b.real())));
        const int n0 = std::clamp(static_cast<int>(std::ceil(len * rate / 1.2)), 8, 768);
        double sum = 0.0;
        BoundarySample prev = sample(a);
        for (int k = 1; k <= n0; ++k) {
            const BoundarySample cur = sample(a + (b - a) * (static_cast<double>(k) / n0));
            sum += phase_between(prev, cur, 0);
            prev = cur;
        }
        return sum;
    }

    double phase_between(const BoundarySample& a, const BoundarySample& b, int depth) {
        const double d = std::arg(b.f / a.f);
        const double len = std::abs(b.w - a.w);
        if (std::abs(d) <= 0.5 * kPi && std::max(a.log_rate, b.log_rate) * len <= 1.2) return d;
        if (depth > 56) throw ConvergenceError("pole search: phase tracking stalled");
        const std::complex<double> m = 0.5 * (a.w + b.w);
        if (m == a.w || m == b.w) throw BoundaryHit{m};
        const BoundarySample mid = sample(m);
        return phase_between(a, mid, depth + 1) + phase_between(mid, b, depth + 1);
    }

    bool newton_deflated(std::complex<double> start,
                         const std::vector<std::complex<double>>& known,
                         std::complex<double>& root) {
        evals_ += 60;  // flat budget charge for one polish
        return polish_root(cfg_, start, known, root);
    }

    // Attempts to capture all `count` roots of a small rectangle by deflated
    // Newton from a deterministic fan of starts. Near-degenerate pairs are
    // found this way without subdividing between them.
    bool try_cluster(const ComplexRect& r, int count) {
        const std::complex<double> center{0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi)};
        std::vector<std::complex<double>> found;
        for (int k = 0; k < count; ++k) {
            bool ok = false;
            for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
                const double frac = 0.07 * attempt;
                const std::complex<double> start =
                    center + std::complex<double>{frac * std::cos(2.39996 * attempt) * r.width(),
                                                  frac * std::sin(2.39996 * attempt) * r.height()};
                std::complex<double> root;
                if (!newton_deflated(start, found, root)) continue;
                if (root.real() <= r.re_lo || root.real() >= r.re_hi ||
                    root.imag() <= r.im_lo || root.imag() >= r.im_hi)
                    continue;  // strict interior only; siblings own the rest
                found.push_back(root);
                ok = true;
            }
            if (!ok) return false;
        }
        roots_.insert(roots_.end(), found.begin(), found.end());
        return true;
    }

    void subdivide(const ComplexRect& r, int count) {
        if (count == 0) return;
        const std::complex<double> center{0.5 * (r.re_lo + r.re_hi), 0.5 * (r.im_lo + r.im_hi)};
        const double diag = std::hypot(r.width(), r.height());

        if (diag < 0.4 * (1.0 + std::abs(center)) && try_cluster(r, count)) return;

        if (diag < 1e-9 * (1.0 + std::abs(center))) {
            // Unresolvable cluster: accept the polished center with the
            // winding multiplicity rather than dropping roots.
            std::complex<double> root;
            if (newton_deflated(center, {}, root) && r.contains(root, 4.0 * diag)) {
                roots_.insert(roots_.end(), count, root);
                return;
            }
            throw ConvergenceError("pole search: cluster at |omega| ~ " +
                                   std::to_string(std::abs(center)) + " did not polish");
        }

        // Off-center splits dodge roots pinned to symmetric midlines; a zero
        // landing on a split line surfaces as a BoundaryHit or a count
        // mismatch, and the fractions are reshuffled locally.
        constexpr double kFractions[][2] = {
            {0.5173, 0.4871}, {0.5562, 0.5319}, {0.4617, 0.5717}, {0.5913, 0.4427}};
        const std::size_t rollback = roots_.size();
        for (const auto& f : kFractions) {
            const double sre = r.re_lo + f[0] * r.width();
            const double sim = r.im_lo + f[1] * r.height();
            const ComplexRect quads[4] = {{r.re_lo, sre, r.im_lo, sim},
                                          {sre, r.re_hi, r.im_lo, sim},
                                          {r.re_lo, sre, sim, r.im_hi},
                                          {sre, r.re_hi, sim, r.im_hi}};
            try {
                int windings[4];
                int sum = 0;
                for (int q = 0; q < 4; ++q) {
                    windings[q] = winding(quads[q]);
                    sum += windings[q];
                }
                if (sum != count) continue;  // a zero evaded the split lines
                for (int q = 0; q < 4; ++q) subdivide(quads[q], windings[q]);
                return;
            } catch (const BoundaryHit&) {
                roots_.resize(rollback);
            }
        }
        // Every split choice failed: a zero is effectively pinned to this
        // rectangle's own boundary. Escalate so an enclosing level (or the
        // top-level jitter) moves the offending lines.
        throw BoundaryHit{center};
    }

    const AtomPairConfig& cfg_;
    std::size_t budget_;
    std::size_t evals_ = 0;
    std::vector<std::complex<double>> roots_;
};


PoleSet make_pole_set(const AtomPairConfig& cfg, std::vector<std::complex<double>> poles,
                      const ComplexRect& region) {
    PoleSet out;
    out.poles = std::move(poles);
    out.search_region = region;
    const double eps = stability_epsilon(cfg);
    double max_im = -std::numeric_limits<double>::infinity();
    for (auto p : out.poles) max_im = std::max(max_im, p.imag());
    if (out.poles.empty()) {
        out.stable = true;
        out.margin = nan_value();
    } else {
        out.stable = max_im < -eps;
        out.margin = -max_im;
    }
    return out;
}

}  // namespace

double upper_half_pole_bound(const AtomPairConfig& cfg) {
    const auto [rd, ri] = cfg.separation();
    const double g = cfg.gamma;
    const double s = g * (std::max(1.0 / cfg.atom1.z, 1.0 / cfg.atom2.z) + 2.0 / rd + 2.0 / ri);
    return cfg.omega_p + std::sqrt(s);
}

ComplexRect default_pole_region(const AtomPairConfig& cfg) {
    const double top = 1.05 * upper_half_pole_bound(cfg) + 0.1 * cfg.omega_p;
    const double re = std::max(3.0 * cfg.omega_p, top);
    const double bottom = -std::max(30.0 * cfg.gamma, 0.25 * cfg.omega_p);
    return {-re, re, bottom, std::max(top, cfg.omega_p)};
}

PoleSet find_poles(const AtomPairConfig& cfg, const ComplexRect& region) {
    cfg.validate();
    if (!(region.re_hi > region.re_lo) || !(region.im_hi > region.im_lo))
        throw ConfigError("pole search region must be a nondegenerate rectangle");
    PoleSearch search(cfg, 6'000'000);
    return make_pole_set(cfg, search.run(region), region);
}

PoleSet find_poles(const AtomPairConfig& cfg) { return find_poles(cfg, default_pole_region(cfg)); }

int winding_number(const AtomPairConfig& cfg, const ComplexRect& region) {
    cfg.validate();
    PoleSearch search(cfg, 6'000'000);
    return search.winding(region);
}

namespace {

// Locates the dissipation-relevant poles below the real axis by scanning
// |det D| along the axis for resonance dips and polishing each candidate
// into the complex plane. The number of Newton launches is bounded by the
// grid size, so distant-atom echo combs cannot blow the search up; every
// polished root is residual-verified before it is kept.
std::vector<std::complex<double>> resonance_scan(const AtomPairConfig& cfg, double re_max,
                                                 double im_floor, double eps) {
    const auto [rd, ri] = cfg.separation();
    const double g = cfg.gamma;
    const double wp2 = cfg.omega_p * cfg.omega_p;

    // Active feedback lengths (relative amplitude above noise) set the dip
    // spacing the grid must resolve; the damping scale gamma sets dip widths.
    double l_active = 0.0;
    auto consider = [&](double length, double rel_amp) {
        if (rel_amp > 1e-3) l_active = std::max(l_active, length);
    };
    consider(2.0 * cfg.atom1.z, g / (cfg.atom1.z * wp2));
    consider(2.0 * cfg.atom2.z, g / (cfg.atom2.z * wp2));
    consider(rd, 2.0 * g / (rd * wp2));
    consider(ri, 2.0 * g / (ri * wp2));

    double step = std::min(g / 6.0, 0.02 * cfg.omega_p);
    if (l_active > 0.0) step = std::min(step, 0.4 / l_active);
    const int n = std::clamp(static_cast<int>(std::ceil(re_max / step)), 512, 200000);

    std::vector<double> mag(n + 1);
    for (int k = 0; k <= n; ++k)
        mag[k] = std::abs(kernel_determinant(cfg, re_max * static_cast<double>(k) / n));

    std::vector<std::complex<double>> found;
    auto keep = [&](std::complex<double> p) {
        if (!(p.real() > -1e-12 && p.real() <= re_max)) return;
        if (!(p.imag() > im_floor && p.imag() < eps)) return;
        for (const auto& q : found)
            if (std::abs(q - p) < 1e-9 * (1.0 + std::abs(p))) return;
        found.push_back(p);
    };

    auto hunt = [&](double x, double y) {
        std::complex<double> root;
        if (polish_root(cfg, {x, y}, {}, root)) {
            keep(root);
            // A merged dip can hide a near-degenerate partner; a deflated
            // restart from the same spot surfaces it.
            std::complex<double> twin;
            if (polish_root(cfg, {x, y}, {root}, twin)) keep(twin);
        }
    };

    const double h = re_max / n;
    hunt(0.5 * h, -0.5 * h);  // near-static pair on the imaginary axis
    int launches = 0;
    for (int k = 1; k < n && launches < 4000; ++k) {
        if (!(mag[k] < mag[k - 1] && mag[k] <= mag[k + 1])) continue;
        ++launches;
        hunt(re_max * static_cast<double>(k) / n, -0.25 * h);
    }
    return found;
}

}  // namespace

PoleSet analyze_stability(const AtomPairConfig& cfg) {
    cfg.validate();
    const double eps = stability_epsilon(cfg);
    const double top = 1.05 * upper_half_pole_bound(cfg) + 0.1 * cfg.omega_p;
    const double re = std::max(3.0 * cfg.omega_p, top);

    // Rigorous runaway census: every upper-half zero lies inside this band
    // (see upper_half_pole_bound), and the image exponentials are bounded
    // there, so the winding count cannot be starved or overflowed.
    const ComplexRect upper{-re, re, eps, top};
    const PoleSet runaway = find_poles(cfg, upper);

    std::vector<std::complex<double>> poles = runaway.poles;
    const double im_floor = -std::max(30.0 * cfg.gamma, 0.5 * cfg.omega_p);
    for (const auto& p : resonance_scan(cfg, re, im_floor, eps)) {
        poles.push_back(p);
        if (p.real() > 1e-9 * (1.0 + std::abs(p)))
            poles.push_back(-std::conj(p));  // exact mirror partner
    }

    if (poles.empty()) {
        // Overdamped or otherwise dip-free axis: polish from the canonical
        // free-oscillator starts.
        const double wr2 = cfg.omega_p * cfg.omega_p - cfg.gamma * cfg.gamma;
        const std::complex<double> base =
            wr2 >= 0.0 ? std::complex<double>{std::sqrt(wr2), -cfg.gamma}
                       : std::complex<double>{0.0, -cfg.gamma + std::sqrt(-wr2)};
        for (const auto start : {base, -std::conj(base),
                                 std::complex<double>{0.0, -cfg.omega_p * cfg.omega_p /
                                                               (2.0 * cfg.gamma)}}) {
            std::complex<double> root;
            if (polish_root(cfg, start, {}, root) && root.imag() < eps) poles.push_back(root);
        }
    }

    std::sort(poles.begin(), poles.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    poles.erase(std::unique(poles.begin(), poles.end(),
                            [](auto a, auto b) {
                                return std::abs(a - b) < 1e-9 * (1.0 + std::abs(a));
                            }),
                poles.end());

    PoleSet out = make_pole_set(cfg, std::move(poles), {-re, re, im_floor, top});
    if (!runaway.poles.empty()) out.stable = false;
    if (out.poles.empty()) out.stable = true;
    return out;
}

std::pair<bool, double> is_stable(const AtomPairConfig& cfg) {
    const PoleSet ps = analyze_stability(cfg);
    return {ps.stable, ps.margin};
}

Eigen::Matrix2cd susceptibility(const AtomPairConfig& cfg, std::complex<double> omega) {
    const auto D = kernel_matrix(cfg, omega).entries;
    const std::complex<double> det = D(0, 0) * D(1, 1) - D(0, 1) * D(0, 1);
    if (std::abs(det) < 1e-13 * det_scale(cfg, omega))
        throw SingularMatrixError("kernel matrix is singular at omega = (" +
                                  std::to_string(omega.real()) + ", " +
                                  std::to_string(omega.imag()) + "): on a pole");
    Eigen::Matrix2cd M;
    M(0, 0) = D(1, 1) / det;
    M(1, 1) = D(0, 0) / det;
    M(0, 1) = -D(0, 1) / det;
    M(1, 0) = M(0, 1);
    return M;
}

}  // namespace entdom
