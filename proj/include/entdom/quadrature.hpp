#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "entdom/errors.hpp"

namespace entdom {

// Globally adaptive 15-point Gauss-Kronrod quadrature for vector-valued
// integrands sharing one set of nodes. The caller supplies interior
// breakpoints (resonance positions, oscillation periods); panels between
// breakpoints are split until the summed error of every component is below
// rtol relative to its magnitude (small components are measured against
// comp_floor times the largest component, so exact zeros are not chased).
struct QuadratureOptions {
    double rtol = 1e-8;
    double comp_floor = 1e-3;
    std::size_t max_panels = 400000;
};

struct QuadratureStats {
    std::size_t panels = 0;
    std::size_t evaluations = 0;
    double achieved_rtol = 0.0;
};

namespace gk15 {
// Nodes and weights of the (G7, K15) pair on [-1, 1]. Kronrod nodes with even
// index are the embedded Gauss points.
inline constexpr std::array<double, 8> abscissa = {
    0.00000000000000000e+00, 2.07784955007898468e-01, 4.05845151377397167e-01,
    5.86087235467691130e-01, 7.41531185599394440e-01, 8.64864423359769073e-01,
    9.49107912342758525e-01, 9.91455371120812639e-01,
};
inline constexpr std::array<double, 8> kronrod_weight = {
    2.09482141084727828e-01, 2.04432940075298892e-01, 1.90350578064785410e-01,
    1.69004726639267903e-01, 1.40653259715525919e-01, 1.04790010322250184e-01,
    6.30920926299785533e-02, 2.29353220105292250e-02,
};
inline constexpr std::array<double, 4> gauss_weight = {
    4.17959183673469388e-01, 3.81830050505118945e-01, 2.79705391489276668e-01,
    1.29484966168869693e-01,
};
}  // namespace gk15

// Evaluates one panel; f(x, out) must overwrite all N entries of out.
template <std::size_t N, class F>
void gk15_panel(F&& f, double a, double b, std::array<double, N>& value,
                std::array<double, N>& error, std::size_t& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::array<double, N> fx{};
    std::array<double, N> kron{};
    std::array<double, N> gauss{};

    auto accumulate = [&](double x, double wk, double wg) {
        f(x, fx);
        ++evals;
        for (std::size_t c = 0; c < N; ++c) {
            kron[c] += wk * fx[c];
            gauss[c] += wg * fx[c];
        }
    };

    accumulate(mid, gk15::kronrod_weight[0], gk15::gauss_weight[0]);
    for (std::size_t i = 1; i < 8; ++i) {
        const double dx = half * gk15::abscissa[i];
        const double wg = (i % 2 == 0) ? gk15::gauss_weight[i / 2] : 0.0;
        accumulate(mid - dx, gk15::kronrod_weight[i], wg);
        accumulate(mid + dx, gk15::kronrod_weight[i], wg);
    }
    for (std::size_t c = 0; c < N; ++c) {
        value[c] = half * kron[c];
        error[c] = std::abs(half * (kron[c] - gauss[c]));
    }
}

template <std::size_t N>
struct QuadPanel {
    double a, b;
    std::array<double, N> value;
    std::array<double, N> error;
    double max_error;
};

template <std::size_t N, class F>
std::array<double, N> integrate_adaptive(F&& f, double a, double b,
                                         std::span<const double> breakpoints,
                                         const QuadratureOptions& opt = {},
                                         QuadratureStats* stats = nullptr) {
    if (!(b > a)) throw ConfigError("integrate_adaptive requires b > a");

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [&](double u, double v) { return v - u < 1e-14 * (b - a); }),
                edges.end());
    if (edges.back() != b) edges.back() = b;

    auto cmp = [](const QuadPanel<N>& u, const QuadPanel<N>& v) {
        if (u.max_error != v.max_error) return u.max_error < v.max_error;
        return u.a > v.a;  // deterministic tie-break
    };
    std::priority_queue<QuadPanel<N>, std::vector<QuadPanel<N>>, decltype(cmp)> heap(cmp);

    std::size_t evals = 0;
    std::array<double, N> total{};
    std::array<double, N> total_err{};

    auto push_panel = [&](double lo, double hi) {
        QuadPanel<N> p;
        p.a = lo;
        p.b = hi;
        gk15_panel(f, lo, hi, p.value, p.error, evals);
        p.max_error = *std::max_element(p.error.begin(), p.error.end());
        for (std::size_t c = 0; c < N; ++c) {
            total[c] += p.value[c];
            total_err[c] += p.error[c];
        }
        heap.push(std::move(p));
    };

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) push_panel(edges[i], edges[i + 1]);

    auto worst_ratio = [&]() {
        double scale = 0.0;
        for (std::size_t c = 0; c < N; ++c) scale = std::max(scale, std::abs(total[c]));
        double worst = 0.0;
        for (std::size_t c = 0; c < N; ++c) {
            const double target = std::max(std::abs(total[c]), opt.comp_floor * scale);
            if (target > 0.0) worst = std::max(worst, total_err[c] / target);
        }
        return worst;
    };

    while (worst_ratio() > opt.rtol) {
        if (heap.size() >= opt.max_panels)
            throw ConvergenceError("quadrature did not converge: achieved relative error " +
                                   std::to_string(worst_ratio()) + " with " +
                                   std::to_string(heap.size()) + " panels");
        QuadPanel<N> p = heap.top();
        heap.pop();
        for (std::size_t c = 0; c < N; ++c) {
            total[c] -= p.value[c];
            total_err[c] -= p.error[c];
        }
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b))
            throw ConvergenceError("quadrature panel underflow near x = " +
                                   std::to_string(p.a));
        push_panel(p.a, mid);
        push_panel(mid, p.b);
    }

    if (stats) {
        stats->panels = heap.size();
        stats->evaluations = evals;
        stats->achieved_rtol = worst_ratio();
    }
    return total;
}

}  // namespace entdom
