#include "entdom/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "entdom/errors.hpp"

namespace entdom {

namespace {

constexpr double kPi = std::numbers::pi;

// Quadrature breakpoints: the resonance positions (with a geometric ladder of
// width-scaled offsets so narrow Lorentzians are never stepped over), the
// oscillation combs pi/r of every geometric length, and omega_p itself.
std::vector<double> quadrature_breakpoints(const AtomPairConfig& cfg, const PoleSet& stability) {
    const double lambda = cfg.cutoff.lambda;
    const auto [rd, ri] = cfg.separation();
    std::vector<double> bks{cfg.omega_p};

    constexpr std::size_t kMaxPerComb = 4096;
    for (double r : {rd, ri, 2.0 * cfg.atom1.z, 2.0 * cfg.atom2.z}) {
        const double step = kPi / r;
        const std::size_t n = std::min(kMaxPerComb, static_cast<std::size_t>(lambda / step));
        for (std::size_t k = 1; k <= n; ++k) bks.push_back(static_cast<double>(k) * step);
    }

    constexpr double kLadder[] = {1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0};
    for (const auto& p : stability.poles) {
        const double x = std::abs(p.real());
        const double width = std::abs(p.imag());
        if (x <= 0.0 || x >= lambda || width > 0.5 * cfg.omega_p) continue;
        bks.push_back(x);
        for (double k : kLadder) {
            const double off = k * width;
            if (off > lambda) break;
            bks.push_back(x + off);
            if (x - off > 0.0) bks.push_back(x - off);
        }
    }

    std::sort(bks.begin(), bks.end());
    bks.erase(std::remove_if(bks.begin(), bks.end(),
                             [&](double x) { return x <= 0.0 || x >= lambda; }),
              bks.end());
    return bks;
}

struct IntegrandContext {
    double rd, ri, z1, z2, gamma, omega_p2;
    FieldState field;
};

// One evaluation of all independent covariance integrands at real omega > 0.
// Components: X11, X12, X22, P11, P12, P22, Q12 where X = Re F, P = w^2 Re F,
// Q12 = -w Im F_12 and F = M G_H M^dag. F is Hermitian with F11, F22 real, so
// Q11 = Q22 = 0 and Q21 = -Q12 identically.
void eval_integrand(const IntegrandContext& c, double w, std::array<double, 7>& out) {
    const std::complex<double> iw{0.0, w};
    const std::complex<double> d11 = -w * w + c.omega_p2 +
                                     std::complex<double>{0.0, -2.0 * c.gamma * w} +
                                     c.gamma * std::exp(2.0 * iw * c.z1) / c.z1;
    const std::complex<double> d22 = -w * w + c.omega_p2 +
                                     std::complex<double>{0.0, -2.0 * c.gamma * w} +
                                     c.gamma * std::exp(2.0 * iw * c.z2) / c.z2;
    const std::complex<double> d12 =
        -2.0 * c.gamma * (std::exp(iw * c.rd) / c.rd - std::exp(iw * c.ri) / c.ri);
    const std::complex<double> det = d11 * d22 - d12 * d12;

    const std::complex<double> m11 = d22 / det;
    const std::complex<double> m22 = d11 / det;
    const std::complex<double> m12 = -d12 / det;

    const double sf = statistical_factor(w, c.field);
    const double gh11 = sf * (w / (4.0 * kPi) - std::sin(2.0 * w * c.z1) / (8.0 * kPi * c.z1));
    const double gh22 = sf * (w / (4.0 * kPi) - std::sin(2.0 * w * c.z2) / (8.0 * kPi * c.z2));
    const double gh12 = sf * (std::sin(w * c.rd) / (4.0 * kPi * c.rd) -
                              std::sin(w * c.ri) / (4.0 * kPi * c.ri));

    const double f11 = gh11 * std::norm(m11) + gh22 * std::norm(m12) +
                       2.0 * gh12 * (m11 * std::conj(m12)).real();
    const double f22 = gh22 * std::norm(m22) + gh11 * std::norm(m12) +
                       2.0 * gh12 * (m22 * std::conj(m12)).real();
    const std::complex<double> f12 = gh11 * m11 * std::conj(m12) +
                                     gh12 * (m11 * std::conj(m22) + std::norm(m12)) +
                                     gh22 * m12 * std::conj(m22);

    out[0] = f11;
    out[1] = f12.real();
    out[2] = f22;
    out[3] = w * w * f11;
    out[4] = w * w * f12.real();
    out[5] = w * w * f22;
    out[6] = -w * f12.imag();
}

}  // namespace

CovarianceMatrix covariance(const AtomPairConfig& cfg, const PoleSet& stability,
                            const CovarianceOptions& opt) {
    cfg.validate();
    if (!stability.stable)
        throw InstabilityError(
            "no steady state: configuration is dynamically unstable (margin " +
            std::to_string(stability.margin) + ")");

    const auto [rd, ri] = cfg.separation();
    IntegrandContext ctx{rd, ri, cfg.atom1.z, cfg.atom2.z, cfg.gamma,
                         cfg.omega_p * cfg.omega_p, cfg.field};

    const std::vector<double> bks = quadrature_breakpoints(cfg, stability);
    const auto integrals = integrate_adaptive<7>(
        [&](double w, std::array<double, 7>& out) { eval_integrand(ctx, w, out); }, 0.0,
        cfg.cutoff.lambda, bks, opt.quadrature);

    const double g = cfg.gamma;
    const double m = cfg.mass;
    const double x11 = (8.0 * g / m) * integrals[0];
    const double x12 = (8.0 * g / m) * integrals[1];
    const double x22 = (8.0 * g / m) * integrals[2];
    const double p11 = (8.0 * g * m) * integrals[3];
    const double p12 = (8.0 * g * m) * integrals[4];
    const double p22 = (8.0 * g * m) * integrals[5];
    const double q12 = (8.0 * g) * integrals[6];

    CovarianceMatrix out;
    out.sigma << x11, 0.0, x12, q12,  //
        0.0, p11, -q12, p12,          //
        x12, -q12, x22, 0.0,          //
        q12, p12, 0.0, p22;
    return out;
}

CovarianceMatrix covariance(const AtomPairConfig& cfg, const CovarianceOptions& opt) {
    return covariance(cfg, analyze_stability(cfg), opt);
}

double correlation_x1x2(const CovarianceMatrix& cov) { return cov.sigma(0, 2); }

double correlation_x1x2(const AtomPairConfig& cfg) {
    return correlation_x1x2(covariance(cfg));
}

}  // namespace entdom
