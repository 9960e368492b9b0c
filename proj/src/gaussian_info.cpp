#include "entdom/gaussian_info.hpp"

#include <cmath>
#include <string>

#include "entdom/errors.hpp"

namespace entdom {

namespace {

constexpr double kNuTolerance = 1e-6;

Eigen::Matrix2d symplectic_j() {
    Eigen::Matrix2d j;
    j << 0.0, 1.0, -1.0, 0.0;
    return j;
}

// lambda^2 from Delta and det sigma; negative discriminants within tolerance
// are clamped (degenerate lambda_- = lambda_+).
std::pair<double, double> lambdas_from(double delta, double det,
                                       const char* what) {
    const double disc = delta * delta - 4.0 * det;
    if (disc < -1e-10 * std::max(delta * delta, 1.0))
        throw InvalidCovarianceError(std::string(what) +
                                     ": Delta^2 < 4 det sigma beyond tolerance");
    const double root = std::sqrt(std::max(disc, 0.0));
    const double lm2 = 0.5 * (delta - root);
    const double lp2 = 0.5 * (delta + root);
    if (lm2 < -1e-12)
        throw InvalidCovarianceError(std::string(what) + ": negative lambda^2");
    return {std::sqrt(std::max(lm2, 0.0)), std::sqrt(lp2)};
}

}  // namespace

SymplecticInvariants symplectic_invariants(const Eigen::Matrix4d& sigma) {
    if (!sigma.isApprox(sigma.transpose(), 1e-9))
        throw InvalidCovarianceError("covariance matrix must be symmetric");
    const Eigen::Matrix2d a = sigma.topLeftCorner<2, 2>();
    const Eigen::Matrix2d b = sigma.bottomRightCorner<2, 2>();
    const Eigen::Matrix2d c = sigma.topRightCorner<2, 2>();
    const Eigen::Matrix2d j = symplectic_j();

    SymplecticInvariants inv;
    inv.i1 = a.determinant();
    inv.i2 = b.determinant();
    inv.i3 = c.determinant();
    inv.i4 = (a * j * c * j * b * j * c.transpose() * j).trace();
    inv.delta = inv.i1 + inv.i2 + 2.0 * inv.i3;
    inv.delta_pt = inv.i1 + inv.i2 - 2.0 * inv.i3;
    inv.det_sigma = inv.i1 * inv.i2 + inv.i3 * inv.i3 - inv.i4;
    return inv;
}

std::pair<double, double> symplectic_eigenvalues(const Eigen::Matrix4d& sigma) {
    const auto inv = symplectic_invariants(sigma);
    return lambdas_from(inv.delta, inv.det_sigma, "symplectic_eigenvalues");
}

double pt_discriminant(const Eigen::Matrix4d& sigma) {
    const auto inv = symplectic_invariants(sigma);
    const auto [lm, lp] = lambdas_from(inv.delta_pt, inv.det_sigma, "pt_discriminant");
    (void)lp;
    return lm * lm;
}

double log_negativity(double pt_lambda_minus_sq) {
    const double lm = std::sqrt(std::max(pt_lambda_minus_sq, 0.0));
    return std::max(0.0, -std::log(2.0 * lm));
}

double reduced_nu(const Eigen::Matrix2d& block) {
    const double det = block.determinant();
    if (det < 0.0) throw InvalidCovarianceError("reduced block has negative determinant");
    const double nu = std::sqrt(det);
    if (nu < 0.5 - kNuTolerance)
        throw InvalidCovarianceError("reduced state violates the uncertainty floor: nu = " +
                                     std::to_string(nu));
    return nu;
}

double purity(double nu) {
    if (nu < 0.5 - kNuTolerance)
        throw InvalidCovarianceError("purity requires nu >= 1/2, got " + std::to_string(nu));
    return 1.0 / (2.0 * std::max(nu, 0.5));
}

double von_neumann_entropy(double nu) {
    if (nu < 0.5 - kNuTolerance)
        throw InvalidCovarianceError("entropy requires nu >= 1/2, got " + std::to_string(nu));
    const double up = nu + 0.5;
    const double dn = nu - 0.5;
    if (dn <= 0.0) return 0.0;  // pure state limit, 0 ln 0 := 0
    return up * std::log(up) - dn * std::log(dn);
}

SymplecticSpectrum analyze_gaussian(const Eigen::Matrix4d& sigma) {
    SymplecticSpectrum out;
    out.invariants = symplectic_invariants(sigma);
    const auto [lm, lp] =
        lambdas_from(out.invariants.delta, out.invariants.det_sigma, "analyze_gaussian");
    out.lambda_minus = lm;
    out.lambda_plus = lp;
    const auto [plm, plp] =
        lambdas_from(out.invariants.delta_pt, out.invariants.det_sigma, "analyze_gaussian(PT)");
    (void)plp;
    out.pt_lambda_minus_sq = plm * plm;
    return out;
}

}  // namespace entdom
