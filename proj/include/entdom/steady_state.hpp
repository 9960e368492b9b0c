#pragma once

#include <Eigen/Dense>

#include "entdom/dynamics.hpp"
#include "entdom/quadrature.hpp"

namespace entdom {

// Late-time covariance matrix of (chi1, p1, chi2, p2), block form
// sigma = [[A, C], [C^T, B]] with 2x2 single-atom blocks A, B and cross block C.
struct CovarianceMatrix {
    Eigen::Matrix4d sigma;

    Eigen::Matrix2d block_a() const { return sigma.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d block_b() const { return sigma.bottomRightCorner<2, 2>(); }
    Eigen::Matrix2d block_c() const { return sigma.topRightCorner<2, 2>(); }
};

struct CovarianceOptions {
    QuadratureOptions quadrature{};  // rtol 1e-8 default
};

// Frequency quadrature of the susceptibility against the Hadamard noise
// kernel over [0, Lambda] (negative frequencies folded in by parity):
//   <chi_i chi_j>     = (e^2/m^2) (1/pi) Int Re[M G_H M^dag]_ij
//   <p_i p_j>         = (e^2)     (1/pi) Int w^2 Re[M G_H M^dag]_ij
//   <{chi_i,p_j}>/2   = (e^2/m)   (1/pi) Int Re[i w (M G_H M^dag)]_ij
// The momentum diagonal retains its physical log(Lambda) dependence; see the
// cutoff notes in the README. Throws InstabilityError for unstable configs.
CovarianceMatrix covariance(const AtomPairConfig& cfg, const CovarianceOptions& opt = {});

// Variant reusing an existing stability analysis (its near-axis poles seed
// the resonance breakpoints of the quadrature).
CovarianceMatrix covariance(const AtomPairConfig& cfg, const PoleSet& stability,
                            const CovarianceOptions& opt = {});

// Position-position cross correlation <{chi_1, chi_2}>/2 (block C entry).
double correlation_x1x2(const CovarianceMatrix& cov);
double correlation_x1x2(const AtomPairConfig& cfg);

}  // namespace entdom
