#pragma once

#include <utility>

#include <Eigen/Dense>

namespace entdom {

// Sp(2,R) x Sp(2,R) invariants of a two-mode covariance matrix:
//   I1 = det A, I2 = det B, I3 = det C,
//   I4 = Tr{A J C J B J C^T J},  Delta = I1 + I2 + 2 I3.
// Partial transposition (atom 2) flips the sign of I3 only, so
// Delta_PT = I1 + I2 - 2 I3 and det sigma is unchanged.
struct SymplecticInvariants {
    double i1, i2, i3, i4;
    double delta;
    double delta_pt;
    double det_sigma;  // = I1 I2 + I3^2 - I4
};

SymplecticInvariants symplectic_invariants(const Eigen::Matrix4d& sigma);

// Williamson eigenvalues from the closed formula
//   lambda_pm^2 = (Delta -+/+ sqrt(Delta^2 - 4 det sigma)) / 2.
// Physical states satisfy lambda_- >= 1/2; a small tolerance absorbs
// upstream quadrature noise before the formula is declared violated.
std::pair<double, double> symplectic_eigenvalues(const Eigen::Matrix4d& sigma);

// Entanglement discriminant: squared smaller symplectic eigenvalue of the
// partially transposed covariance matrix. Below 1/4 signals entanglement.
double pt_discriminant(const Eigen::Matrix4d& sigma);

inline bool is_entangled(double pt_lambda_minus_sq) { return pt_lambda_minus_sq < 0.25; }

// Convenience conversion; not used by any acceptance-bearing path.
double log_negativity(double pt_lambda_minus_sq);

// Symplectic eigenvalue of a reduced single-atom 2x2 block: nu = sqrt(det).
double reduced_nu(const Eigen::Matrix2d& block);

// Purity mu = 1/(2 nu) and von Neumann entropy
// S = (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2) of a reduced state.
double purity(double nu);
double von_neumann_entropy(double nu);

// One-stop record for reports and maps.
struct SymplecticSpectrum {
    double lambda_minus, lambda_plus;
    double pt_lambda_minus_sq;
    SymplecticInvariants invariants;
};

SymplecticSpectrum analyze_gaussian(const Eigen::Matrix4d& sigma);

}  // namespace entdom
