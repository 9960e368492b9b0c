#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entdom/field_kernels.hpp"
#include "entdom/geometry.hpp"

namespace entdom {

// Physical configuration of the atom pair. Both atoms share the coupling
// gamma = e^2/(8 pi m), the physical (renormalized) frequency omega_p and the
// mass m. Defaults follow the canonical setting used throughout the paper's
// figures: gamma = 0.05, omega_p = m = 1, vacuum field, cutoff 100.
struct AtomPairConfig {
    AtomPosition atom1{0.0, 1.0};
    AtomPosition atom2{0.1, 1.0};
    double gamma = 0.05;
    double omega_p = 1.0;
    double mass = 1.0;
    CutoffScheme cutoff{};
    FieldState field{};
    double stability_eps = 0.0;  // 0 selects the default 1e-9 * omega_p

    // e^2 = 8 pi m gamma
    double coupling_sq() const;
    SeparationPair separation() const { return separations(atom1, atom2); }
    AtomPairConfig swapped() const;
    void validate() const;
};

// Stability threshold on pole imaginary parts.
inline double stability_epsilon(const AtomPairConfig& cfg) {
    return cfg.stability_eps > 0.0 ? cfg.stability_eps : 1e-9 * cfg.omega_p;
}

// Frequency-domain kernel matrix D(omega) of the coupled Langevin equations,
// per unit mass (entries carry frequency-squared units):
//   D_ii = -omega^2 + omega_p^2 - 2 i gamma omega - (e^2/m) image_self(z_i)
//   D_ij = -(e^2/m) retarded_halfspace(x_i, x_j),  i != j
struct KernelMatrix {
    std::complex<double> omega;
    Eigen::Matrix2cd entries;
};

KernelMatrix kernel_matrix(const AtomPairConfig& cfg, std::complex<double> omega);

// d/domega of the kernel matrix entries (analytic), used by Newton polishing.
Eigen::Matrix2cd kernel_matrix_derivative(const AtomPairConfig& cfg, std::complex<double> omega);

std::complex<double> kernel_determinant(const AtomPairConfig& cfg, std::complex<double> omega);

// M(omega) = D(omega)^{-1}. Throws SingularMatrixError at a pole.
Eigen::Matrix2cd susceptibility(const AtomPairConfig& cfg, std::complex<double> omega);

// Axis-aligned rectangle in the complex frequency plane.
struct ComplexRect {
    double re_lo, re_hi, im_lo, im_hi;
    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
    bool contains(std::complex<double> w, double pad = 0.0) const {
        return w.real() >= re_lo - pad && w.real() <= re_hi + pad && w.imag() >= im_lo - pad &&
               w.imag() <= im_hi + pad;
    }
};

struct PoleSet {
    std::vector<std::complex<double>> poles;  // sorted by (Re, Im), multiplicity-expanded
    ComplexRect search_region;
    bool stable;    // every found pole has Im < -stability_epsilon
    double margin;  // -max Im over found poles; quiet NaN if none found
};

// Radius bound: every zero of det D in the closed upper half-plane satisfies
// |omega| <= upper_half_pole_bound(cfg). Follows from |D_ii| >= (|w|-wp)^2 -
// gamma/z_i and |D_12| <= 2 gamma (1/r_d + 1/r_im) for Im w >= 0.
double upper_half_pole_bound(const AtomPairConfig& cfg);

// Default search region. The real extent covers both the paper-scale window
// 3 omega_p and the rigorous upper-half bound; the top edge is raised to that
// bound so runaway roots of strongly coupled close pairs are never missed.
ComplexRect default_pole_region(const AtomPairConfig& cfg);

// All zeros of det D inside the region, by recursive rectangle subdivision
// with argument-principle counting and Newton polishing. The subdivision leaf
// counts are cross-checked against the whole-region winding number; a
// mismatch raises ConvergenceError rather than dropping roots.
PoleSet find_poles(const AtomPairConfig& cfg, const ComplexRect& region);
PoleSet find_poles(const AtomPairConfig& cfg);

// Winding number of det D around the rectangle boundary (zero count inside).
int winding_number(const AtomPairConfig& cfg, const ComplexRect& region);

// Stability analysis with a banded search: the verdict scans the full
// upper-half bound; the margin deepens the scan until the shallowest poles
// are located. The returned PoleSet carries every pole found in the scanned
// bands (all near-real resonances needed by the covariance quadrature).
PoleSet analyze_stability(const AtomPairConfig& cfg);

std::pair<bool, double> is_stable(const AtomPairConfig& cfg);

}  // namespace entdom
