#pragma once

#include <complex>

#include "entdom/geometry.hpp"

namespace entdom {

// Initial state of the ambient field. Vacuum is the beta -> infinity limit,
// where the statistical factor coth(beta omega / 2) degenerates to sgn(omega).
struct FieldState {
    enum class Kind { Vacuum, Thermal };
    Kind kind = Kind::Vacuum;
    double beta = 0.0;  // inverse temperature, used only for Thermal

    static FieldState vacuum() { return {}; }
    static FieldState thermal(double beta);
};

// UV cutoff of the field modes, in units of omega_p. It bounds the covariance
// quadrature; the divergent free-space frequency shift it regularizes is
// already absorbed into the physical frequency omega_p.
struct CutoffScheme {
    double lambda = 100.0;
};

// Frequency-domain retarded Green's function of the massless scalar field in
// unbounded space: exp(i omega r) / (4 pi r). Analytic in the upper half
// omega-plane (time dependence e^{-i omega t}).
std::complex<double> retarded_free(double r, std::complex<double> omega);

// Self-interaction kernel induced by the atom's own image across the plate:
// -exp(2 i omega z) / (8 pi z) = -retarded_free(2z, omega). The sign is fixed
// by the Dirichlet condition.
std::complex<double> image_self(double z, std::complex<double> omega);

// Half-space retarded kernel between two distinct points, by the method of
// images. Rejects coincident points; use image_self for the self kernel.
std::complex<double> retarded_halfspace(const AtomPosition& a, const AtomPosition& b,
                                        std::complex<double> omega);

// coth(beta omega / 2) for a thermal state, sgn(omega) for vacuum.
double statistical_factor(double omega, const FieldState& state);

// Hadamard (noise) kernel from the fluctuation-dissipation relation:
// statistical_factor(omega) * Im G_R(a, b, omega). Coincident points use the
// renormalized self limit omega/(4 pi) plus the image contribution.
double hadamard_halfspace(const AtomPosition& a, const AtomPosition& b, double omega,
                          const FieldState& state);

}  // namespace entdom
