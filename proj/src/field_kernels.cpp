#include "entdom/field_kernels.hpp"

#include <cmath>
#include <numbers>

namespace entdom {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};
}  // namespace

FieldState FieldState::thermal(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ConfigError("thermal field state requires beta > 0");
    return {Kind::Thermal, beta};
}

std::complex<double> retarded_free(double r, std::complex<double> omega) {
    if (!(r > 0.0))
        throw ConfigError(
            "retarded_free requires r > 0; the coincidence limit is handled by "
            "renormalization, not by this kernel");
    return std::exp(kI * omega * r) / (kFourPi * r);
}

std::complex<double> image_self(double z, std::complex<double> omega) {
    if (!(z > 0.0))
        throw ConfigError("image_self requires z > 0 (atom on the plate excluded)");
    return -retarded_free(2.0 * z, omega);
}

std::complex<double> retarded_halfspace(const AtomPosition& a, const AtomPosition& b,
                                        std::complex<double> omega) {
    if (a == b)
        throw ConfigError(
            "retarded_halfspace requires distinct points; use image_self for the "
            "coincident self kernel");
    const auto [rd, ri] = separations(a, b);
    return retarded_free(rd, omega) - retarded_free(ri, omega);
}

double statistical_factor(double omega, const FieldState& state) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw ConfigError("statistical factor undefined at omega = 0");
    if (state.kind == FieldState::Kind::Vacuum) return omega > 0.0 ? 1.0 : -1.0;
    return 1.0 / std::tanh(0.5 * state.beta * omega);
}

double hadamard_halfspace(const AtomPosition& a, const AtomPosition& b, double omega,
                          const FieldState& state) {
    const double sf = statistical_factor(omega, state);
    if (a == b) {
        validate(a);
        // Im of the renormalized free self kernel plus the image self kernel.
        return sf * (omega / kFourPi + image_self(a.z, omega).imag());
    }
    return sf * retarded_halfspace(a, b, omega).imag();
}

}  // namespace entdom
