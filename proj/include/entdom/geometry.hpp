#pragma once

#include <cmath>

#include "entdom/errors.hpp"

namespace entdom {

// Position of an atom in the half-space z > 0 above the conducting plate.
// Cylindrical symmetry: only the scalar transverse offset is kept.
// All lengths are in units of 1/omega_p (hbar = c = 1).
struct AtomPosition {
    double rho_offset = 0.0;  // transverse coordinate
    double z = 1.0;           // vertical distance to the plate, strictly > 0

    bool operator==(const AtomPosition&) const = default;
};

inline void validate(const AtomPosition& p) {
    if (!(p.z > 0.0) || !std::isfinite(p.z) || !std::isfinite(p.rho_offset))
        throw ConfigError("atom position must have finite coordinates and z > 0");
}

// Distances entering the half-space Green's functions: the direct separation
// and the separation to the image point reflected through the plate.
struct SeparationPair {
    double r_direct;  // sqrt(rho^2 + (z1 - z2)^2)
    double r_image;   // sqrt(rho^2 + (z1 + z2)^2), > 0 even at coincidence
};

inline SeparationPair separations(const AtomPosition& a, const AtomPosition& b) {
    validate(a);
    validate(b);
    const double rho = a.rho_offset - b.rho_offset;
    return {std::hypot(rho, a.z - b.z), std::hypot(rho, a.z + b.z)};
}

}  // namespace entdom
