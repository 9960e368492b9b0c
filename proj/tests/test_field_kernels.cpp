#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <doctest.h>

#include "entdom/field_kernels.hpp"

using namespace entdom;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {
cplx free_kernel(double r, cplx w) { return std::exp(cplx{0.0, 1.0} * w * r) / (4.0 * pi * r); }
}  // namespace

TEST_CASE("retarded_free: static limit, half-wavelength phase, direct form") {
    CHECK(retarded_free(1.0, 0.0).real() == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));
    CHECK(retarded_free(1.0, 0.0).imag() == 0.0);

    const cplx half = retarded_free(0.5, 2.0 * pi);
    CHECK(half.real() == doctest::Approx(-1.0 / (2.0 * pi)).epsilon(1e-14));
    CHECK(half.imag() == doctest::Approx(0.0).epsilon(1e-15));

    const cplx v = retarded_free(1.0, 1.0);
    CHECK(v.real() == doctest::Approx(std::cos(1.0) / (4.0 * pi)).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(std::sin(1.0) / (4.0 * pi)).epsilon(1e-15));

    CHECK_THROWS_AS(retarded_free(0.0, 1.0), ConfigError);
}

TEST_CASE("image_self: static image, quarter-turn phase, modulus") {
    CHECK(image_self(1.0, 0.0).real() == doctest::Approx(-1.0 / (8.0 * pi)).epsilon(1e-15));

    const cplx q = image_self(0.25, pi);
    CHECK(q.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(q.imag() == doctest::Approx(-1.0 / (2.0 * pi)).epsilon(1e-14));

    CHECK(std::abs(image_self(10.0, 1.0)) == doctest::Approx(1.0 / (80.0 * pi)).epsilon(1e-14));
    CHECK_THROWS_AS(image_self(0.0, 1.0), ConfigError);

    // image_self is the free kernel evaluated at the image distance, negated
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.05, 4.0);
    for (int k = 0; k < 100; ++k) {
        const double z = u(rng);
        const double w = u(rng);
        CHECK(std::abs(image_self(z, w) + retarded_free(2.0 * z, w)) < 1e-18);
    }
}

TEST_CASE("retarded_halfspace: frozen high-precision value") {
    const cplx v = retarded_halfspace({0.0, 1.0}, {0.1, 1.0}, 1.0);
    // Independent arbitrary-precision evaluation of the closed form.
    CHECK(v.real() == doctest::Approx(0.8084266828475734).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.04335168396821458).epsilon(1e-13));
}

TEST_CASE("retarded_halfspace: image antisymmetry against direct construction") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.02, 3.0);
    for (int k = 0; k < 10000; ++k) {
        const AtomPosition a{u(rng), u(rng)};
        const AtomPosition b{u(rng), u(rng)};
        const double w = u(rng);
        const double rd = std::hypot(a.rho_offset - b.rho_offset, a.z - b.z);
        const double rim = std::hypot(a.rho_offset - b.rho_offset, a.z + b.z);
        if (rd < 1e-12) continue;
        const cplx expected = free_kernel(rd, w) - free_kernel(rim, w);
        const cplx got = retarded_halfspace(a, b, w);
        CHECK(std::abs(got - expected) <= 1e-14 * std::abs(expected));
    }
}

TEST_CASE("retarded_halfspace: Dirichlet suppression near the plate") {
    // Kernel magnitude at z2 -> 0 is bounded by a linear law.
    const AtomPosition a{0.0, 1.3};
    const double w = 1.7;
    const double scale = std::abs(retarded_halfspace(a, {0.4, 1.0}, w));
    CHECK(std::abs(retarded_halfspace(a, {0.4, 1e-13}, w)) <= 1e-12 * scale);

    // Linear rate: K(z2)/z2 approaches a finite limit (Richardson-style check).
    const double r1 = std::abs(retarded_halfspace(a, {0.4, 1e-4}, w)) / 1e-4;
    const double r2 = std::abs(retarded_halfspace(a, {0.4, 5e-5}, w)) / 5e-5;
    const double r3 = std::abs(retarded_halfspace(a, {0.4, 2.5e-5}, w)) / 2.5e-5;
    CHECK(std::abs(r2 - r3) < std::abs(r1 - r2));
    CHECK(r3 > 0.0);

    CHECK_THROWS_AS(retarded_halfspace(a, a, 1.0), ConfigError);
}

TEST_CASE("retarded_halfspace: parity in omega and magnitude bound") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int k = 0; k < 2000; ++k) {
        const AtomPosition a{u(rng), u(rng)};
        const AtomPosition b{u(rng) + 0.01, u(rng)};
        const double w = u(rng);
        const cplx plus = retarded_halfspace(a, b, w);
        const cplx minus = retarded_halfspace(a, b, -w);
        CHECK(plus.real() == doctest::Approx(minus.real()).epsilon(1e-12));
        CHECK(plus.imag() == doctest::Approx(-minus.imag()).epsilon(1e-12));

        const auto s = separations(a, b);
        CHECK(std::abs(plus) <=
              1.0 / (4.0 * pi * s.r_direct) + 1.0 / (4.0 * pi * s.r_image) + 1e-15);
    }
}

TEST_CASE("hadamard_halfspace: coincident vacuum limit and Dirichlet zero") {
    // Far from the plate the self noise approaches |omega|/(4 pi).
    const AtomPosition far{0.0, 1e7};
    CHECK(hadamard_halfspace(far, far, 1.3, FieldState::vacuum()) ==
          doctest::Approx(1.3 / (4.0 * pi)).epsilon(1e-6));
    CHECK(hadamard_halfspace(far, far, -1.3, FieldState::vacuum()) ==
          doctest::Approx(1.3 / (4.0 * pi)).epsilon(1e-6));

    // Near the plate the noise vanishes with the field.
    const AtomPosition a{0.0, 1.0};
    CHECK(std::abs(hadamard_halfspace(a, {0.3, 1e-9}, 1.0, FieldState::vacuum())) < 1e-8);

    CHECK_THROWS_AS(hadamard_halfspace(a, a, 0.0, FieldState::vacuum()), ConfigError);
}

TEST_CASE("hadamard_halfspace: even in omega; thermal factor near vacuum at large beta") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    const FieldState thermal = FieldState::thermal(50.0);
    for (int k = 0; k < 1000; ++k) {
        const AtomPosition a{u(rng), u(rng)};
        const AtomPosition b{u(rng) + 0.02, u(rng)};
        const double w = u(rng);
        for (const auto& state : {FieldState::vacuum(), thermal}) {
            const double plus = hadamard_halfspace(a, b, w, state);
            const double minus = hadamard_halfspace(a, b, -w, state);
            CHECK(plus == doctest::Approx(minus).epsilon(1e-12));
        }
    }
    const AtomPosition a{0.0, 1.0}, b{0.2, 0.8};
    const double v = hadamard_halfspace(a, b, 1.0, FieldState::vacuum());
    const double t = hadamard_halfspace(a, b, 1.0, thermal);
    CHECK(t / v == doctest::Approx(1.0 / std::tanh(25.0)).epsilon(1e-15));
    CHECK_THROWS_AS(FieldState::thermal(-1.0), ConfigError);
}
