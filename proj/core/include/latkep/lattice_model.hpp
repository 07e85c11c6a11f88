#pragma once

#include "latkep/errors.hpp"
#include "latkep/vec3.hpp"

namespace latkep {

// Single-band tight-binding dispersion, or its effective-mass (continuum)
// limit. All quantities adimensional, hbar = 1.
enum class DispersionKind { lattice, continuum };

struct LatticeParams {
    double a = 1.0, b = 1.0, c = 1.0;  // lattice constants per axis
    double A = 1.0, B = 1.0, C = 1.0;  // hopping energies per axis
    int dims = 2;
    DispersionKind kind = DispersionKind::lattice;

    double constant(int axis) const { return axis == 0 ? a : (axis == 1 ? b : c); }
    double hopping(int axis) const { return axis == 0 ? A : (axis == 1 ? B : C); }

    // Throws ValidationError on non-positive constants, negative hoppings,
    // or dims outside {1,2,3}.
    void validate() const;
};

// External Coulomb point source, V(r) = -V1 / sqrt(|r - position|^2 + epsilon^2).
// epsilon > 0 softens the singularity so site-coincident sources stay finite.
struct CoulombSource {
    Vec3 position{};
    double V1 = 0.0;      // > 0 means attractive
    double epsilon = 0.0;  // softening length >= 0
};

// Semiclassical phase-space point: position r, quasimomentum k, time t.
struct PhaseState {
    Vec3 r{};
    Vec3 k{};
    double t = 0.0;
};

double coulomb_potential(const Vec3& r, const CoulombSource& src);

// Total semiclassical energy: kinetic band term per active axis plus the
// Coulomb potential. Lattice kind uses 2*hop*(1 - cos(const*k)) per axis,
// continuum kind the quadratic expansion hop*const^2*k^2.
double hamiltonian_value(const PhaseState& state, const LatticeParams& lat, const CoulombSource& src);
double kinetic_energy(const Vec3& k, const LatticeParams& lat);

// dr/dt = dH/dk. Lattice: 2*hop*const*sin(const*k); continuum: 2*hop*const^2*k.
Vec3 group_velocity(const Vec3& k, const LatticeParams& lat);

// dk/dt = -grad V = -V1 (r - r_src) / (|r - r_src|^2 + eps^2)^{3/2}.
// Points from r toward the source for V1 > 0 (attraction).
Vec3 coulomb_kdot(const Vec3& r, const CoulombSource& src);

// Angular momentum z-component relative to the source position:
// (x - x_s) k_y - (y - y_s) k_x.
double lz(const PhaseState& state, const CoulombSource& src);

// Time derivative of lz. The central-force contribution cancels exactly, so
// only the band anisotropy remains: 2(aA k_y sin a k_x - bB k_x sin b k_y)
// on the lattice, 2(A a^2 - B b^2) k_x k_y in the continuum.
double lz_rate(const PhaseState& state, const LatticeParams& lat);

// m = 1 / (2 * hopping * constant^2). Throws ValidationError for zero hopping.
double effective_mass(const LatticeParams& lat, int axis);

// Hopping energy as a function of first-neighbor separation d:
// 2 (1 + d/a0) exp(-d/a0).
double wolf_hopping(double d, double a0);

// Smallest beta > 0 with xi * A(alpha) * alpha^2 = B(beta) * beta^2, where
// A, B follow wolf_hopping and alpha = a_over_a0. Bracket scan plus bisection
// to 1e-10; throws ValidationError if no sign change is found in (0, 10*alpha].
double solve_anisotropy(double xi, double a_over_a0);

// Lattice momentum carrying the same kinetic energy as continuum momentum
// k_cont: (1/a) arccos(1 - a^2 k_cont^2 / 2), evaluated as (2/a) asin(a k_cont / 2)
// for accuracy near zero. Domain |a k_cont| <= 2.
double continuum_matched_k(double k_cont, double a);

// Inverse of the above: (2/a) sin(a k_lattice / 2).
double inverse_continuum_matched_k(double k_lattice, double a);

// Canonical Brillouin-zone representative in [-pi/const, pi/const) per active
// axis. Identity for continuum kind. Reporting-side only; integrators evolve
// unwrapped k.
Vec3 wrap_to_zone(const Vec3& k, const LatticeParams& lat);

}  // namespace latkep
