#include "latkep/lattice_model.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace latkep {

void LatticeParams::validate() const {
    if (dims < 1 || dims > 3)
        throw ValidationError("lattice dims must be 1, 2 or 3");
    for (int ax = 0; ax < dims; ++ax) {
        if (!(constant(ax) > 0.0))
            throw ValidationError("lattice constant on axis " + std::to_string(ax) + " must be > 0");
        if (hopping(ax) < 0.0)
            throw ValidationError("hopping energy on axis " + std::to_string(ax) + " must be >= 0");
    }
}

double coulomb_potential(const Vec3& r, const CoulombSource& src) {
    const Vec3 d = r - src.position;
    const double rho2 = d.norm_sq() + src.epsilon * src.epsilon;
    if (rho2 == 0.0)
        throw NumericalGuardError("singular potential: position coincides with the unsoftened source");
    return -src.V1 / std::sqrt(rho2);
}

double kinetic_energy(const Vec3& k, const LatticeParams& lat) {
    double t = 0.0;
    for (int ax = 0; ax < lat.dims; ++ax) {
        const double hop = lat.hopping(ax);
        const double con = lat.constant(ax);
        if (lat.kind == DispersionKind::lattice)
            t += 2.0 * hop * (1.0 - std::cos(con * k[ax]));
        else
            t += hop * con * con * k[ax] * k[ax];  // k^2/2m with 1/m = 2*hop*con^2
    }
    return t;
}

double hamiltonian_value(const PhaseState& state, const LatticeParams& lat, const CoulombSource& src) {
    return kinetic_energy(state.k, lat) + coulomb_potential(state.r, src);
}

Vec3 group_velocity(const Vec3& k, const LatticeParams& lat) {
    Vec3 v{};
    for (int ax = 0; ax < lat.dims; ++ax) {
        const double hop = lat.hopping(ax);
        const double con = lat.constant(ax);
        if (lat.kind == DispersionKind::lattice)
            v[ax] = 2.0 * hop * con * std::sin(con * k[ax]);
        else
            v[ax] = 2.0 * hop * con * con * k[ax];
    }
    return v;
}

Vec3 coulomb_kdot(const Vec3& r, const CoulombSource& src) {
    const Vec3 d = r - src.position;
    const double rho2 = d.norm_sq() + src.epsilon * src.epsilon;
    if (rho2 == 0.0)
        throw NumericalGuardError("singular potential: position coincides with the unsoftened source");
    const double inv_rho3 = 1.0 / (rho2 * std::sqrt(rho2));
    return d * (-src.V1 * inv_rho3);
}

double lz(const PhaseState& state, const CoulombSource& src) {
    return cross_z(state.r - src.position, state.k);
}

double lz_rate(const PhaseState& state, const LatticeParams& lat) {
    const double a = lat.a, b = lat.b;
    const double kx = state.k.x, ky = state.k.y;
    if (lat.kind == DispersionKind::lattice)
        return 2.0 * (a * lat.A * ky * std::sin(a * kx) - b * lat.B * kx * std::sin(b * ky));
    return 2.0 * (lat.A * a * a - lat.B * b * b) * kx * ky;
}

double effective_mass(const LatticeParams& lat, int axis) {
    const double hop = lat.hopping(axis);
    const double con = lat.constant(axis);
    if (hop <= 0.0)
        throw ValidationError("effective mass undefined for zero hopping on axis " + std::to_string(axis));
    return 1.0 / (2.0 * hop * con * con);
}

double wolf_hopping(double d, double a0) {
    if (d < 0.0 || a0 <= 0.0)
        throw ValidationError("wolf_hopping requires d >= 0 and a0 > 0");
    const double u = d / a0;
    return 2.0 * (1.0 + u) * std::exp(-u);
}

namespace {
double anisotropy_residual(double beta, double target) {
    return wolf_hopping(beta, 1.0) * beta * beta - target;
}
}  // namespace

double solve_anisotropy(double xi, double a_over_a0) {
    if (xi <= 0.0 || a_over_a0 <= 0.0)
        throw ValidationError("solve_anisotropy requires xi > 0 and a_over_a0 > 0");
    const double target = xi * wolf_hopping(a_over_a0, 1.0) * a_over_a0 * a_over_a0;

    // Log-spaced scan for the first sign change, then bisection.
    const double lo_bound = 1e-12, hi_bound = 10.0 * a_over_a0;
    const int n_scan = 4000;
    const double log_lo = std::log(lo_bound), log_hi = std::log(hi_bound);
    double prev_beta = lo_bound;
    double prev_f = anisotropy_residual(prev_beta, target);
    for (int i = 1; i <= n_scan; ++i) {
        const double beta = std::exp(log_lo + (log_hi - log_lo) * i / n_scan);
        const double f = anisotropy_residual(beta, target);
        if (prev_f == 0.0)
            return prev_beta;
        if ((prev_f < 0.0) != (f < 0.0)) {
            double lo = prev_beta, hi = beta, flo = prev_f;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                const double fm = anisotropy_residual(mid, target);
                if (fm == 0.0)
                    return mid;
                if ((flo < 0.0) != (fm < 0.0))
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev_beta = beta;
        prev_f = f;
    }
    throw ValidationError("solve_anisotropy: no root bracket found in (0, 10*a_over_a0]");
}

double continuum_matched_k(double k_cont, double a) {
    if (a <= 0.0)
        throw ValidationError("continuum_matched_k requires a > 0");
    const double u = 0.5 * a * k_cont;
    if (std::fabs(u) > 1.0)
        throw ValidationError("continuum_matched_k: |a*k_cont| exceeds 2, outside the band");
    // (1/a) acos(1 - a^2 k^2 / 2) == (2/a) asin(a k / 2), accurate for small k.
    return 2.0 * std::asin(u) / a;
}

double inverse_continuum_matched_k(double k_lattice, double a) {
    if (a <= 0.0)
        throw ValidationError("inverse_continuum_matched_k requires a > 0");
    return 2.0 * std::sin(0.5 * a * k_lattice) / a;
}

Vec3 wrap_to_zone(const Vec3& k, const LatticeParams& lat) {
    if (lat.kind == DispersionKind::continuum)
        return k;
    Vec3 w = k;
    for (int ax = 0; ax < lat.dims; ++ax) {
        const double period = 2.0 * M_PI / lat.constant(ax);
        w[ax] = k[ax] - period * std::floor(k[ax] / period + 0.5);
    }
    return w;
}

}  // namespace latkep
