#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "latkep/lattice_model.hpp"
#include "latkep/observables.hpp"
#include "latkep/propagator.hpp"
#include "latkep/wave_grid.hpp"

namespace {

using namespace latkep;

int failures = 0;

void check(bool ok, const char* name, double measured, double bound) {
    std::printf("[%s] %-38s measured=%.3e bound=%.3e\n", ok ? "ok" : "FAIL", name, measured, bound);
    if (!ok)
        ++failures;
}

void check_hamiltonian() {
    LatticeParams lat{1, 1, 1, 125, 125, 125, 2, DispersionKind::lattice};
    CoulombSource src{{0, -140, 0}, 20000, 0};
    PhaseState st{{0, 20, 0}, {-1, 0, 0}, 0};
    const double err = std::fabs(hamiltonian_value(st, lat, src) - (-10.075576467034935));
    check(err < 1e-9, "hamiltonian value (square lattice)", err, 1e-9);

    LatticeParams cont = lat;
    cont.kind = DispersionKind::continuum;
    const double err2 = std::fabs(hamiltonian_value(st, cont, src) - 0.0);
    check(err2 < 1e-9, "hamiltonian value (continuum)", err2, 1e-9);
}

void check_wolf() {
    const double err = std::fabs(wolf_hopping(9.5, 1.0) - 1.5718884276417126e-3);
    check(err < 1e-12, "wolf hopping at d/a0 = 9.5", err, 1e-12);
    bool monotone = true;
    double prev = wolf_hopping(1e-3, 1.0);
    for (int i = 1; i <= 400; ++i) {
        const double v = wolf_hopping(1e-3 + 0.05 * i, 1.0);
        if (v >= prev)
            monotone = false;
        prev = v;
    }
    check(monotone, "wolf hopping strictly decreasing", monotone ? 1 : 0, 1);
}

void check_anisotropy() {
    const double beta = solve_anisotropy(2.94, 9.5);
    check(std::fabs(beta - 0.477) < 1e-3, "anisotropy solution", std::fabs(beta - 0.477), 1e-3);
    const double xi_back = wolf_hopping(beta, 1.0) * beta * beta / (wolf_hopping(9.5, 1.0) * 9.5 * 9.5);
    const double resid = std::fabs(xi_back / 2.94 - 1.0);
    check(resid < 1e-9, "anisotropy residual", resid, 1e-9);
}

void check_matched_k() {
    const double err = std::fabs(continuum_matched_k(1.0, 1.0) - M_PI / 3.0);
    check(err < 1e-12, "energy-matched momentum at a=1", err, 1e-12);
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double kc = 0.002 * i;
        const double rt = inverse_continuum_matched_k(continuum_matched_k(kc, 1.0), 1.0);
        worst = std::max(worst, std::fabs(rt - kc) / kc);
    }
    check(worst < 1e-12, "matched-momentum round trip", worst, 1e-12);
}

void check_gradients() {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uk(-3.0, 3.0), uh(0.5, 5.0), uc(0.5, 2.0);
    double worst_v = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        LatticeParams lat{uc(rng), uc(rng), uc(rng), uh(rng), uh(rng), uh(rng), 3,
                          trial % 2 ? DispersionKind::continuum : DispersionKind::lattice};
        const Vec3 k{uk(rng), uk(rng), uk(rng)};
        const Vec3 v = group_velocity(k, lat);
        for (int ax = 0; ax < 3; ++ax) {
            const double h = 1e-5;
            Vec3 kp = k, km = k;
            kp[ax] += h;
            km[ax] -= h;
            const double fd = (kinetic_energy(kp, lat) - kinetic_energy(km, lat)) / (2 * h);
            const double scale = std::max(std::fabs(v[ax]), 2.0 * lat.hopping(ax) * lat.constant(ax));
            worst_v = std::max(worst_v, std::fabs(fd - v[ax]) / scale);
        }
    }
    check(worst_v < 1e-8, "group velocity vs finite difference", worst_v, 1e-8);

    std::uniform_real_distribution<double> ur(-20.0, 20.0);
    double worst_f = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        CoulombSource src{{ur(rng), ur(rng), ur(rng)}, 100.0 + 100.0 * trial, trial % 2 ? 0.7 : 0.0};
        Vec3 r{ur(rng), ur(rng), ur(rng)};
        if ((r - src.position).norm() < 1.0)
            r.x += 5.0;
        const Vec3 kd = coulomb_kdot(r, src);
        for (int ax = 0; ax < 3; ++ax) {
            const double h = 1e-5;
            Vec3 rp = r, rm = r;
            rp[ax] += h;
            rm[ax] -= h;
            const double fd = -(coulomb_potential(rp, src) - coulomb_potential(rm, src)) / (2 * h);
            worst_f = std::max(worst_f, std::fabs(fd - kd[ax]) / std::max(1e-12, kd.norm()));
        }
    }
    check(worst_f < 1e-8, "coulomb force vs finite difference", worst_f, 1e-8);
}

// Brute-force reference: plain double loops, no library calls.
double brute_moment(const WaveGrid& psi, int p, int axis) {
    const auto& spec = psi.spec;
    double norm = 0.0, mean = 0.0;
    for (int iy = 0; iy < spec.n[1]; ++iy)
        for (int ix = 0; ix < spec.n[0]; ++ix) {
            const double w = std::norm(psi.c[psi.flat_index(ix, iy, 0)]);
            norm += w;
            mean += spec.coord(axis, axis == 0 ? ix : iy) * w;
        }
    mean /= norm;
    if (p == 0)
        return norm;
    if (p == 1)
        return mean;
    double m = 0.0;
    for (int iy = 0; iy < spec.n[1]; ++iy)
        for (int ix = 0; ix < spec.n[0]; ++ix) {
            const double d = spec.coord(axis, axis == 0 ? ix : iy) - mean;
            m += std::pow(d, p) * std::norm(psi.c[psi.flat_index(ix, iy, 0)]);
        }
    return m / norm;
}

void check_moments() {
    std::mt19937 rng(777);
    std::normal_distribution<double> g(0.0, 1.0);
    GridSpec spec;
    spec.lattice = {1, 1, 1, 1, 1, 1, 2, DispersionKind::lattice};
    spec.n = {8, 8, 1};
    spec.origin = {4, 4, 0};
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        WaveGrid psi;
        psi.spec = spec;
        psi.c.resize(spec.total_sites());
        for (auto& v : psi.c)
            v = {g(rng), g(rng)};
        psi.normalize();
        for (int p = 0; p <= 3; ++p)
            for (int ax = 0; ax < 2; ++ax)
                worst = std::max(worst, std::fabs(central_moment(psi, p, ax) - brute_moment(psi, p, ax)));
    }
    check(worst < 1e-13, "central moments vs brute force", worst, 1e-13);

    // Two-point state: |C|^2 = 3/4 at x=0 and 1/4 at x=4a -> s = 6^{1/3} a.
    GridSpec spec1;
    spec1.lattice = {1, 1, 1, 1, 0, 0, 1, DispersionKind::lattice};
    spec1.n = {8, 1, 1};
    spec1.origin = {0, 0, 0};
    WaveGrid two;
    two.spec = spec1;
    two.c.assign(8, {0, 0});
    two.c[0] = {std::sqrt(0.75), 0};
    two.c[4] = {0.5, 0};
    const double err = std::fabs(skewness_length(two).x - 1.8171205928321397);
    check(err < 1e-12, "two-point skewness length", err, 1e-12);
}

void check_split_step() {
    GridSpec spec;
    spec.lattice = {1, 1, 1, 0.7, 1.4, 1, 2, DispersionKind::lattice};
    spec.n = {32, 32, 1};
    spec.origin = {16, 16, 0};
    WaveGrid psi;
    psi.spec = spec;
    psi.c.resize(spec.total_sites());
    const double kx = spec.wavenumber(0, 5), ky = spec.wavenumber(1, 29);
    for (int iy = 0; iy < 32; ++iy)
        for (int ix = 0; ix < 32; ++ix)
            psi.c[psi.flat_index(ix, iy, 0)] =
                std::polar(1.0 / 32.0, kx * spec.coord(0, ix) + ky * spec.coord(1, iy));

    const double dt = 1e-3;
    PotentialSpec none = PotentialSpec::coulomb(CoulombSource{{0, 0, 0}, 0.0, 1.0});
    SplitOperator op(spec, none, dt);
    WaveGrid evolved = psi;
    op.step(evolved);
    const double t_k = 2 * 0.7 * (1 - std::cos(kx)) + 2 * 1.4 * (1 - std::cos(ky));
    const std::complex<double> phase = std::polar(1.0, -t_k * dt);
    double worst = 0.0;
    for (std::size_t i = 0; i < psi.c.size(); ++i)
        worst = std::max(worst, std::abs(evolved.c[i] - psi.c[i] * phase));
    check(worst < 1e-13, "split step on a Fourier eigenmode", worst, 1e-13);

    // Unitarity with a softened Coulomb source on the grid.
    GaussianSpec packet{{0, 0, 0}, {0.4, -0.3, 0}, 3.0};
    GridSpec spec2 = spec;
    spec2.n = {64, 64, 1};
    spec2.origin = {32, 32, 0};
    WaveGrid g = init_gaussian(spec2, packet);
    PotentialSpec coul = PotentialSpec::coulomb(CoulombSource{{2.0, -3.0, 0}, 40.0, 0.5});
    SplitOperator op2(spec2, coul, dt);
    op2.steps(g, 100);
    const double drift = std::fabs(g.norm_sq() - 1.0);
    check(drift < 1e-13, "norm drift over 100 split steps", drift, 1e-13);
}

void check_angular() {
    CoulombSource src{{0, -140, 0}, 1.0, 0};
    PhaseState st{{0, 12, 0}, {-1, 0, 0}, 0};
    const double err = std::fabs(lz(st, src) - 152.0);
    check(err < 1e-12, "lz at the launch geometry", err, 1e-12);

    std::vector<AngularMomentumRecord> recs;
    for (int i = 0; i < 10; ++i) {
        const double s = 0.1 * (i + 1);
        recs.push_back({0.1 * i, 3.0 + 2.0 * s, 3.0, s, 0.0});
    }
    const double err_a = std::fabs(fit_alpha(recs) - 2.0);
    check(err_a < 1e-12, "least-squares alpha on exact data", err_a, 1e-12);
}

}  // namespace

int run_selftest() {
    failures = 0;
    check_hamiltonian();
    check_wolf();
    check_anisotropy();
    check_matched_k();
    check_gradients();
    check_moments();
    check_split_step();
    check_angular();
    std::printf("%s (%d failure%s)\n", failures ? "SELFTEST FAILED" : "selftest passed", failures,
                failures == 1 ? "" : "s");
    return failures;
}
