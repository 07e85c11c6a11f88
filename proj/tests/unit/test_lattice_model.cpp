#include <doctest.h>

#include <cmath>
#include <random>

#include "latkep/lattice_model.hpp"

using namespace latkep;

namespace {
const LatticeParams kSquare{1, 1, 1, 125, 125, 125, 2, DispersionKind::lattice};
const CoulombSource kImpurity{{0, -140, 0}, 20000, 0};
}  // namespace

TEST_CASE("hamiltonian value on the square lattice") {
    PhaseState st{{0, 20, 0}, {-1, 0, 0}, 0};
    // 250(1 - cos 1) - 20000/160, worked out by hand.
    CHECK(hamiltonian_value(st, kSquare, kImpurity) == doctest::Approx(-10.075576467034935).epsilon(1e-12));

    SUBCASE("zero momentum, no source") {
        CoulombSource off{{0, 0, 0}, 0, 1.0};
        PhaseState rest{{3, 4, 0}, {0, 0, 0}, 0};
        CHECK(hamiltonian_value(rest, kSquare, off) == 0.0);
    }
    SUBCASE("continuum kind matches k^2/2m") {
        LatticeParams cont = kSquare;
        cont.kind = DispersionKind::continuum;
        // m = 1/(2*125) = 0.004, so T = 125 k^2 and the launch point sits at E = 0.
        CHECK(hamiltonian_value(st, cont, kImpurity) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("singular potential at the unsoftened source") {
        PhaseState at_src{kImpurity.position, {0, 0, 0}, 0};
        CHECK_THROWS_AS(hamiltonian_value(at_src, kSquare, kImpurity), NumericalGuardError);
    }
}

TEST_CASE("group velocity special points") {
    CHECK(group_velocity({0, 0, 0}, kSquare) == Vec3{0, 0, 0});
    CHECK(group_velocity({M_PI / 2, 0, 0}, kSquare).x == doctest::Approx(250.0).epsilon(1e-14));
    CHECK(group_velocity({M_PI, 0, 0}, kSquare).x == doctest::Approx(0.0));
}

TEST_CASE("group velocity equals the finite-difference gradient of the kinetic energy") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> uk(-3.0, 3.0), uh(0.5, 5.0), uc(0.5, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
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
            CHECK(std::fabs(fd - v[ax]) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("coulomb kdot is attractive and matches -grad V") {
    SUBCASE("on-axis inverse square") {
        CoulombSource src{{2, 1, -1}, 50, 0};
        const Vec3 kd = coulomb_kdot(src.position + Vec3{3, 0, 0}, src);
        CHECK(kd.x == doctest::Approx(-50.0 / 9.0).epsilon(1e-14));
        CHECK(kd.y == 0.0);
        CHECK(kd.z == 0.0);
    }
    SUBCASE("zero at a softened center") {
        CoulombSource src{{1, 2, 3}, 50, 0.5};
        CHECK(coulomb_kdot(src.position, src) == Vec3{0, 0, 0});
    }
    SUBCASE("finite-difference oracle") {
        std::mt19937 rng(55);
        std::uniform_real_distribution<double> ur(-15.0, 15.0);
        for (int trial = 0; trial < 100; ++trial) {
            CoulombSource src{{ur(rng), ur(rng), ur(rng)}, 10.0 + trial, trial % 3 ? 0.0 : 0.8};
            Vec3 r{ur(rng), ur(rng), ur(rng)};
            if ((r - src.position).norm() < 1.0)
                r.x += 4.0;
            const Vec3 kd = coulomb_kdot(r, src);
            for (int ax = 0; ax < 3; ++ax) {
                const double h = 1e-5;
                Vec3 rp = r, rm = r;
                rp[ax] += h;
                rm[ax] -= h;
                const double fd = -(coulomb_potential(rp, src) - coulomb_potential(rm, src)) / (2 * h);
                CHECK(std::fabs(fd - kd[ax]) <= 1e-8 * std::max(kd.norm(), 1e-6));
            }
        }
    }
}

TEST_CASE("lz relative to the source") {
    CoulombSource src{{0, -140, 0}, 1, 0};
    CHECK(lz(PhaseState{{0, 12, 0}, {-1, 0, 0}, 0}, src) == doctest::Approx(152.0));
    CHECK(lz(PhaseState{{5, 8, 0}, {0, 0, 0}, 0}, src) == 0.0);
    CHECK(lz(PhaseState{src.position, {0.3, -0.7, 0}, 0}, src) == 0.0);
}

TEST_CASE("lz rate vanishes where symmetry demands") {
    CHECK(lz_rate(PhaseState{{0, 0, 0}, {0, 0, 0}, 0}, kSquare) == 0.0);
    // a = b, A = B, kx = ky: the two band torques cancel.
    CHECK(lz_rate(PhaseState{{1, 2, 0}, {0.37, 0.37, 0}, 0}, kSquare) == doctest::Approx(0.0));
    LatticeParams iso = kSquare;
    iso.kind = DispersionKind::continuum;
    CHECK(lz_rate(PhaseState{{1, 2, 0}, {0.3, -0.9, 0}, 0}, iso) == 0.0);
}

TEST_CASE("effective mass") {
    CHECK(effective_mass(kSquare, 0) == doctest::Approx(0.004).epsilon(1e-15));
    LatticeParams lat{1, 1, 1, 0.5, 0, 0, 1, DispersionKind::lattice};
    CHECK(effective_mass(lat, 0) == doctest::Approx(1.0));
    SUBCASE("halving the constant quadruples the mass") {
        LatticeParams half = lat;
        half.a = 0.5;
        CHECK(effective_mass(half, 0) == doctest::Approx(4.0 * effective_mass(lat, 0)));
    }
    SUBCASE("zero hopping") {
        CHECK_THROWS_AS(effective_mass(lat, 1), ValidationError);
    }
}

TEST_CASE("wolf hopping") {
    CHECK(wolf_hopping(0.0, 1.0) == doctest::Approx(2.0));
    CHECK(wolf_hopping(9.5, 1.0) == doctest::Approx(1.5718884276417126e-3).epsilon(1e-12));
    CHECK(wolf_hopping(0.477, 1.0) == doctest::Approx(1.8333780315328136).epsilon(1e-12));
    SUBCASE("strictly decreasing for d > 0, continuous at 0") {
        double prev = wolf_hopping(1e-9, 1.0);
        CHECK(prev == doctest::Approx(2.0).epsilon(1e-8));
        for (int i = 1; i <= 1000; ++i) {
            const double v = wolf_hopping(0.02 * i, 1.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("anisotropy solver") {
    SUBCASE("reported solution") {
        const double beta = solve_anisotropy(2.94, 9.5);
        CHECK(beta == doctest::Approx(0.477).epsilon(2.1e-3));  // 0.477 +/- 0.001
        const double resid =
            wolf_hopping(beta, 1.0) * beta * beta / (wolf_hopping(9.5, 1.0) * 9.5 * 9.5);
        CHECK(resid == doctest::Approx(2.94).epsilon(1e-9));
    }
    SUBCASE("xi = 1 on the rising branch returns a/a0") {
        CHECK(solve_anisotropy(1.0, 1.5) == doctest::Approx(1.5).epsilon(1e-9));
    }
    SUBCASE("residual closes for arbitrary xi") {
        const double pairs[][2] = {{0.3, 2.0}, {0.9, 2.0}, {2.2, 6.0}, {0.5, 0.8}, {2.94, 9.5}};
        for (const auto& [xi, alpha] : pairs) {
            const double beta = solve_anisotropy(xi, alpha);
            const double xi_back = wolf_hopping(beta, 1.0) * beta * beta /
                                   (wolf_hopping(alpha, 1.0) * alpha * alpha);
            CHECK(xi_back == doctest::Approx(xi).epsilon(1e-9));
        }
    }
    SUBCASE("no root when the demanded ratio exceeds the band maximum") {
        CHECK_THROWS_AS(solve_anisotropy(5.0, 2.0), ValidationError);
    }
}

TEST_CASE("energy-matched momentum") {
    CHECK(continuum_matched_k(0.0, 1.0) == 0.0);
    CHECK(continuum_matched_k(1.0, 1.0) == doctest::Approx(M_PI / 3.0).epsilon(1e-14));
    CHECK(continuum_matched_k(1.0, 1e-4) == doctest::Approx(1.0).epsilon(1e-8));
    SUBCASE("round trip against the inverse") {
        for (int i = 1; i <= 90; ++i) {
            const double kc = 0.001 * i;
            const double rt = inverse_continuum_matched_k(continuum_matched_k(kc, 1.0), 1.0);
            CHECK(rt == doctest::Approx(kc).epsilon(1e-12));
        }
    }
    SUBCASE("domain error outside the band") {
        CHECK_THROWS_AS(continuum_matched_k(2.1, 1.0), ValidationError);
    }
}

TEST_CASE("brillouin zone wrap") {
    LatticeParams lat = kSquare;
    const Vec3 w = wrap_to_zone({2.0 * M_PI + 0.3, -M_PI - 0.1, 0}, lat);
    CHECK(w.x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(w.y == doctest::Approx(M_PI - 0.1).epsilon(1e-12));
    LatticeParams cont = lat;
    cont.kind = DispersionKind::continuum;
    const Vec3 u = wrap_to_zone({7.0, -9.0, 0}, cont);
    CHECK(u.x == 7.0);
    CHECK(u.y == -9.0);
}
