#pragma once

#include <span>
#include <vector>

#include "latkep/wave_grid.hpp"

namespace latkep {

// Per-time statistical moments of the wavepacket density |C|^2.
struct MomentSet {
    double norm = 0.0;
    Vec3 z{};      // mean position per axis
    Vec3 sigma{};  // standard deviation per axis
    Vec3 s{};      // signed skewness length per axis, s = sign(m3) |m3|^{1/3}
};

// p-th moment of the density along one axis: p = 0 total probability,
// p = 1 mean coordinate, p >= 2 central moments about the mean.
double central_moment(const WaveGrid& psi, int p, int axis);

Vec3 skewness_length(const WaveGrid& psi);

MomentSet moments(const WaveGrid& psi);

struct AngularMomenta {
    double lq = 0.0;  // quantum mean, (z - r_src) x k
    double lc = 0.0;  // semiclassical, (r_cl - r_src) x k
    double s = 0.0;   // intrinsic, s x k
};

// Signed planar cross products (z-components). k is the semiclassical
// quasimomentum of the paired classical run at the same time.
AngularMomenta angular_momenta(const Vec3& z, const Vec3& r_cl, const Vec3& s, const Vec3& k,
                               const CoulombSource& src);

struct AngularMomentumRecord {
    double t = 0.0;
    double lq = 0.0;
    double lc = 0.0;
    double s = 0.0;
    double alpha_s = 0.0;  // fitted alpha times s
};

// Least-squares scale through the origin: alpha = sum S (Lq - Lc) / sum S^2.
// Throws ValidationError when sum S^2 == 0 or fewer than 2 records.
double fit_alpha(std::span<const AngularMomentumRecord> series);

// <T> + <V> with the kinetic part summed on the reciprocal grid and the
// potential part on the sites.
double energy_expectation(const WaveGrid& psi, const PotentialSpec& pot);

}  // namespace latkep
