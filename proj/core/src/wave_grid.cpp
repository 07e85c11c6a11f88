#include "latkep/wave_grid.hpp"

#include <cmath>
#include <string>

namespace latkep {

std::size_t GridSpec::total_sites() const {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2];
}

double GridSpec::wavenumber(int axis, int index) const {
    const int N = n[axis];
    const int j = index < (N + 1) / 2 ? index : index - N;
    return 2.0 * M_PI * j / (N * lattice.constant(axis));
}

void GridSpec::validate() const {
    lattice.validate();
    for (int ax = 0; ax < dims(); ++ax) {
        if (n[ax] < 2)
            throw ValidationError("grid needs at least 2 sites on axis " + std::to_string(ax));
        if (origin[ax] < 0 || origin[ax] >= n[ax])
            throw ValidationError("grid origin index outside the grid on axis " + std::to_string(ax));
    }
    for (int ax = dims(); ax < 3; ++ax)
        if (n[ax] != 1)
            throw ValidationError("inactive axis " + std::to_string(ax) + " must have 1 site");
}

namespace {
// Compensated (Kahan) accumulator; keeps big-grid reductions deterministic
// and accurate in plain index order.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};
}  // namespace

double WaveGrid::norm_sq() const {
    Kahan acc;
    for (const auto& v : c)
        acc.add(std::norm(v));
    return acc.sum;
}

void WaveGrid::normalize() {
    const double n2 = norm_sq();
    if (n2 <= 0.0)
        throw ValidationError("cannot normalize a zero wave grid");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& v : c)
        v *= inv;
}

WaveGrid init_gaussian(const GridSpec& spec, const GaussianSpec& packet) {
    spec.validate();
    double max_const = 0.0;
    for (int ax = 0; ax < spec.dims(); ++ax)
        max_const = std::max(max_const, spec.lattice.constant(ax));
    if (packet.sigma < 2.0 * max_const)
        throw ValidationError("gaussian width sigma must be >= 2 lattice constants");
    for (int ax = 0; ax < spec.dims(); ++ax) {
        const double lo = spec.coord(ax, 0);
        const double hi = spec.coord(ax, spec.n[ax] - 1);
        if (packet.center[ax] - lo < 4.0 * packet.sigma || hi - packet.center[ax] < 4.0 * packet.sigma)
            throw ValidationError("grid too small: packet center closer than 4 sigma to a boundary on axis " +
                                  std::to_string(ax));
    }

    WaveGrid psi;
    psi.spec = spec;
    psi.c.resize(spec.total_sites());
    const double inv_8s2 = 1.0 / (8.0 * packet.sigma * packet.sigma);
    std::size_t flat = 0;
    for (int iz = 0; iz < spec.n[2]; ++iz) {
        const double z = spec.dims() > 2 ? spec.coord(2, iz) : 0.0;
        const double dz = z - (spec.dims() > 2 ? packet.center.z : 0.0);
        for (int iy = 0; iy < spec.n[1]; ++iy) {
            const double y = spec.dims() > 1 ? spec.coord(1, iy) : 0.0;
            const double dy = y - (spec.dims() > 1 ? packet.center.y : 0.0);
            for (int ix = 0; ix < spec.n[0]; ++ix, ++flat) {
                const double x = spec.coord(0, ix);
                const double dx = x - packet.center.x;
                const double r2 = dx * dx + dy * dy + dz * dz;
                const double phase = packet.k0.x * x + packet.k0.y * y + packet.k0.z * z;
                psi.c[flat] = std::polar(std::exp(-r2 * inv_8s2), phase);
            }
        }
    }
    psi.normalize();
    return psi;
}

std::vector<double> potential_on_sites(const GridSpec& spec, const PotentialSpec& pot) {
    spec.validate();
    std::vector<double> v(spec.total_sites());
    std::size_t flat = 0;
    for (int iz = 0; iz < spec.n[2]; ++iz) {
        const double z = spec.dims() > 2 ? spec.coord(2, iz) : 0.0;
        for (int iy = 0; iy < spec.n[1]; ++iy) {
            const double y = spec.dims() > 1 ? spec.coord(1, iy) : 0.0;
            for (int ix = 0; ix < spec.n[0]; ++ix, ++flat) {
                const Vec3 r{spec.coord(0, ix), y, z};
                v[flat] = pot.kind == PotentialSpec::Kind::coulomb ? coulomb_potential(r, pot.source)
                                                                   : dot(pot.gradient, r);
            }
        }
    }
    return v;
}

double boundary_mass(const WaveGrid& psi, int margin) {
    if (margin < 1)
        throw ValidationError("boundary_mass requires margin >= 1");
    const auto& spec = psi.spec;
    Kahan acc;
    std::size_t flat = 0;
    for (int iz = 0; iz < spec.n[2]; ++iz) {
        const bool zb = spec.dims() > 2 && (iz < margin || iz >= spec.n[2] - margin);
        for (int iy = 0; iy < spec.n[1]; ++iy) {
            const bool yb = spec.dims() > 1 && (iy < margin || iy >= spec.n[1] - margin);
            for (int ix = 0; ix < spec.n[0]; ++ix, ++flat) {
                const bool xb = ix < margin || ix >= spec.n[0] - margin;
                if (xb || yb || zb)
                    acc.add(std::norm(psi.c[flat]));
            }
        }
    }
    return acc.sum;
}

}  // namespace latkep
