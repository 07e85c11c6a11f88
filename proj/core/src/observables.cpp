#include "latkep/observables.hpp"

#include <cmath>

#include "latkep/propagator.hpp"

namespace latkep {

namespace {
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Sum of w(coord) |C|^2 along one axis with an arbitrary per-site weight.
template <typename F>
double axis_weighted_sum(const WaveGrid& psi, int axis, F weight) {
    const auto& spec = psi.spec;
    Kahan acc;
    std::size_t flat = 0;
    for (int iz = 0; iz < spec.n[2]; ++iz) {
        for (int iy = 0; iy < spec.n[1]; ++iy) {
            for (int ix = 0; ix < spec.n[0]; ++ix, ++flat) {
                const int idx = axis == 0 ? ix : (axis == 1 ? iy : iz);
                acc.add(weight(spec.coord(axis, idx)) * std::norm(psi.c[flat]));
            }
        }
    }
    return acc.sum;
}
}  // namespace

double central_moment(const WaveGrid& psi, int p, int axis) {
    if (p < 0)
        throw ValidationError("central_moment requires p >= 0");
    if (axis < 0 || axis >= psi.spec.dims())
        throw ValidationError("central_moment axis outside the grid dimensions");
    const double norm = psi.norm_sq();
    if (norm <= 0.0)
        throw ValidationError("central_moment of a zero state");
    if (p == 0)
        return norm;
    const double mean = axis_weighted_sum(psi, axis, [](double x) { return x; }) / norm;
    if (p == 1)
        return mean;
    return axis_weighted_sum(psi, axis, [&](double x) { return std::pow(x - mean, p); }) / norm;
}

Vec3 skewness_length(const WaveGrid& psi) {
    Vec3 s{};
    for (int ax = 0; ax < psi.spec.dims(); ++ax)
        s[ax] = std::cbrt(central_moment(psi, 3, ax));
    return s;
}

MomentSet moments(const WaveGrid& psi) {
    MomentSet m;
    m.norm = psi.norm_sq();
    for (int ax = 0; ax < psi.spec.dims(); ++ax) {
        m.z[ax] = central_moment(psi, 1, ax);
        m.sigma[ax] = std::sqrt(central_moment(psi, 2, ax));
        m.s[ax] = std::cbrt(central_moment(psi, 3, ax));
    }
    return m;
}

AngularMomenta angular_momenta(const Vec3& z, const Vec3& r_cl, const Vec3& s, const Vec3& k,
                               const CoulombSource& src) {
    AngularMomenta out;
    out.lq = cross_z(z - src.position, k);
    out.lc = cross_z(r_cl - src.position, k);
    out.s = cross_z(s, k);
    return out;
}

double fit_alpha(std::span<const AngularMomentumRecord> series) {
    if (series.size() < 2)
        throw ValidationError("fit_alpha needs at least 2 records");
    Kahan num, den;
    for (const auto& rec : series) {
        num.add(rec.s * (rec.lq - rec.lc));
        den.add(rec.s * rec.s);
    }
    if (den.sum == 0.0)
        throw ValidationError("fit_alpha is degenerate: sum S^2 == 0");
    return num.sum / den.sum;
}

double energy_expectation(const WaveGrid& psi, const PotentialSpec& pot) {
    const std::vector<double> v = potential_on_sites(psi.spec, pot);
    Kahan pot_acc;
    for (std::size_t i = 0; i < psi.c.size(); ++i)
        pot_acc.add(v[i] * std::norm(psi.c[i]));
    return kinetic_expectation(psi) + pot_acc.sum;
}

}  // namespace latkep
