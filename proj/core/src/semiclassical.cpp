#include "latkep/semiclassical.hpp"

#include <cmath>
#include <cstdint>

namespace latkep {

namespace {

struct Deriv {
    Vec3 rdot;
    Vec3 kdot;
};

inline Deriv rhs(const Vec3& r, const Vec3& k, const LatticeParams& lat, const CoulombSource& src,
                 double min_dist_sq) {
    const double d2 = (r - src.position).norm_sq();
    if (d2 < min_dist_sq)
        throw NumericalGuardError("semiclassical integration approached the source singularity");
    return {group_velocity(k, lat), coulomb_kdot(r, src)};
}

}  // namespace

Trajectory integrate(const PhaseState& initial, const LatticeParams& lat, const CoulombSource& src,
                     const IntegrateOptions& opts) {
    lat.validate();
    if (!(opts.dt > 0.0) || !(opts.t_end > 0.0) || opts.sample_every < 1)
        throw ValidationError("integrate requires dt > 0, t_end > 0, sample_every >= 1");

    const double min_d2 = opts.min_source_distance * opts.min_source_distance;
    const std::int64_t blocks =
        std::max<std::int64_t>(1, std::llround(opts.t_end / (opts.dt * opts.sample_every)));
    const std::int64_t n_steps = blocks * opts.sample_every;

    Trajectory traj;
    traj.dt = opts.dt;
    traj.sample_dt = opts.dt * opts.sample_every;
    traj.samples.reserve(static_cast<std::size_t>(blocks) + 1);

    Vec3 r = initial.r, k = initial.k;
    const double z0 = initial.r.z;
    double e0 = 0.0;

    auto record = [&](std::int64_t step) {
        TrajectorySample s;
        s.t = initial.t + step * opts.dt;
        s.state = PhaseState{r, k, s.t};
        s.energy = hamiltonian_value(s.state, lat, src);
        s.lz = lz(s.state, src);
        s.lz_rate = lz_rate(s.state, lat);
        if (traj.samples.empty())
            e0 = s.energy;
        const double drift = std::fabs(s.energy - e0) / std::max(std::fabs(e0), 1e-300);
        traj.max_rel_energy_drift = std::max(traj.max_rel_energy_drift, drift);
        traj.samples.push_back(s);
    };

    record(0);
    const double h = opts.dt;
    for (std::int64_t step = 1; step <= n_steps; ++step) {
        const Deriv d1 = rhs(r, k, lat, src, min_d2);
        const Deriv d2 = rhs(r + d1.rdot * (0.5 * h), k + d1.kdot * (0.5 * h), lat, src, min_d2);
        const Deriv d3 = rhs(r + d2.rdot * (0.5 * h), k + d2.kdot * (0.5 * h), lat, src, min_d2);
        const Deriv d4 = rhs(r + d3.rdot * h, k + d3.kdot * h, lat, src, min_d2);
        r += (d1.rdot + 2.0 * d2.rdot + 2.0 * d3.rdot + d4.rdot) * (h / 6.0);
        k += (d1.kdot + 2.0 * d2.kdot + 2.0 * d3.kdot + d4.kdot) * (h / 6.0);
        traj.max_out_of_plane = std::max(traj.max_out_of_plane, std::fabs(r.z - z0));
        if (step % opts.sample_every == 0)
            record(step);
    }
    return traj;
}

double planarity_check(const PhaseState& initial, const LatticeParams& lat, const CoulombSource& src,
                       const IntegrateOptions& opts) {
    return integrate(initial, lat, src, opts).max_out_of_plane;
}

namespace {

// Vertex of the parabola through (-1,ym),(0,y0),(1,yp), in units of the spacing.
inline double parabola_offset(double ym, double y0, double yp) {
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0)
        return 0.0;
    double off = 0.5 * (ym - yp) / denom;
    if (off < -0.5) off = -0.5;
    if (off > 0.5) off = 0.5;
    return off;
}

inline double quad_interp(double ym, double y0, double yp, double u) {
    // Quadratic through the three samples, evaluated at offset u in [-1, 1].
    return y0 + 0.5 * u * (yp - ym) + 0.5 * u * u * (ym - 2.0 * y0 + yp);
}

}  // namespace

std::vector<ApsisEvent> apsides(const Trajectory& traj, const CoulombSource& src) {
    std::vector<ApsisEvent> events;
    const auto& s = traj.samples;
    if (s.size() < 3)
        throw ValidationError("apsides requires at least 3 trajectory samples");

    std::vector<double> radius(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        radius[i] = (s[i].state.r - src.position).norm();

    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const bool is_min = radius[i] < radius[i - 1] && radius[i] < radius[i + 1];
        const bool is_max = radius[i] > radius[i - 1] && radius[i] > radius[i + 1];
        if (!is_min && !is_max)
            continue;
        const double u = parabola_offset(radius[i - 1], radius[i], radius[i + 1]);
        ApsisEvent ev;
        ev.kind = is_min ? ApsisKind::perihelion : ApsisKind::aphelion;
        ev.t = s[i].t + u * traj.sample_dt;
        ev.radius = quad_interp(radius[i - 1], radius[i], radius[i + 1], u);
        PhaseState st;
        for (int ax = 0; ax < 3; ++ax) {
            st.r[ax] = quad_interp(s[i - 1].state.r[ax], s[i].state.r[ax], s[i + 1].state.r[ax], u);
            st.k[ax] = quad_interp(s[i - 1].state.k[ax], s[i].state.k[ax], s[i + 1].state.k[ax], u);
        }
        st.t = ev.t;
        ev.state = st;
        events.push_back(ev);
    }
    return events;
}

std::vector<double> perihelion_advance_angles(const std::vector<ApsisEvent>& events, const CoulombSource& src) {
    std::vector<double> angles;
    const ApsisEvent* prev = nullptr;
    for (const auto& ev : events) {
        if (ev.kind != ApsisKind::perihelion)
            continue;
        if (prev) {
            const Vec3 u = prev->state.r - src.position;
            const Vec3 v = ev.state.r - src.position;
            angles.push_back(std::atan2(cross_z(u, v), dot(u, v)));
        }
        prev = &ev;
    }
    return angles;
}

}  // namespace latkep
