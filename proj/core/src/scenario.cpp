#include "latkep/scenario.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace latkep {

PotentialSpec ScenarioConfig::quantum_potential() const {
    if (potential_kind == PotentialSpec::Kind::coulomb)
        return PotentialSpec::coulomb(quantum_source());
    return PotentialSpec::uniform_gradient(gradient);
}

GridSpec ScenarioConfig::grid_spec() const {
    GridSpec spec;
    spec.lattice = lattice;
    spec.n = grid_n;
    spec.origin = grid_origin;
    return spec;
}

void ScenarioConfig::validate() const {
    lattice.validate();
    if (name.empty())
        throw ValidationError("scenario name must not be empty");
    if (!(integration.dt > 0.0) || !(integration.t_end > 0.0) || integration.sample_every < 1)
        throw ValidationError("integration requires dt > 0, t_end > 0, sample_every >= 1");
    if (sc_epsilon < 0.0 || qm_epsilon < 0.0)
        throw ValidationError("softening epsilon must be >= 0");
    if (engine != Engine::semiclassical) {
        grid_spec().validate();
        if (!(packet.sigma > 0.0))
            throw ValidationError("quantum runs need a positive packet sigma");
    }
    for (int ax = 0; ax < 3; ++ax) {
        if (!std::isfinite(source_position[ax]) || !std::isfinite(initial.r[ax]) ||
            !std::isfinite(initial.k[ax]) || !std::isfinite(packet.center[ax]) ||
            !std::isfinite(packet.k0[ax]) || !std::isfinite(gradient[ax]))
            throw ValidationError("non-finite value in scenario configuration");
    }
    if (!std::isfinite(v1))
        throw ValidationError("non-finite V1");
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
    return a.name == b.name && a.engine == b.engine && a.lattice.a == b.lattice.a &&
           a.lattice.b == b.lattice.b && a.lattice.c == b.lattice.c && a.lattice.A == b.lattice.A &&
           a.lattice.B == b.lattice.B && a.lattice.C == b.lattice.C && a.lattice.dims == b.lattice.dims &&
           a.lattice.kind == b.lattice.kind && a.source_position == b.source_position && a.v1 == b.v1 &&
           a.sc_epsilon == b.sc_epsilon && a.qm_epsilon == b.qm_epsilon &&
           a.potential_kind == b.potential_kind && a.gradient == b.gradient &&
           a.initial.r == b.initial.r && a.initial.k == b.initial.k &&
           a.packet.center == b.packet.center && a.packet.k0 == b.packet.k0 &&
           a.packet.sigma == b.packet.sigma && a.grid_n == b.grid_n && a.grid_origin == b.grid_origin &&
           a.integration.dt == b.integration.dt && a.integration.t_end == b.integration.t_end &&
           a.integration.sample_every == b.integration.sample_every &&
           a.outputs.series == b.outputs.series && a.outputs.density_initial == b.outputs.density_initial &&
           a.outputs.density_final == b.outputs.density_final;
}

DensityGrid density_snapshot(const WaveGrid& psi) {
    const auto& spec = psi.spec;
    DensityGrid g;
    g.nx = spec.n[0];
    g.ny = spec.dims() > 1 ? spec.n[1] : 1;
    g.x0 = spec.coord(0, 0);
    g.y0 = spec.dims() > 1 ? spec.coord(1, 0) : 0.0;
    g.a = spec.lattice.a;
    g.b = spec.lattice.b;
    g.values.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
    std::size_t flat = 0;
    for (int iz = 0; iz < spec.n[2]; ++iz)
        for (int iy = 0; iy < spec.n[1]; ++iy)
            for (int ix = 0; ix < spec.n[0]; ++ix, ++flat)
                g.values[static_cast<std::size_t>(iy) * g.nx + ix] += std::norm(psi.c[flat]);
    return g;
}

namespace {

long step_count(const IntegrationParams& ip) {
    const long blocks = std::max<long>(1, std::lround(ip.t_end / (ip.dt * ip.sample_every)));
    return blocks * ip.sample_every;
}

void record_metadata(RunBundle& bundle) {
    const auto& cfg = bundle.cfg;
    auto& md = bundle.metadata;
    auto put = [&](const std::string& key, double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        md[key] = os.str();
    };
    md["scenario"] = cfg.name;
    md["engine"] = cfg.engine == Engine::semiclassical ? "semiclassical"
                   : cfg.engine == Engine::quantum     ? "quantum"
                                                       : "paired";
    md["kind"] = cfg.lattice.kind == DispersionKind::lattice ? "lattice" : "continuum";
    put("a", cfg.lattice.a);
    put("b", cfg.lattice.b);
    put("A", cfg.lattice.A);
    put("B", cfg.lattice.B);
    if (cfg.lattice.dims > 2) {
        put("c", cfg.lattice.c);
        put("C", cfg.lattice.C);
    }
    put("V1", cfg.v1);
    put("dt", cfg.integration.dt);
    put("t_end", cfg.integration.t_end);
    md["sample_every"] = std::to_string(cfg.integration.sample_every);
    if (cfg.engine != Engine::semiclassical) {
        put("sigma", cfg.packet.sigma);
        put("epsilon_quantum", cfg.qm_epsilon);
        md["grid"] = std::to_string(cfg.grid_n[0]) + "x" + std::to_string(cfg.grid_n[1]) +
                     (cfg.lattice.dims > 2 ? "x" + std::to_string(cfg.grid_n[2]) : "");
    }
    if (cfg.engine != Engine::quantum)
        put("epsilon_semiclassical", cfg.sc_epsilon);
    for (const auto& [key, value] : cfg.calibration)
        md["calibration." + key] = value;
}

RunBundle run_semiclassical(const ScenarioConfig& cfg) {
    RunBundle bundle;
    bundle.cfg = cfg;
    IntegrateOptions opts;
    opts.dt = cfg.integration.dt;
    opts.t_end = cfg.integration.t_end;
    opts.sample_every = cfg.integration.sample_every;
    bundle.trajectory = integrate(cfg.initial, cfg.lattice, cfg.semiclassical_source(), opts);
    bundle.apsis_events = apsides(*bundle.trajectory, cfg.semiclassical_source());
    const auto angles = perihelion_advance_angles(bundle.apsis_events, cfg.semiclassical_source());
    double mean_angle = std::numeric_limits<double>::quiet_NaN();
    if (!angles.empty()) {
        mean_angle = 0.0;
        for (double a : angles)
            mean_angle += a;
        mean_angle /= static_cast<double>(angles.size());
    }
    bundle.summary = {cfg.name, 1.0, "precession_per_orbit", mean_angle};
    return bundle;
}

RunBundle run_quantum(const ScenarioConfig& cfg) {
    RunBundle bundle;
    bundle.cfg = cfg;
    WaveGrid psi = init_gaussian(cfg.grid_spec(), cfg.packet);
    if (cfg.outputs.density_initial)
        bundle.density_initial = density_snapshot(psi);
    PropagateOptions opts;
    opts.sample_every = cfg.integration.sample_every;
    bundle.log = propagate(psi, cfg.integration.dt, step_count(cfg.integration), cfg.quantum_potential(), opts);
    if (cfg.outputs.density_final)
        bundle.density_final = density_snapshot(psi);
    bundle.summary = {cfg.name, 1.0, "s_x_final", bundle.log->samples.back().moments.s.x};
    return bundle;
}

template <typename Fn>
RunBundle with_scenario_context(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        throw ValidationError("scenario '" + name + "': " + e.what());
    } catch (const NumericalGuardError& e) {
        throw NumericalGuardError("scenario '" + name + "': " + e.what());
    }
}

}  // namespace

RunBundle run_scenario(const ScenarioConfig& cfg) {
    if (cfg.engine == Engine::paired)
        return paired_run(cfg);
    return with_scenario_context(cfg.name, [&] {
        cfg.validate();
        RunBundle bundle = cfg.engine == Engine::semiclassical ? run_semiclassical(cfg) : run_quantum(cfg);
        record_metadata(bundle);
        return bundle;
    });
}

RunBundle paired_run(const ScenarioConfig& cfg) {
    return with_scenario_context(cfg.name, [&] {
        cfg.validate();
        if (cfg.potential_kind != PotentialSpec::Kind::coulomb)
            throw ValidationError("paired runs require the Coulomb potential");

        // The classical side starts exactly at the packet mean and momentum.
        ScenarioConfig sc = cfg;
        sc.initial = PhaseState{cfg.packet.center, cfg.packet.k0, 0.0};

        RunBundle bundle = run_quantum(sc);
        RunBundle classical = run_semiclassical(sc);
        bundle.trajectory = std::move(classical.trajectory);
        bundle.apsis_events = std::move(classical.apsis_events);

        const auto& traj = bundle.trajectory->samples;
        const auto& qlog = bundle.log->samples;
        if (traj.size() != qlog.size())
            throw ValidationError("paired run produced mismatched sample counts");

        const CoulombSource src = cfg.semiclassical_source();
        bundle.angular.reserve(traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const Vec3 k = wrap_to_zone(traj[i].state.k, cfg.lattice);
            const AngularMomenta am =
                angular_momenta(qlog[i].moments.z, traj[i].state.r, qlog[i].moments.s, k, src);
            bundle.angular.push_back({traj[i].t, am.lq, am.lc, am.s, 0.0});
        }
        double ssq = 0.0;
        for (const auto& rec : bundle.angular)
            ssq += rec.s * rec.s;
        if (ssq > 0.0) {
            bundle.alpha = fit_alpha(bundle.angular);
            bundle.alpha_valid = true;
            for (auto& rec : bundle.angular)
                rec.alpha_s = bundle.alpha * rec.s;
        }
        bundle.summary = {cfg.name, 1.0, "alpha", bundle.alpha};
        record_metadata(bundle);
        return bundle;
    });
}

}  // namespace latkep
