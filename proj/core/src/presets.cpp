#include <cmath>
#include <functional>
#include <map>

#include "latkep/scenario.hpp"

namespace latkep {

namespace {

// Shared numbers for the square-lattice precession scenarios.
ScenarioConfig square_lattice_base() {
    ScenarioConfig cfg;
    cfg.engine = Engine::semiclassical;
    cfg.lattice = {1.0, 1.0, 1.0, 125.0, 125.0, 125.0, 2, DispersionKind::lattice};
    cfg.v1 = 20000.0;
    cfg.source_position = {0.0, -140.0, 0.0};
    cfg.initial = PhaseState{{0.0, 20.0, 0.0}, {-1.0, 0.0, 0.0}, 0.0};
    cfg.sc_epsilon = 0.0;
    cfg.integration = {1e-4, 550.0, 100};
    return cfg;
}

// Rectangular lattice with hoppings tied to the constants through the
// first-neighbor overlap 2(1 + d/a0)exp(-d/a0); a/a0 = 9.5 against
// b/a0 = 0.477 gives the effective-mass ratio 2.94 and a/b of about 20.
ScenarioConfig rectangular_base() {
    ScenarioConfig cfg;
    cfg.engine = Engine::semiclassical;
    const double a = 1.0;
    const double b = 0.477 / 9.5;
    cfg.lattice = {a, b, 1.0, wolf_hopping(9.5, 1.0), wolf_hopping(0.477, 1.0), 0.0, 2,
                   DispersionKind::lattice};
    cfg.source_position = {0.0, 0.0, 0.0};
    cfg.v1 = 0.6;  // sets the oscillation amplitude; not fixed by the scenario
    cfg.initial = PhaseState{{0.23 * a, 0.0, 0.0}, {0.0, 5.33 / b, 0.0}, 0.0};
    cfg.sc_epsilon = 0.0;
    cfg.integration = {1e-4, 80.0, 100};
    cfg.calibration["V1"] = "0.6";
    cfg.calibration["t_end"] = "80";
    return cfg;
}

// Shared numbers for the deep quasi-Bloch quantum scenarios: packet at
// (0, 32a), source at (0, -120a), V1 = 307200.
ScenarioConfig quasibloch_base() {
    ScenarioConfig cfg;
    cfg.engine = Engine::quantum;
    cfg.lattice = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2, DispersionKind::lattice};
    cfg.v1 = 307200.0;
    cfg.source_position = {0.0, -120.0, 0.0};
    cfg.packet = {{0.0, 32.0, 0.0}, {0.0, 0.0, 0.0}, 4.0};
    cfg.initial = PhaseState{cfg.packet.center, cfg.packet.k0, 0.0};
    cfg.qm_epsilon = 0.5;
    cfg.sc_epsilon = 0.0;
    cfg.grid_n = {512, 512, 1};
    cfg.grid_origin = {256, 256, 0};
    cfg.integration = {1e-4, 1.0, 100};
    cfg.outputs.density_initial = true;
    cfg.outputs.density_final = true;
    cfg.calibration["A"] = "1";
    cfg.calibration["B"] = "1";
    cfg.calibration["sigma"] = "4";
    cfg.calibration["t_end"] = "1";
    cfg.calibration["epsilon_quantum"] = "0.5";
    return cfg;
}

using Factory = std::function<ScenarioConfig()>;

const std::map<std::string, Factory>& registry() {
    static const std::map<std::string, Factory> reg = {
        {"fig1-plane",
         [] {
             ScenarioConfig cfg;
             cfg.name = "fig1-plane";
             cfg.description = "3-D run started in the lattice plane; stays planar";
             cfg.engine = Engine::semiclassical;
             cfg.lattice = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3, DispersionKind::lattice};
             cfg.v1 = 5.0;
             cfg.source_position = {0.0, 0.0, 0.0};
             cfg.initial = PhaseState{{0.0, 2.0, 0.0}, {1.1, 0.0, 0.0}, 0.0};
             cfg.integration = {1e-4, 40.0, 100};
             cfg.calibration["V1"] = "5";
             cfg.calibration["k0"] = "1.1,0,0";
             return cfg;
         }},
        {"fig2-lattice",
         [] {
             ScenarioConfig cfg = rectangular_base();
             cfg.name = "fig2-lattice";
             cfg.description = "rectangular lattice, a/b ~ 20: quasi-1-D oscillation along Y";
             return cfg;
         }},
        {"fig2-continuum",
         [] {
             ScenarioConfig cfg = rectangular_base();
             cfg.name = "fig2-continuum";
             cfg.description = "anisotropic-mass continuum limit of fig2-lattice: 2-D motion";
             cfg.lattice.kind = DispersionKind::continuum;
             // Same kinetic energy as the lattice start, expressed in the
             // quadratic band.
             cfg.initial.k.y = inverse_continuum_matched_k(cfg.initial.k.y, cfg.lattice.b);
             cfg.calibration["k0y"] = "energy-matched from the lattice value";
             return cfg;
         }},
        {"fig3-lattice",
         [] {
             ScenarioConfig cfg = square_lattice_base();
             cfg.name = "fig3-lattice";
             cfg.description = "square lattice a=1, A=125, V1=20000: precessing quasi-ellipses";
             return cfg;
         }},
        {"fig3-continuum",
         [] {
             ScenarioConfig cfg = square_lattice_base();
             cfg.name = "fig3-continuum";
             cfg.description = "isotropic continuum limit of fig3-lattice: closed ellipse";
             cfg.lattice.kind = DispersionKind::continuum;
             cfg.initial.k.x = inverse_continuum_matched_k(cfg.initial.k.x, cfg.lattice.a);
             cfg.integration.t_end = 200.0;
             return cfg;
         }},
        {"fig5-quasibloch",
         [] {
             ScenarioConfig cfg = quasibloch_base();
             cfg.name = "fig5-quasibloch";
             cfg.description = "Gaussian packet released at rest: quasi-Bloch oscillation in z_y";
             return cfg;
         }},
        {"fig5-quasibloch-3d",
         [] {
             ScenarioConfig cfg = quasibloch_base();
             cfg.name = "fig5-quasibloch-3d";
             cfg.description = "3-D version of fig5-quasibloch on a cubic grid";
             cfg.lattice.dims = 3;
             cfg.grid_n = {64, 64, 64};
             cfg.grid_origin = {32, 0, 32};
             cfg.integration = {2e-4, 1.0, 50};
             cfg.calibration["grid"] = "64x64x64";
             cfg.calibration["dt"] = "2e-4";
             return cfg;
         }},
        {"fig7",
         [] {
             ScenarioConfig cfg = quasibloch_base();
             cfg.name = "fig7";
             cfg.description = "packet launched with k_x = -1: paired quantum/semiclassical run";
             cfg.engine = Engine::paired;
             cfg.packet.k0 = {-1.0, 0.0, 0.0};
             cfg.initial.k = cfg.packet.k0;
             return cfg;
         }},
        {"fig8-sweep1d",
         [] {
             ScenarioConfig cfg;
             cfg.name = "fig8-sweep1d";
             cfg.description = "1-D Coulomb packet; base scenario for the skewness continuum sweep";
             cfg.engine = Engine::quantum;
             cfg.lattice = {1.0, 1.0, 1.0, 0.5, 0.0, 0.0, 1, DispersionKind::lattice};
             cfg.v1 = 20.0;  // weak enough that the band skew dominates the tail
             cfg.source_position = {0.0, 0.0, 0.0};
             cfg.qm_epsilon = 0.5;  // held fixed across refinements
             cfg.packet = {{128.0, 0.0, 0.0}, {continuum_matched_k(0.5, 1.0), 0.0, 0.0}, 4.0};
             cfg.initial = PhaseState{cfg.packet.center, cfg.packet.k0, 0.0};
             cfg.grid_n = {512, 1, 1};
             cfg.grid_origin = {256, 0, 0};
             cfg.integration = {1e-4, 2.0, 100};
             cfg.outputs.density_initial = false;
             cfg.calibration["A"] = "0.5";
             cfg.calibration["V1"] = "500";
             cfg.calibration["sigma"] = "4";
             cfg.calibration["epsilon_quantum"] = "0.5 (fixed, not a/2)";
             return cfg;
         }},
        {"bloch-gradient",
         [] {
             ScenarioConfig cfg;
             cfg.name = "bloch-gradient";
             cfg.description = "uniform-gradient test potential: closed-form Bloch oscillation";
             cfg.engine = Engine::quantum;
             cfg.lattice = {1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1, DispersionKind::lattice};
             cfg.potential_kind = PotentialSpec::Kind::uniform_gradient;
             cfg.gradient = {0.5, 0.0, 0.0};
             cfg.packet = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 4.0};
             cfg.initial = PhaseState{cfg.packet.center, cfg.packet.k0, 0.0};
             cfg.grid_n = {512, 1, 1};
             cfg.grid_origin = {256, 0, 0};
             cfg.integration = {2e-4, 26.0, 50};
             cfg.calibration["F"] = "0.5";
             return cfg;
         }},
    };
    return reg;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, factory] : registry())
        names.push_back(name);
    return names;
}

ScenarioConfig preset(const std::string& name) {
    const auto it = registry().find(name);
    if (it == registry().end())
        throw ValidationError("unknown preset '" + name + "'");
    return it->second();
}

}  // namespace latkep
