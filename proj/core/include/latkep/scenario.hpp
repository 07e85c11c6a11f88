#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latkep/observables.hpp"
#include "latkep/propagator.hpp"
#include "latkep/semiclassical.hpp"
#include "latkep/wave_grid.hpp"

namespace latkep {

enum class Engine { semiclassical, quantum, paired };

struct IntegrationParams {
    double dt = 1e-4;
    double t_end = 1.0;
    int sample_every = 100;
};

struct OutputRequest {
    bool series = true;
    bool density_initial = false;
    bool density_final = false;
};

// Fully resolved description of one run. Every physical default a preset
// fills in is also flagged in `calibration`, so run outputs are
// self-describing.
struct ScenarioConfig {
    std::string name;
    std::string description;
    Engine engine = Engine::semiclassical;

    LatticeParams lattice;
    Vec3 source_position{};
    double v1 = 0.0;
    double sc_epsilon = 0.0;  // softening used by the semiclassical engine
    double qm_epsilon = 0.0;  // softening used on the quantum grid
    PotentialSpec::Kind potential_kind = PotentialSpec::Kind::coulomb;
    Vec3 gradient{};

    PhaseState initial;   // semiclassical initial conditions
    GaussianSpec packet;  // quantum initial packet

    std::array<int, 3> grid_n{1, 1, 1};
    std::array<int, 3> grid_origin{0, 0, 0};

    IntegrationParams integration;
    OutputRequest outputs;
    std::map<std::string, std::string> calibration;

    CoulombSource semiclassical_source() const { return {source_position, v1, sc_epsilon}; }
    CoulombSource quantum_source() const { return {source_position, v1, qm_epsilon}; }
    PotentialSpec quantum_potential() const;
    GridSpec grid_spec() const;
    void validate() const;
};

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

// 2-D probability-density snapshot (3-D grids are summed over z).
struct DensityGrid {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;  // coordinates of the (0,0) corner site
    double a = 1.0, b = 1.0;
    std::vector<double> values;  // row-major, ny rows of nx
};

DensityGrid density_snapshot(const WaveGrid& psi);

struct SummaryRow {
    std::string scenario;
    double scale = 1.0;
    std::string quantity;
    double value = 0.0;
};

struct RunBundle {
    ScenarioConfig cfg;
    std::optional<Trajectory> trajectory;
    std::optional<PropagationLog> log;
    std::vector<AngularMomentumRecord> angular;  // paired runs only
    double alpha = 0.0;
    bool alpha_valid = false;
    std::vector<ApsisEvent> apsis_events;  // semiclassical runs only
    std::optional<DensityGrid> density_initial;
    std::optional<DensityGrid> density_final;
    std::map<std::string, std::string> metadata;
    SummaryRow summary;
};

// Executes the engines requested by cfg; deterministic given cfg. Engine
// errors are rethrown with the scenario name attached.
RunBundle run_scenario(const ScenarioConfig& cfg);

// Quantum and semiclassical run on a shared time base (classical initial
// conditions taken from the packet spec), plus the angular-momentum series
// L_q, L_c, S and the fitted alpha.
RunBundle paired_run(const ScenarioConfig& cfg);

// Continuum-limit sweep: lattice constants scaled by each entry, hoppings
// rescaled to preserve the effective masses, initial momenta re-matched at
// constant kinetic energy, grid refined at fixed physical extent. Scales must
// be strictly decreasing.
std::vector<SummaryRow> continuum_sweep(const ScenarioConfig& base, const std::vector<double>& scales);

std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

}  // namespace latkep
