#pragma once

#include <vector>

#include "latkep/lattice_model.hpp"

namespace latkep {

struct TrajectorySample {
    double t = 0.0;
    PhaseState state;   // k stored unwrapped; wrap_to_zone at the reporting layer
    double energy = 0.0;
    double lz = 0.0;
    double lz_rate = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // uniform spacing dt * sample_every, first at t = 0
    double dt = 0.0;
    double sample_dt = 0.0;
    double max_rel_energy_drift = 0.0;  // max |E(t)-E(0)| / max(|E(0)|, tiny) over samples
    double max_out_of_plane = 0.0;      // max |z(t) - z(0)| over every step
};

struct IntegrateOptions {
    double dt = 1e-4;
    double t_end = 1.0;
    int sample_every = 100;
    double min_source_distance = 1e-6;  // abort below this separation
};

// Classical fixed-step RK4 over the coupled (r, k) system
// dr/dt = group_velocity(k), dk/dt = coulomb_kdot(r).
// Throws NumericalGuardError if any substep comes closer than
// min_source_distance to the source.
Trajectory integrate(const PhaseState& initial, const LatticeParams& lat, const CoulombSource& src,
                     const IntegrateOptions& opts);

// Runs integrate on a 3-D state and returns the largest |z(t) - z(0)|
// recorded at every step. Stays at roundoff when z(0) = k_z(0) = 0 and the
// source lies in the initial plane; grows otherwise (reported, not an error).
double planarity_check(const PhaseState& initial, const LatticeParams& lat, const CoulombSource& src,
                       const IntegrateOptions& opts);

enum class ApsisKind { perihelion, aphelion };

struct ApsisEvent {
    double t = 0.0;
    ApsisKind kind = ApsisKind::perihelion;
    double radius = 0.0;
    PhaseState state;  // quadratically interpolated at the refined time
};

// Local extrema of |r(t) - r_src| located by 3-point comparison with
// parabolic time refinement. Empty for monotone (or constant) radius.
std::vector<ApsisEvent> apsides(const Trajectory& traj, const CoulombSource& src);

// Signed rotation angles between consecutive perihelion position vectors,
// measured relative to the source. One entry per perihelion pair.
std::vector<double> perihelion_advance_angles(const std::vector<ApsisEvent>& events, const CoulombSource& src);

}  // namespace latkep
