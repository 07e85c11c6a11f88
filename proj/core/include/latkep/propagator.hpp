#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "latkep/observables.hpp"
#include "latkep/wave_grid.hpp"

namespace latkep {

// Second-order split-operator step:
//   psi <- e^{-iV dt/2} F^{-1}[ e^{-iT(k) dt} F[ e^{-iV dt/2} psi ] ]
// with F the unnormalized FFT per active axis and the 1/N rescaling applied
// after the inverse transform. Phase tables are precomputed for a fixed
// (grid, potential, dt); norm is preserved to roundoff per step.
class SplitOperator {
  public:
    SplitOperator(const GridSpec& spec, const PotentialSpec& pot, double dt);
    ~SplitOperator();
    SplitOperator(const SplitOperator&) = delete;
    SplitOperator& operator=(const SplitOperator&) = delete;

    void step(WaveGrid& psi) const;
    void steps(WaveGrid& psi, long n) const;

    double dt() const { return dt_; }
    const std::vector<double>& site_potential() const { return potential_; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    double dt_;
    std::vector<double> potential_;
};

struct PropagateOptions {
    int sample_every = 100;
    int boundary_margin = 4;
    double boundary_threshold = 1e-4;  // abort above this edge mass
    bool record_energy = true;
};

struct PropagationSample {
    double t = 0.0;
    MomentSet moments;
    double energy = 0.0;
    double boundary_mass = 0.0;
};

struct PropagationLog {
    std::vector<PropagationSample> samples;  // first sample at t = 0
    double max_norm_drift = 0.0;             // max |norm - 1| over samples
};

// Repeated split steps with observables sampled every sample_every steps
// (plus the initial state). Throws NumericalGuardError on boundary
// contamination or non-finite coefficients.
PropagationLog propagate(WaveGrid& psi, double dt, long n_steps, const PotentialSpec& pot,
                         const PropagateOptions& opts);

// <T> evaluated on the reciprocal grid (one forward transform).
double kinetic_expectation(const WaveGrid& psi);

}  // namespace latkep
