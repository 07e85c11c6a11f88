#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "latkep/lattice_model.hpp"

namespace latkep {

// Finite periodic site grid. Array index i on an axis maps to the physical
// site n = i - origin (coordinate n * lattice constant); storage is row-major
// with x fastest: flat = (iz * Ny + iy) * Nx + ix.
struct GridSpec {
    LatticeParams lattice;          // dims taken from here
    std::array<int, 3> n{1, 1, 1};  // sites per axis (1 on inactive axes)
    std::array<int, 3> origin{0, 0, 0};

    int dims() const { return lattice.dims; }
    std::size_t total_sites() const;
    double coord(int axis, int index) const {
        return (index - origin[axis]) * lattice.constant(axis);
    }
    // Reciprocal grid: k_j = 2 pi j / (N * constant), j wrapped to [-N/2, N/2).
    double wavenumber(int axis, int index) const;
    void validate() const;
};

// Wavepacket as complex Wannier coefficients C on the site grid.
struct WaveGrid {
    GridSpec spec;
    std::vector<std::complex<double>> c;

    std::size_t size() const { return c.size(); }
    std::size_t flat_index(int ix, int iy, int iz) const {
        const auto& n = spec.n;
        return (static_cast<std::size_t>(iz) * n[1] + iy) * n[0] + ix;
    }
    double norm_sq() const;  // compensated sum of |C|^2
    void normalize();
};

struct GaussianSpec {
    Vec3 center{};
    Vec3 k0{};
    double sigma = 0.0;
};

// Gaussian wavepacket C_n ~ exp(-|r_n - center|^2 / (8 sigma^2)) exp(i k0.r_n),
// normalized to 1 (density variance 2 sigma^2 per axis; the packet-averaged
// lattice group velocity then matches the nominal one to < 1e-3 at sigma = 8a).
// Requires sigma >= 2 * max active lattice constant and the center at least
// 4 sigma from every grid boundary; throws ValidationError otherwise.
WaveGrid init_gaussian(const GridSpec& spec, const GaussianSpec& packet);

// External potential sampled on the sites: the Coulomb source, or a uniform
// gradient V = g . r used by the closed-form Bloch oscillation checks.
struct PotentialSpec {
    enum class Kind { coulomb, uniform_gradient };
    Kind kind = Kind::coulomb;
    CoulombSource source{};
    Vec3 gradient{};

    static PotentialSpec coulomb(const CoulombSource& src) {
        PotentialSpec p;
        p.kind = Kind::coulomb;
        p.source = src;
        return p;
    }
    static PotentialSpec uniform_gradient(const Vec3& g) {
        PotentialSpec p;
        p.kind = Kind::uniform_gradient;
        p.gradient = g;
        return p;
    }
};

std::vector<double> potential_on_sites(const GridSpec& spec, const PotentialSpec& pot);

// Probability within `margin` sites of any grid boundary (margin >= 1).
double boundary_mass(const WaveGrid& psi, int margin);

}  // namespace latkep
