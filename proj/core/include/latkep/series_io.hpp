#pragma once

#include <string>
#include <vector>

#include "latkep/scenario.hpp"

namespace latkep {

// Doubles in every writer use 17 significant digits, so re-parsing recovers
// the in-memory values exactly. All files end lines with LF.
std::string format_double(double v);

// Time-series CSV with header
//   t,x,y,kx,ky,E,Lz,Lz_rate,zx,zy,sx,sy,Lq,Lc,S,alphaS
// one row per sample. Semiclassical columns report the Brillouin-zone
// representative of k; columns with no engine behind them hold 0. The E
// column carries the semiclassical energy when a trajectory is present,
// otherwise the quantum expectation value.
void write_series(const RunBundle& bundle, const std::string& path);

// Plain-text density grid: first line `nx ny x0 y0 a b`, then ny rows of
// nx |C|^2 values.
void write_density(const DensityGrid& grid, const std::string& path);
DensityGrid read_density(const std::string& path);

// Sweep summary CSV: scenario,scale,quantity,value.
void write_summary(const std::vector<SummaryRow>& rows, const std::string& path);

// Marginal mean and skewness length recomputed from an exported density;
// used to close the write/read loop on snapshots.
struct DensityMarginals {
    double mean_x = 0.0, mean_y = 0.0;
    double s_x = 0.0, s_y = 0.0;
};
DensityMarginals density_marginals(const DensityGrid& grid);

}  // namespace latkep
