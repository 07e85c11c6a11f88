#include <cmath>
#include <string>

#include "latkep/scenario.hpp"

namespace latkep {

namespace {

constexpr std::size_t kGridCeiling = std::size_t{1} << 22;  // desk-scale site limit

int scaled_count(int n, double scale, const char* what) {
    const double exact = n / scale;
    const int scaled = static_cast<int>(std::lround(exact));
    if (std::fabs(exact - scaled) > 1e-9)
        throw ValidationError(std::string("sweep scale does not divide the ") + what + " evenly");
    return scaled;
}

}  // namespace

std::vector<SummaryRow> continuum_sweep(const ScenarioConfig& base, const std::vector<double>& scales) {
    base.validate();
    if (scales.empty())
        throw ValidationError("sweep needs at least one scale");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0))
            throw ValidationError("sweep scales must be > 0");
        if (i > 0 && !(scales[i] < scales[i - 1]))
            throw ValidationError("sweep scales must be strictly decreasing");
    }
    if (base.lattice.kind != DispersionKind::lattice)
        throw ValidationError("continuum sweep starts from a lattice-kind scenario");
    if (base.engine == Engine::paired)
        throw ValidationError("continuum sweep supports semiclassical or quantum engines");

    std::vector<SummaryRow> rows;
    rows.reserve(scales.size());
    for (const double scale : scales) {
        ScenarioConfig cfg = base;
        cfg.name = base.name + "@" + std::to_string(scale);
        // Shrink the lattice while preserving every effective mass, so the
        // physical problem is fixed and only the discreteness varies.
        cfg.lattice.a = base.lattice.a * scale;
        cfg.lattice.b = base.lattice.b * scale;
        cfg.lattice.c = base.lattice.c * scale;
        cfg.lattice.A = base.lattice.A / (scale * scale);
        cfg.lattice.B = base.lattice.B / (scale * scale);
        cfg.lattice.C = base.lattice.C / (scale * scale);

        // Momenta re-matched at constant kinetic energy.
        for (int ax = 0; ax < base.lattice.dims; ++ax) {
            const double con = base.lattice.constant(ax);
            if (base.engine == Engine::semiclassical) {
                const double kc = inverse_continuum_matched_k(base.initial.k[ax], con);
                cfg.initial.k[ax] = continuum_matched_k(kc, con * scale);
            } else {
                const double kc = inverse_continuum_matched_k(base.packet.k0[ax], con);
                cfg.packet.k0[ax] = continuum_matched_k(kc, con * scale);
            }
        }

        if (base.engine == Engine::quantum) {
            std::size_t total = 1;
            for (int ax = 0; ax < base.lattice.dims; ++ax) {
                cfg.grid_n[ax] = scaled_count(base.grid_n[ax], scale, "grid site count");
                cfg.grid_origin[ax] = scaled_count(base.grid_origin[ax], scale, "grid origin index");
                total *= static_cast<std::size_t>(cfg.grid_n[ax]);
            }
            if (total > kGridCeiling)
                throw ValidationError("sweep refinement exceeds the grid site ceiling at fixed extent");
        }

        RunBundle bundle = run_scenario(cfg);
        SummaryRow row = bundle.summary;
        row.scenario = base.name;
        row.scale = scale;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace latkep
