#include "latkep/series_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace latkep {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out)
        throw ValidationError("cannot open '" + path + "' for writing");
    return out;
}

double parse_double_or_throw(const std::string& token, const std::string& path) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ValidationError("malformed number '" + token + "' in '" + path + "'");
    return v;
}

}  // namespace

void write_series(const RunBundle& bundle, const std::string& path) {
    const std::size_t n_traj = bundle.trajectory ? bundle.trajectory->samples.size() : 0;
    const std::size_t n_log = bundle.log ? bundle.log->samples.size() : 0;
    if (n_traj && n_log && n_traj != n_log)
        throw ValidationError("series writer: trajectory and propagation log sample counts differ");
    const std::size_t rows = std::max(n_traj, n_log);

    std::ofstream out = open_out(path);
    out << "t,x,y,kx,ky,E,Lz,Lz_rate,zx,zy,sx,sy,Lq,Lc,S,alphaS\n";
    for (std::size_t i = 0; i < rows; ++i) {
        double t = 0.0;
        double x = 0, y = 0, kx = 0, ky = 0, e = 0, lz_v = 0, lz_rt = 0;
        double zx = 0, zy = 0, sx = 0, sy = 0, lq = 0, lc = 0, s_v = 0, alpha_s = 0;
        if (bundle.trajectory) {
            const auto& ts = bundle.trajectory->samples[i];
            t = ts.t;
            x = ts.state.r.x;
            y = ts.state.r.y;
            const Vec3 kw = wrap_to_zone(ts.state.k, bundle.cfg.lattice);
            kx = kw.x;
            ky = kw.y;
            e = ts.energy;
            lz_v = ts.lz;
            lz_rt = ts.lz_rate;
        }
        if (bundle.log) {
            const auto& qs = bundle.log->samples[i];
            t = qs.t;
            zx = qs.moments.z.x;
            zy = qs.moments.z.y;
            sx = qs.moments.s.x;
            sy = qs.moments.s.y;
            if (!bundle.trajectory)
                e = qs.energy;
        }
        if (i < bundle.angular.size()) {
            lq = bundle.angular[i].lq;
            lc = bundle.angular[i].lc;
            s_v = bundle.angular[i].s;
            alpha_s = bundle.angular[i].alpha_s;
        }
        const double cols[16] = {t, x, y, kx, ky, e, lz_v, lz_rt, zx, zy, sx, sy, lq, lc, s_v, alpha_s};
        for (int c = 0; c < 16; ++c) {
            if (c)
                out << ',';
            out << format_double(cols[c]);
        }
        out << '\n';
    }
    if (!out)
        throw ValidationError("write failed for '" + path + "'");
}

void write_density(const DensityGrid& grid, const std::string& path) {
    std::ofstream out = open_out(path);
    out << grid.nx << ' ' << grid.ny << ' ' << format_double(grid.x0) << ' ' << format_double(grid.y0)
        << ' ' << format_double(grid.a) << ' ' << format_double(grid.b) << '\n';
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            if (ix)
                out << ' ';
            out << format_double(grid.values[static_cast<std::size_t>(iy) * grid.nx + ix]);
        }
        out << '\n';
    }
    if (!out)
        throw ValidationError("write failed for '" + path + "'");
}

DensityGrid read_density(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open density file '" + path + "'");
    DensityGrid grid;
    std::string tok;
    auto next = [&]() -> std::string {
        if (!(in >> tok))
            throw ValidationError("truncated density file '" + path + "'");
        return tok;
    };
    grid.nx = static_cast<int>(parse_double_or_throw(next(), path));
    grid.ny = static_cast<int>(parse_double_or_throw(next(), path));
    grid.x0 = parse_double_or_throw(next(), path);
    grid.y0 = parse_double_or_throw(next(), path);
    grid.a = parse_double_or_throw(next(), path);
    grid.b = parse_double_or_throw(next(), path);
    if (grid.nx < 1 || grid.ny < 1)
        throw ValidationError("bad density grid shape in '" + path + "'");
    grid.values.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
    for (auto& v : grid.values)
        v = parse_double_or_throw(next(), path);
    return grid;
}

void write_summary(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "scenario,scale,quantity,value\n";
    for (const auto& row : rows)
        out << row.scenario << ',' << format_double(row.scale) << ',' << row.quantity << ','
            << format_double(row.value) << '\n';
    if (!out)
        throw ValidationError("write failed for '" + path + "'");
}

DensityMarginals density_marginals(const DensityGrid& grid) {
    double total = 0.0;
    std::vector<double> px(grid.nx, 0.0), py(grid.ny, 0.0);
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double w = grid.values[static_cast<std::size_t>(iy) * grid.nx + ix];
            px[ix] += w;
            py[iy] += w;
            total += w;
        }
    if (total <= 0.0)
        throw ValidationError("density grid has no probability mass");

    auto axis_stats = [&](const std::vector<double>& p, double c0, double step, double& mean, double& s) {
        mean = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            mean += (c0 + step * static_cast<double>(i)) * p[i];
        mean /= total;
        double m3 = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double d = c0 + step * static_cast<double>(i) - mean;
            m3 += d * d * d * p[i];
        }
        s = std::cbrt(m3 / total);
    };

    DensityMarginals m;
    axis_stats(px, grid.x0, grid.a, m.mean_x, m.s_x);
    axis_stats(py, grid.y0, grid.b, m.mean_y, m.s_y);
    return m;
}

}  // namespace latkep
