#include "latkep/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace latkep {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;  // FFTW's planner is not thread-safe
    return m;
}

double axis_kinetic(const LatticeParams& lat, int axis, double k) {
    const double hop = lat.hopping(axis);
    const double con = lat.constant(axis);
    if (lat.kind == DispersionKind::lattice)
        return 2.0 * hop * (1.0 - std::cos(con * k));
    return hop * con * con * k * k;
}

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

struct SplitOperator::Impl {
    GridSpec spec;
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<std::complex<double>> vhalf;             // e^{-i V dt / 2} per site
    std::array<std::vector<std::complex<double>>, 3> kin;  // e^{-i T_ax(k_j) dt} per axis
    double inv_total = 1.0;

    explicit Impl(const GridSpec& s) : spec(s) {}

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }

    std::complex<double>* cbuf() { return reinterpret_cast<std::complex<double>*>(buf); }
    const std::complex<double>* cbuf() const { return reinterpret_cast<const std::complex<double>*>(buf); }
};

SplitOperator::SplitOperator(const GridSpec& spec, const PotentialSpec& pot, double dt)
    : impl_(std::make_unique<Impl>(spec)), dt_(dt) {
    spec.validate();
    if (!(dt > 0.0))
        throw ValidationError("split-operator dt must be > 0");

    potential_ = potential_on_sites(spec, pot);
    impl_->vhalf.resize(potential_.size());
    for (std::size_t i = 0; i < potential_.size(); ++i)
        impl_->vhalf[i] = std::polar(1.0, -0.5 * dt * potential_[i]);

    for (int ax = 0; ax < spec.dims(); ++ax) {
        auto& table = impl_->kin[ax];
        table.resize(spec.n[ax]);
        for (int j = 0; j < spec.n[ax]; ++j)
            table[j] = std::polar(1.0, -dt * axis_kinetic(spec.lattice, ax, spec.wavenumber(ax, j)));
    }
    for (int ax = spec.dims(); ax < 3; ++ax)
        impl_->kin[ax].assign(1, {1.0, 0.0});

    const std::size_t total = spec.total_sites();
    impl_->inv_total = 1.0 / static_cast<double>(total);
    impl_->buf = fftw_alloc_complex(total);

    // Row-major dimension order (z, y, x) to match the flat layout.
    int n_dims[3];
    int rank = 0;
    for (int ax = spec.dims() - 1; ax >= 0; --ax)
        n_dims[rank++] = spec.n[ax];
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->fwd = fftw_plan_dft(rank, n_dims, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft(rank, n_dims, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->bwd)
        throw Error("FFTW plan creation failed");
}

SplitOperator::~SplitOperator() = default;

void SplitOperator::step(WaveGrid& psi) const {
    auto& im = *impl_;
    if (psi.c.size() != im.spec.total_sites())
        throw ValidationError("wave grid does not match the split-operator grid spec");

    std::complex<double>* buf = im.cbuf();
    const std::size_t total = psi.c.size();
    for (std::size_t i = 0; i < total; ++i)
        buf[i] = psi.c[i] * im.vhalf[i];

    fftw_execute(im.fwd);

    const int nx = im.spec.n[0], ny = im.spec.n[1], nz = im.spec.n[2];
    std::size_t flat = 0;
    for (int iz = 0; iz < nz; ++iz) {
        const std::complex<double> pz = im.spec.dims() > 2 ? im.kin[2][iz] : std::complex<double>{1.0, 0.0};
        for (int iy = 0; iy < ny; ++iy) {
            const std::complex<double> pzy =
                im.spec.dims() > 1 ? pz * im.kin[1][iy] : pz;
            for (int ix = 0; ix < nx; ++ix, ++flat)
                buf[flat] *= pzy * im.kin[0][ix];
        }
    }

    fftw_execute(im.bwd);

    const double scale = im.inv_total;
    for (std::size_t i = 0; i < total; ++i)
        psi.c[i] = buf[i] * im.vhalf[i] * scale;
}

void SplitOperator::steps(WaveGrid& psi, long n) const {
    for (long i = 0; i < n; ++i)
        step(psi);
}

double kinetic_expectation(const WaveGrid& psi) {
    const auto& spec = psi.spec;
    const std::size_t total = spec.total_sites();
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan plan;
    {
        int n_dims[3];
        int rank = 0;
        for (int ax = spec.dims() - 1; ax >= 0; --ax)
            n_dims[rank++] = spec.n[ax];
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft(rank, n_dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    auto* cbuf = reinterpret_cast<std::complex<double>*>(buf);
    for (std::size_t i = 0; i < total; ++i)
        cbuf[i] = psi.c[i];
    fftw_execute(plan);

    std::array<std::vector<double>, 3> tkin;
    for (int ax = 0; ax < spec.dims(); ++ax) {
        tkin[ax].resize(spec.n[ax]);
        for (int j = 0; j < spec.n[ax]; ++j)
            tkin[ax][j] = axis_kinetic(spec.lattice, ax, spec.wavenumber(ax, j));
    }
    for (int ax = spec.dims(); ax < 3; ++ax)
        tkin[ax].assign(1, 0.0);

    Kahan acc;
    std::size_t flat = 0;
    for (int iz = 0; iz < spec.n[2]; ++iz) {
        const double tz = spec.dims() > 2 ? tkin[2][iz] : 0.0;
        for (int iy = 0; iy < spec.n[1]; ++iy) {
            const double tzy = tz + (spec.dims() > 1 ? tkin[1][iy] : 0.0);
            for (int ix = 0; ix < spec.n[0]; ++ix, ++flat)
                acc.add((tzy + tkin[0][ix]) * std::norm(cbuf[flat]));
        }
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
        fftw_free(buf);
    }
    // Parseval: sum_k |X_k|^2 = N sum_n |x_n|^2, and moments are taken against
    // the normalized density.
    return acc.sum / (static_cast<double>(total) * psi.norm_sq());
}

PropagationLog propagate(WaveGrid& psi, double dt, long n_steps, const PotentialSpec& pot,
                         const PropagateOptions& opts) {
    if (n_steps < 0 || opts.sample_every < 1)
        throw ValidationError("propagate requires n_steps >= 0 and sample_every >= 1");
    SplitOperator op(psi.spec, pot, dt);

    PropagationLog log;
    auto record = [&](long step) {
        PropagationSample s;
        s.t = step * dt;
        s.moments = moments(psi);
        s.boundary_mass = boundary_mass(psi, opts.boundary_margin);
        if (opts.record_energy)
            s.energy = energy_expectation(psi, pot);
        if (!std::isfinite(s.moments.norm))
            throw NumericalGuardError("propagation produced non-finite coefficients");
        if (s.boundary_mass > opts.boundary_threshold)
            throw NumericalGuardError("boundary contamination: edge probability exceeded threshold");
        log.max_norm_drift = std::max(log.max_norm_drift, std::fabs(s.moments.norm - 1.0));
        log.samples.push_back(std::move(s));
    };

    record(0);
    for (long step = 1; step <= n_steps; ++step) {
        op.step(psi);
        if (step % opts.sample_every == 0 || step == n_steps)
            record(step);
    }
    return log;
}

}  // namespace latkep
