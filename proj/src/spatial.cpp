#include "dengue/spatial.hpp"

#include <cmath>
#include <ostream>

#include "dengue/csv.hpp"

namespace dengue {

void Grid::validate() const
{
    if (nx < 1 || ny < 1)
        throw DomainError("Grid: nx and ny must be >= 1");
    if (!(spacing > 0))
        throw DomainError("Grid: spacing must be positive");
}

SpatialField SpatialField::uniform(const Grid& grid, const StateVector& state)
{
    grid.validate();
    SpatialField f;
    f.grid = grid;
    f.cells.assign(static_cast<std::size_t>(grid.cells()), state);
    return f;
}

void SpatialField::validate() const
{
    grid.validate();
    if (cells.size() != static_cast<std::size_t>(grid.cells()))
        throw DomainError("SpatialField: cell count does not match the grid");
    if (!biting_rate.empty() && biting_rate.size() != cells.size())
        throw DomainError("SpatialField: biting_rate override size mismatch");
    if (!kappa_h.empty() && kappa_h.size() != cells.size())
        throw DomainError("SpatialField: kappa_h override size mismatch");
    for (const auto& s : cells) {
        for (double v : s.to_array())
            if (v < 0) throw DomainError("SpatialField: negative compartment");
        if (!(s.n_h() > 0))
            throw DomainError("SpatialField: every cell needs N_H > 0");
    }
}

double BiteKernel::weight_sum() const
{
    double sum = 0;
    for (const auto& o : offsets) sum += o.w;
    return sum;
}

BiteKernel build_kernel(KernelProfile profile, double radius, const Grid& grid)
{
    grid.validate();
    if (!(radius > 0) || !std::isfinite(radius))
        throw DomainError("build_kernel: radius must be positive and finite");

    const int kx = static_cast<int>(std::floor(radius / grid.spacing));
    const int ky = grid.ny > 1 ? kx : 0;

    BiteKernel kernel;
    kernel.profile = profile;
    kernel.radius = radius;

    double total = 0;
    for (int dy = -ky; dy <= ky; ++dy) {
        for (int dx = -kx; dx <= kx; ++dx) {
            const double d = grid.spacing * std::hypot(static_cast<double>(dx),
                                                       static_cast<double>(dy));
            if (d > radius) continue;
            double w = 0;
            switch (profile) {
            case KernelProfile::UniformDisk:
                w = 1.0;
                break;
            case KernelProfile::Gaussian: {
                const double sigma = radius / 3.0;
                w = std::exp(-0.5 * (d / sigma) * (d / sigma));
                break;
            }
            case KernelProfile::Exponential: {
                const double scale = radius / 3.0;
                w = std::exp(-d / scale);
                break;
            }
            }
            kernel.offsets.push_back({dx, dy, w});
            total += w;
        }
    }
    for (auto& o : kernel.offsets) o.w /= total;
    return kernel;
}

namespace {

inline int wrap(int i, int n)
{
    i %= n;
    return i < 0 ? i + n : i;
}

inline double gather_cell(const BiteKernel& kernel, const Grid& grid,
                          std::span<const double> src, int i, int j, int sign)
{
    double sum = 0;
    for (const auto& o : kernel.offsets) {
        int si = i + sign * o.dx;
        int sj = j + sign * o.dy;
        if (grid.periodic) {
            si = wrap(si, grid.nx);
            sj = wrap(sj, grid.ny);
        } else if (si < 0 || si >= grid.nx || sj < 0 || sj >= grid.ny) {
            continue; // absorbing: these bites are lost
        }
        sum += o.w * src[static_cast<std::size_t>(grid.index(si, sj))];
    }
    return sum;
}

} // namespace

void kernel_gather(const BiteKernel& kernel, const Grid& grid,
                   std::span<const double> src, std::span<double> dst,
                   KernelSum direction, ExecutionMode mode)
{
    const int sign = direction == KernelSum::OverSources ? -1 : 1;
    const int n = grid.cells();
    if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (int cell = 0; cell < n; ++cell) {
            const int i = cell % grid.nx;
            const int j = cell / grid.nx;
            dst[static_cast<std::size_t>(cell)] =
                gather_cell(kernel, grid, src, i, j, sign);
        }
    } else {
        for (int cell = 0; cell < n; ++cell) {
            const int i = cell % grid.nx;
            const int j = cell / grid.nx;
            dst[static_cast<std::size_t>(cell)] =
                gather_cell(kernel, grid, src, i, j, sign);
        }
    }
}

SpatialSystem::SpatialSystem(const SpatialField& field, const BiteKernel& kernel,
                             const ModelParams& params, ExecutionMode mode)
    : grid_(field.grid), kernel_(kernel), params_(params), mode_(mode)
{
    field.validate();
    params.validate();
    const auto n = static_cast<std::size_t>(grid_.cells());
    biting_rate_ = field.biting_rate.empty()
                       ? std::vector<double>(n, params.a)
                       : field.biting_rate;
    kappa_h_ = field.kappa_h.empty() ? std::vector<double>(n, params.kappa_H)
                                     : field.kappa_h;
    bite_source_.resize(n);
    received_.resize(n);
    host_risk_.resize(n);
    exposure_.resize(n);
}

std::vector<double> SpatialSystem::flatten(const SpatialField& field) const
{
    std::vector<double> y;
    y.reserve(field.cells.size() * 8);
    for (const auto& s : field.cells)
        for (double v : s.to_array()) y.push_back(v);
    return y;
}

void SpatialSystem::rhs(double t, std::span<const double> y,
                        std::span<double> dydt) const
{
    const int n = grid_.cells();
    const ModelParams& p = params_;
    const double cs = seasonal_factor(t, p.seasonality);

    // Contact fields. A mosquito at r' spreads a(r')*I_M(r') bites over its
    // kernel; a host cell r receives the kernel sum of those. Symmetrically
    // a mosquito's infection risk is the kernel sum of the host prevalence
    // over the cells it bites.
    for (int cell = 0; cell < n; ++cell) {
        const auto base = static_cast<std::size_t>(cell) * 8;
        const double i_m = y[base + 5];
        const double n_h = y[base + 0] + y[base + 1] + y[base + 2];
        if (!(n_h > 0))
            throw DomainError("spatial rhs: N_H must stay positive in every cell");
        bite_source_[static_cast<std::size_t>(cell)] =
            biting_rate_[static_cast<std::size_t>(cell)] * i_m;
        host_risk_[static_cast<std::size_t>(cell)] = y[base + 1] / n_h;
    }
    kernel_gather(kernel_, grid_, bite_source_, received_, KernelSum::OverSources,
                  mode_);
    kernel_gather(kernel_, grid_, host_risk_, exposure_, KernelSum::OverTargets,
                  mode_);

    auto local = [&](int cell) {
        const auto base = static_cast<std::size_t>(cell) * 8;
        const auto c = static_cast<std::size_t>(cell);
        const double s_h = y[base + 0], i_h = y[base + 1], r_h = y[base + 2];
        const double s_m = y[base + 3], l_m = y[base + 4], i_m = y[base + 5];
        const double s_e = y[base + 6], i_e = y[base + 7];
        const double n_h = s_h + i_h + r_h;

        const double host_infection = p.b * s_h / n_h * received_[c];
        const double mosq_infection = p.c * biting_rate_[c] * s_m * exposure_[c];
        const double egg_room = 1.0 - (s_e + i_e) / p.kappa_E;
        const double hatch_s = p.p * cs * s_e;
        const double hatch_i = p.p * cs * i_e;
        const double infected_adults = i_m + l_m;

        dydt[base + 0] = -host_infection - p.mu_H * s_h +
                         p.r_H * n_h * (1.0 - n_h / kappa_h_[c]);
        dydt[base + 1] = host_infection - (p.mu_H + p.alpha_H + p.gamma_H) * i_h;
        dydt[base + 2] = p.gamma_H * i_h - p.mu_H * r_h;
        dydt[base + 3] = hatch_s - p.mu_M * s_m - mosq_infection;
        dydt[base + 4] = mosq_infection - p.gamma_M * l_m - p.mu_M * l_m;
        dydt[base + 5] = p.gamma_M * l_m - p.mu_M * i_m + hatch_i;
        dydt[base + 6] = (p.r_M * s_m + (1.0 - p.g) * p.r_M * infected_adults) *
                             egg_room -
                         p.mu_E * s_e - hatch_s;
        dydt[base + 7] = p.g * p.r_M * infected_adults * egg_room -
                         p.mu_E * i_e - hatch_i;
    };

    if (mode_ == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (int cell = 0; cell < n; ++cell) local(cell);
    } else {
        for (int cell = 0; cell < n; ++cell) local(cell);
    }
}

Trajectory SpatialTrajectory::cell_trajectory(int cell) const
{
    Trajectory t;
    t.params = params;
    t.times = times;
    t.states.reserve(snapshots.size());
    for (const auto& snap : snapshots)
        t.states.push_back(snap[static_cast<std::size_t>(cell)]);
    return t;
}

void SpatialTrajectory::write_csv(std::ostream& os) const
{
    os << "t,cell,i,j";
    for (auto name : StateVector::names()) os << ',' << name;
    os << '\n';
    for (std::size_t k = 0; k < times.size(); ++k) {
        for (int cell = 0; cell < grid.cells(); ++cell) {
            os << format_double(times[k]) << ',' << cell << ',' << cell % grid.nx
               << ',' << cell / grid.nx;
            for (double v : snapshots[k][static_cast<std::size_t>(cell)].to_array())
                os << ',' << format_double(v);
            os << '\n';
        }
    }
}

SpatialTrajectory simulate_spatial(const SpatialField& field, const BiteKernel& kernel,
                                   const ModelParams& params, double t0, double t1,
                                   const SolverConfig& cfg, ExecutionMode mode)
{
    SpatialSystem system(field, kernel, params, mode);
    const auto y0 = system.flatten(field);

    const FlatRhs f = [&system](double t, std::span<const double> y,
                                std::span<double> dydt) {
        system.rhs(t, y, dydt);
    };
    const FlatTrajectory flat = integrate_flat(f, y0, t0, t1, cfg);

    SpatialTrajectory out;
    out.grid = field.grid;
    out.params = params;
    out.times = flat.times;
    out.snapshots.reserve(flat.states.size());
    const auto n = static_cast<std::size_t>(field.grid.cells());
    for (const auto& y : flat.states) {
        std::vector<StateVector> snap(n);
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t base = c * 8;
            snap[c] = {y[base + 0], y[base + 1], y[base + 2], y[base + 3],
                       y[base + 4], y[base + 5], y[base + 6], y[base + 7]};
        }
        out.snapshots.push_back(std::move(snap));
    }
    return out;
}

} // namespace dengue
