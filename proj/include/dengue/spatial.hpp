#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "dengue/model.hpp"
#include "dengue/ode.hpp"
#include "dengue/parallel.hpp"

namespace dengue {

struct Grid {
    int nx = 1;
    int ny = 1;
    double spacing = 1.0;
    bool periodic = true; // false: bites crossing the boundary are lost

    [[nodiscard]] int cells() const { return nx * ny; }
    [[nodiscard]] int index(int i, int j) const { return j * nx + i; }
    void validate() const;
};

// Compartment fields over the lattice with optional per-cell biting rate
// and host carrying capacity.
struct SpatialField {
    Grid grid;
    std::vector<StateVector> cells;
    std::vector<double> biting_rate; // empty -> ModelParams::a everywhere
    std::vector<double> kappa_h;     // empty -> ModelParams::kappa_H everywhere

    static SpatialField uniform(const Grid& grid, const StateVector& state);
    void validate() const;
};

enum class KernelProfile { UniformDisk, Gaussian, Exponential };

// Distance-decaying redistribution of each mosquito's bites over nearby
// cells. Weights are normalized to sum to exactly 1 over the enumerated
// offsets; a radius below the cell spacing degenerates to the identity
// kernel (all bites stay in the home cell).
struct BiteKernel {
    struct Offset {
        int dx;
        int dy;
        double w;
    };
    KernelProfile profile = KernelProfile::UniformDisk;
    double radius = 0;
    std::vector<Offset> offsets;

    [[nodiscard]] double weight_sum() const;
};

BiteKernel build_kernel(KernelProfile profile, double radius, const Grid& grid);

// Kernel-weighted gathers. OverSources accumulates what lands on each cell
// (dst[r] = sum_o w(o) src[r-o]); OverTargets accumulates what each cell
// sends out across its targets (dst[r'] = sum_o w(o) src[r'+o]). The two
// differ only for absorbing boundaries.
enum class KernelSum { OverSources, OverTargets };

void kernel_gather(const BiteKernel& kernel, const Grid& grid,
                   std::span<const double> src, std::span<double> dst,
                   KernelSum direction, ExecutionMode mode);

// Flat-state right-hand side of the spatially coupled system; layout is
// cell-major, 8 compartments per cell. Infection terms use the kernel; all
// demographic terms stay local to the cell.
class SpatialSystem {
public:
    SpatialSystem(const SpatialField& field, const BiteKernel& kernel,
                  const ModelParams& params, ExecutionMode mode);

    void rhs(double t, std::span<const double> y, std::span<double> dydt) const;

    [[nodiscard]] std::vector<double> flatten(const SpatialField& field) const;
    [[nodiscard]] const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    BiteKernel kernel_;
    ModelParams params_;
    std::vector<double> biting_rate_;
    std::vector<double> kappa_h_;
    ExecutionMode mode_;
    // scratch buffers reused across evaluations
    mutable std::vector<double> bite_source_;
    mutable std::vector<double> received_;
    mutable std::vector<double> host_risk_;
    mutable std::vector<double> exposure_;
};

struct SpatialTrajectory {
    Grid grid;
    std::vector<double> times;
    std::vector<std::vector<StateVector>> snapshots; // [time][cell]
    ModelParams params;

    [[nodiscard]] Trajectory cell_trajectory(int cell) const;
    // Long format: t, cell, i, j, then the 8 compartments.
    void write_csv(std::ostream& os) const;
};

SpatialTrajectory simulate_spatial(const SpatialField& field, const BiteKernel& kernel,
                                   const ModelParams& params, double t0, double t1,
                                   const SolverConfig& cfg,
                                   ExecutionMode mode = ExecutionMode::Parallel);

} // namespace dengue
