#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "dengue/model.hpp"

namespace dengue {

enum class SolverMethod { AdaptiveRk45, FixedRk4 };

struct SolverConfig {
    SolverMethod method = SolverMethod::AdaptiveRk45;
    double rtol = 1e-8;
    double atol = 1e-6;   // per-component floor; scaled by the initial magnitudes
    double fixed_step = 0.25;
    double initial_step = 0.0; // 0 -> automatic
    double min_step = 1e-10;   // StiffnessError below this
    double sample_dt = 0.0;    // 0 -> record every accepted step
    double convergence_window = 365.0;
    double convergence_tol = 1e-6;

    void validate() const;
};

// Sampled solution of a flat ODE system.
struct FlatTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

using FlatRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Low-level driver shared by the homogeneous and spatial systems.
/// Trial states that drop a component below -atol_i are rejected and the
/// step halved; accepted round-off-scale negatives are clamped to zero.
FlatTrajectory integrate_flat(const FlatRhs& f, std::span<const double> y0,
                              double t0, double t1, const SolverConfig& cfg);

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    ModelParams params;

    // Columns: t, S_H, I_H, R_H, S_M, L_M, I_M, S_E, I_E.
    void write_csv(std::ostream& os) const;
};

/// Integrate the transmission system from a nonnegative state with N_H > 0.
Trajectory integrate(const StateVector& x0, const ModelParams& p, double t0,
                     double t1, const SolverConfig& cfg);

struct SteadyState {
    bool converged;
    StateVector state; // trailing-window mean
};

/// converged iff the relative spread of every compartment over the trailing
/// `window` days stays below `tol`.
SteadyState detect_steady_state(const Trajectory& traj, double window, double tol);

} // namespace dengue
