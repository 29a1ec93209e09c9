#pragma once

#include <array>
#include <iosfwd>
#include <string_view>

#include "dengue/model.hpp"

namespace dengue {

enum class OutputQuantity { BasicReproduction, ForceOfInfection, Prevalence };
enum class ControlParameter {
    BitingRate,         // a
    EggCarryingCapacity, // kappa_E
    EggMortality,       // mu_E
    MosquitoMortality,  // mu_M
};

std::string_view quantity_name(OutputQuantity q);
std::string_view control_parameter_name(ControlParameter c);

/// The steady-state quantity each sensitivity targets. R0 is evaluated at
/// the disease-free densities; prevalence and the force of infection go
/// through the endemic pipeline (exact host population, then the prevalence
/// relation). Prevalence is returned unclamped so threshold crossings are
/// visible to callers.
double output_value(OutputQuantity q, const ModelParams& p);

/// Exact relative variation [V(theta(1+delta)) - V(theta)] / V(theta)
/// recomputed through the full pipeline. Throws DomainError when the
/// perturbation carries an endemic quantity across the R0 = 1 threshold.
double exact_relative_variation(OutputQuantity q, const ModelParams& p,
                                ControlParameter param, double delta_frac);

// dR0/dtheta for the four control parameters. The host-population term
// vanishes here: the disease-free N_H depends only on kappa_H, r_H, mu_H.
// The mu_M derivative follows from the product rule on R0 including
// N_M(mu_M); the printed alternative below has the wrong sign structure and
// is kept only as a documented regression reference.
struct R0Partials {
    double wrt_a;
    double wrt_kappa_e;
    double wrt_mu_e;
    double wrt_mu_m;
};

R0Partials analytic_r0_partials(const ModelParams& p);
double r0_mu_m_partial_as_printed(const ModelParams& p);

/// First-order elasticity (theta/V) dV/dtheta of the pipeline quantity.
/// For prevalence and the force of infection this differentiates the same
/// expressions the pipeline evaluates, with the host-population derivative
/// taken by central differences.
double analytic_elasticity(OutputQuantity q, const ModelParams& p,
                           ControlParameter param);

struct SensitivityCell {
    double elasticity;   // first-order (theta/V) dV/dtheta
    double analytic;     // 2nd-order Taylor prediction of (dV/V)/delta
    double oracle;       // exact recomputation (dV/V)/delta
    double published_value;  // published sensitivity figure
    bool reproducible;   // whether that figure follows from the equations
    bool discrepancy;    // |analytic - oracle| > 1e-4 relative
};

struct SensitivityReport {
    double delta_frac;
    // [quantity][parameter] in enum order.
    std::array<std::array<SensitivityCell, 4>, 3> cells;

    const SensitivityCell& cell(OutputQuantity q, ControlParameter c) const;
    void write_csv(std::ostream& os) const;
    void write_table(std::ostream& os) const;
};

SensitivityReport elasticity_table(const ModelParams& p, double delta_frac = 0.01);

enum class ControlStrategy { Adulticide, BiteReduction, SourceReduction, Larvicide };

std::string_view strategy_name(ControlStrategy s);
ControlParameter strategy_parameter(ControlStrategy s);

/// Strategies ordered by |elasticity| of the chosen quantity, ties broken by
/// the R0-column magnitude; stable with respect to the declaration order.
std::array<ControlStrategy, 4> strategy_ranking(
    const SensitivityReport& report,
    OutputQuantity quantity = OutputQuantity::ForceOfInfection);

} // namespace dengue
