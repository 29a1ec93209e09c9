#pragma once

#include "dengue/equilibrium.hpp"
#include "dengue/model.hpp"

namespace dengue {

/// R0 evaluated at the supplied vector/host densities. Requires g < 1 and
/// n_h > 0; n_m = 0 yields R0 = 0.
double basic_reproduction_number(const ModelParams& p, double n_m, double n_h);

/// R0 at the disease-free densities.
double basic_reproduction_number(const ModelParams& p);

/// Same expression evaluated at possibly endemic densities; T_h >= 1 iff an
/// endemic state exists.
double endemic_threshold(const ModelParams& p, double n_m, double n_h);

/// lambda = (mu_H+alpha_H+gamma_H)*prev / (1 - (1+gamma_H/mu_H)*prev).
/// Throws DomainError when the denominator is nonpositive (prevalence at or
/// beyond mu_H/(mu_H+gamma_H)).
double force_of_infection_from_prevalence(const ModelParams& p, double prevalence);

/// Prevalence as a function of R0 in the alpha_H ~ 0 regime,
///   prev = mu_M(1-g)(R0-1) / [mu_M(1-g) R0 (1+gamma_H/mu_H) + a c].
/// Negative below threshold; composing with the force-of-infection relation
/// above reproduces the direct lambda(R0) expression identically.
double prevalence_from_r0(const ModelParams& p, double r0);

/// lambda(R0) in the alpha_H ~ 0 regime; clamped to 0 for R0 <= 1 (a
/// negative rate only signals the disease-free regime).
double force_of_infection_from_r0(const ModelParams& p, double r0);

/// Equilibrium density of infectious mosquitoes sustaining a given host
/// prevalence (Macdonald's sporozoite-rate relation).
double infected_mosquitoes_at_equilibrium(const ModelParams& p, double i_h, double n_h);

struct ThresholdReport {
    double r0;         // at disease-free densities
    double t_h;        // at the endemic host population
    double lambda;     // force of infection (1/day)
    double prevalence; // I_H/N_H at equilibrium (0 below threshold)
    double i_m_eq;     // infectious mosquitoes at equilibrium
};

ThresholdReport threshold_report(const ModelParams& p);

} // namespace dengue
