#pragma once

#include "dengue/model.hpp"

namespace dengue {

// Steady-state totals with the disease absent. The mosquito and egg totals
// are set by demography alone and are zero (with mosquito_viable = false)
// when oviposition cannot compensate egg losses, i.e. when
// r_M*p*c_S <= mu_M*(mu_E + p*c_S).
struct DiseaseFreePopulations {
    double n_h0;
    double n_m;
    double n_e;
    bool mosquito_viable;
};

DiseaseFreePopulations disease_free_populations(const ModelParams& p);

struct EquilibriumPoint {
    StateVector state;
    double n_h = 0;
    double n_m = 0;
    double n_e = 0;
    bool endemic = false;
};

/// Closed-form steady state under constant climate. Returns the disease-free
/// point when the endemic prevalence is nonpositive.
EquilibriumPoint endemic_equilibrium(const ModelParams& p);

/// First-order (in alpha_H) host population: N_H0 - alpha_H*I_H0/(r_H - mu_H).
double perturbative_host_population(const ModelParams& p);

/// Host population from the closed quadratic, exact in alpha_H. Throws
/// NumericalError when the discriminant is negative.
double exact_host_population(const ModelParams& p);

// Coefficients of the host-population quadratic Pi*x^2 + Theta*x + Omega = 0;
// exact_host_population returns the (-Theta + sqrt(disc))/(2 Pi) branch.
struct HostQuadratic {
    double pi;
    double theta;
    double omega;
};

HostQuadratic host_population_quadratic(const ModelParams& p);

/// Endemic prevalence I_H/N_H for a given host population (disease-free
/// mosquito total is used for the vector density). May be negative below
/// the endemic threshold; callers decide how to treat that regime.
double equilibrium_prevalence(const ModelParams& p, double n_h);

} // namespace dengue
