#pragma once

#include <array>
#include <string_view>

#include "dengue/errors.hpp"

namespace dengue {

// c_s(t) = d1 - d2*sin(2*pi*f*t + phi).  The constant-climate regime used by
// all equilibrium algebra is d2 = 0 with d1 holding the climatic factor c_S.
struct SeasonalFactor {
    double d1 = 0.07; // baseline amplitude (the constant c_S when d2 = 0)
    double d2 = 0.0;  // oscillation amplitude, must satisfy d1 >= d2 >= 0
    double f = 0.0;   // frequency (1/day)
    double phi = 0.0; // phase (radians)

    [[nodiscard]] bool constant() const { return d2 == 0.0; }
};

double seasonal_factor(double t, const SeasonalFactor& s);

// The sixteen biological/climatic parameters. Defaults are the baseline
// column used throughout: a typical A. aegypti / urban host setting.
struct ModelParams {
    double a = 0.164;        // daily biting rate (bites/mosquito/day)
    double b = 0.6;          // fraction of bites infective, mosquito -> human
    double mu_H = 3.5e-5;    // human mortality rate (1/day)
    double r_H = 9.5e-5;     // human birth rate (1/day)
    double kappa_H = 5e6;    // human carrying capacity
    double alpha_H = 3.5e-4; // dengue-induced human mortality rate (1/day)
    double gamma_H = 0.143;  // human recovery rate (1/day)
    double p = 0.15;         // egg hatching rate (1/day)
    double gamma_M = 0.143;  // mosquito latency rate (1/day)
    double mu_M = 0.09;      // mosquito mortality rate (1/day)
    double r_M = 50.0;       // oviposition rate (eggs/mosquito/day)
    double g = 0.1;          // fraction of vertically infected eggs, in [0,1)
    double kappa_E = 9.8e7;  // carrying capacity of immature stages
    double mu_E = 0.1;       // egg mortality rate (1/day)
    double c = 0.54;         // susceptibility human -> mosquito
    SeasonalFactor seasonality{};

    static ModelParams baseline() { return ModelParams{}; }

    /// Throws DomainError on any violated invariant (negative rates,
    /// probabilities outside [0,1], g >= 1, r_H <= mu_H, d2 > d1, ...).
    void validate() const;

    /// The constant climatic factor c_S. Throws DomainError when the
    /// seasonality is not constant (d2 != 0).
    [[nodiscard]] double climate() const;

    // Name-based access for sweeps, sampling masks and config files.
    // Order follows the canonical parameter table; "c_S" maps to
    // seasonality.d1 (valid for the constant regime).
    static const std::array<std::string_view, 16>& parameter_names();
    [[nodiscard]] double get(std::string_view name) const;
    void set(std::string_view name, double value);
};

// Compartment densities of the transmission system.
struct StateVector {
    double S_H = 0; // susceptible humans
    double I_H = 0; // infected humans
    double R_H = 0; // recovered humans
    double S_M = 0; // susceptible mosquitoes
    double L_M = 0; // latent mosquitoes
    double I_M = 0; // infectious mosquitoes
    double S_E = 0; // uninfected eggs (immature stages)
    double I_E = 0; // infected eggs

    [[nodiscard]] double n_h() const { return S_H + I_H + R_H; }
    [[nodiscard]] double n_m() const { return S_M + L_M + I_M; }
    [[nodiscard]] double n_e() const { return S_E + I_E; }

    [[nodiscard]] std::array<double, 8> to_array() const;
    static StateVector from_array(const std::array<double, 8>& v);
    static const std::array<std::string_view, 8>& names();
};

/// Right-hand side of the transmission system. Validates the state:
/// throws DomainError when N_H <= 0 or any compartment is negative.
StateVector rhs(const StateVector& x, const ModelParams& p, double t);

/// Same derivatives without state validation (integrator internals evaluate
/// trial states that may carry round-off-scale negatives). Still requires
/// N_H > 0.
StateVector rhs_unchecked(const StateVector& x, const ModelParams& p, double t);

// Correspondence between the exponential latency used here and a
// fixed-delay extrinsic incubation period: survival = gamma_M/(gamma_M+mu_M)
// and tau solves exp(-mu_M*tau) = survival. Note the positive form
// tau = ln((gamma_M+mu_M)/gamma_M)/mu_M.
struct EipEquivalence {
    double tau;      // extrinsic incubation period (days)
    double survival; // probability of surviving the latency period
};

EipEquivalence eip_equivalence(double gamma_M, double mu_M);

} // namespace dengue
