#include "dengue/equilibrium.hpp"

#include <cmath>

namespace dengue {

DiseaseFreePopulations disease_free_populations(const ModelParams& p)
{
    if (!(p.r_H > p.mu_H))
        throw DomainError("disease_free_populations: r_H <= mu_H (host extinction)");
    const double cs = p.climate();
    const double pcs = p.p * cs;
    if (!(pcs > 0))
        throw DomainError("disease_free_populations: p*c_S must be positive");

    const double n_h0 = p.kappa_H * (p.r_H - p.mu_H) / p.r_H;
    const double bracket = 1.0 - p.mu_M * (p.mu_E + pcs) / (p.r_M * pcs);
    if (bracket <= 0)
        return {n_h0, 0.0, 0.0, false};

    const double n_e = p.kappa_E * bracket;
    const double n_m = pcs / p.mu_M * n_e;
    return {n_h0, n_m, n_e, bracket > 0};
}

double equilibrium_prevalence(const ModelParams& p, double n_h)
{
    const auto df = disease_free_populations(p);
    if (!df.mosquito_viable) return 0.0;

    const double contact = (p.gamma_M + p.g * p.mu_M) * p.a * p.a * p.b * p.c *
                           df.n_m / n_h;
    const double exit_h = p.mu_H + p.gamma_H + p.alpha_H;
    const double loss_m = exit_h * (p.mu_M + p.gamma_M);
    const double immune_ratio = 1.0 + p.gamma_H / p.mu_H;
    return (contact - loss_m * p.mu_M * (1.0 - p.g)) /
           (contact * immune_ratio + p.a * p.c * loss_m);
}

HostQuadratic host_population_quadratic(const ModelParams& p)
{
    const auto df = disease_free_populations(p);
    const double big_gamma =
        (p.gamma_M + p.g * p.mu_M) * p.a * p.a * p.b * p.c * df.n_m;
    const double theta_rate =
        (p.mu_H + p.gamma_H + p.alpha_H) * (p.mu_M + p.gamma_M);
    const double immune_ratio = 1.0 + p.gamma_H / p.mu_H;

    HostQuadratic q;
    q.pi = p.a * p.c * p.r_H * theta_rate;
    q.theta = -(p.a * p.c * theta_rate * p.kappa_H * (p.r_H - p.mu_H) -
                big_gamma * p.r_H * immune_ratio +
                theta_rate * p.mu_M * p.alpha_H * p.kappa_H * (1.0 - p.g));
    q.omega = -big_gamma * p.kappa_H * (p.r_H - p.mu_H) * immune_ratio +
              big_gamma * p.alpha_H * p.kappa_H;
    return q;
}

double exact_host_population(const ModelParams& p)
{
    if (!(p.r_H > p.mu_H))
        throw DomainError("exact_host_population: r_H <= mu_H");
    if (!(p.g < 1))
        throw DomainError("exact_host_population: g must be < 1");

    const auto df = disease_free_populations(p);
    if (!df.mosquito_viable) return df.n_h0;

    const auto q = host_population_quadratic(p);
    const double disc = q.theta * q.theta - 4.0 * q.pi * q.omega;
    if (disc < 0)
        throw NumericalError("exact_host_population: negative discriminant");
    // "+sqrt" branch; for theta > 0 use the equivalent form that avoids the
    // cancellation between -theta and sqrt(disc).
    const double sq = std::sqrt(disc);
    if (q.theta <= 0) return (-q.theta + sq) / (2.0 * q.pi);
    return -2.0 * q.omega / (q.theta + sq);
}

double perturbative_host_population(const ModelParams& p)
{
    if (!(p.r_H > p.mu_H))
        throw DomainError("perturbative_host_population: r_H <= mu_H");

    ModelParams p0 = p;
    p0.alpha_H = 0.0;
    const auto df = disease_free_populations(p0);
    const double prev0 = equilibrium_prevalence(p0, df.n_h0);
    const double i_h0 = prev0 > 0 ? prev0 * df.n_h0 : 0.0;
    return df.n_h0 - p.alpha_H * i_h0 / (p.r_H - p.mu_H);
}

EquilibriumPoint endemic_equilibrium(const ModelParams& p)
{
    if (!(p.g < 1))
        throw DomainError("endemic_equilibrium: g must be < 1");
    const double cs = p.climate();
    const auto df = disease_free_populations(p);

    EquilibriumPoint out;
    out.n_h = df.n_h0;
    out.n_m = df.n_m;
    out.n_e = df.n_e;
    out.state.S_H = df.n_h0;
    out.state.S_M = df.n_m;
    out.state.S_E = df.n_e;
    out.endemic = false;
    if (!df.mosquito_viable) {
        out.state.S_M = 0;
        out.state.S_E = 0;
        return out;
    }

    const double n_h = exact_host_population(p);
    const double prev = equilibrium_prevalence(p, n_h);
    if (prev <= 0)
        return out; // below threshold: disease-free point

    const double pcs = p.p * cs;
    const double exit_h = p.mu_H + p.gamma_H + p.alpha_H;
    const double immune_ratio = 1.0 + p.gamma_H / p.mu_H;

    StateVector s;
    s.I_H = prev * n_h;
    s.R_H = p.gamma_H / p.mu_H * s.I_H;
    s.S_H = n_h - s.I_H - s.R_H;

    // Mosquito and egg compartments from the same steady-state algebra, with
    // the infection pressure a*c*prev as the only coupling to the hosts.
    const double pressure = p.a * p.c * prev;
    s.S_M = (1.0 - p.g) * p.r_M * df.n_m * (p.kappa_E - df.n_e) * pcs /
            (p.kappa_E * (p.mu_M + pressure) * (p.mu_E + pcs) -
             p.g * p.r_M * pcs * (p.kappa_E - df.n_e));
    s.I_M = exit_h * s.I_H / (p.a * p.b * (1.0 - immune_ratio * prev));
    s.L_M = pressure * s.S_M / (p.gamma_M + p.mu_M);
    s.S_E = (p.r_M * s.S_M + (1.0 - p.g) * p.r_M * (df.n_m - s.S_M)) *
            (p.kappa_E - df.n_e) / (p.kappa_E * (p.mu_E + pcs));
    s.I_E = df.n_e - s.S_E;

    out.state = s;
    out.n_h = n_h;
    out.endemic = true;
    return out;
}

} // namespace dengue
