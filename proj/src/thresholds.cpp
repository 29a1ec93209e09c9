#include "dengue/thresholds.hpp"

namespace dengue {

double basic_reproduction_number(const ModelParams& p, double n_m, double n_h)
{
    if (!(p.g < 1))
        throw DomainError("basic_reproduction_number: structural change at g >= 1");
    if (!(n_h > 0))
        throw DomainError("basic_reproduction_number: N_H must be positive");
    if (n_m < 0)
        throw DomainError("basic_reproduction_number: N_M must be nonnegative");

    return p.a * p.a * p.b * p.c * (n_m / n_h) * (p.g * p.mu_M + p.gamma_M) /
           ((p.mu_H + p.alpha_H + p.gamma_H) * (p.mu_M + p.gamma_M) * p.mu_M *
            (1.0 - p.g));
}

double basic_reproduction_number(const ModelParams& p)
{
    const auto df = disease_free_populations(p);
    return basic_reproduction_number(p, df.n_m, df.n_h0);
}

double endemic_threshold(const ModelParams& p, double n_m, double n_h)
{
    return basic_reproduction_number(p, n_m, n_h);
}

double force_of_infection_from_prevalence(const ModelParams& p, double prevalence)
{
    if (prevalence < 0)
        throw DomainError("force_of_infection_from_prevalence: negative prevalence");
    const double denom = 1.0 - (1.0 + p.gamma_H / p.mu_H) * prevalence;
    if (denom <= 0)
        throw DomainError(
            "force_of_infection_from_prevalence: prevalence at or beyond the "
            "mu_H/(mu_H+gamma_H) pole");
    return (p.mu_H + p.alpha_H + p.gamma_H) * prevalence / denom;
}

double prevalence_from_r0(const ModelParams& p, double r0)
{
    const double w = p.mu_M * (1.0 - p.g);
    const double immune_ratio = 1.0 + p.gamma_H / p.mu_H;
    return w * (r0 - 1.0) / (w * r0 * immune_ratio + p.a * p.c);
}

double force_of_infection_from_r0(const ModelParams& p, double r0)
{
    if (r0 < 0)
        throw DomainError("force_of_infection_from_r0: R0 must be nonnegative");
    if (r0 <= 1.0) return 0.0;
    const double w = p.mu_M * (1.0 - p.g);
    return w * (p.mu_H + p.alpha_H + p.gamma_H) * p.mu_H * (r0 - 1.0) /
           (w * (p.mu_H + p.gamma_H) + p.mu_H * p.a * p.c);
}

double infected_mosquitoes_at_equilibrium(const ModelParams& p, double i_h, double n_h)
{
    if (!(n_h > 0))
        throw DomainError("infected_mosquitoes_at_equilibrium: N_H must be positive");
    const double denom = 1.0 - (1.0 + p.gamma_H / p.mu_H) * (i_h / n_h);
    if (denom <= 0)
        throw DomainError("infected_mosquitoes_at_equilibrium: nonpositive denominator");
    return n_h * (p.mu_H + p.alpha_H + p.gamma_H) * (i_h / n_h) /
           (p.a * p.b * denom);
}

ThresholdReport threshold_report(const ModelParams& p)
{
    const auto eq = endemic_equilibrium(p);

    ThresholdReport r;
    r.r0 = basic_reproduction_number(p);
    r.t_h = endemic_threshold(p, eq.n_m, eq.n_h);
    r.prevalence = eq.endemic ? eq.state.I_H / eq.n_h : 0.0;
    r.lambda = force_of_infection_from_prevalence(p, r.prevalence);
    r.i_m_eq = eq.state.I_M;
    return r;
}

} // namespace dengue
