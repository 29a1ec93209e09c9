#include "dengue/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "dengue/csv.hpp"
#include "dengue/equilibrium.hpp"
#include "dengue/thresholds.hpp"

namespace dengue {

std::string_view quantity_name(OutputQuantity q)
{
    switch (q) {
    case OutputQuantity::BasicReproduction: return "R0";
    case OutputQuantity::ForceOfInfection: return "lambda";
    case OutputQuantity::Prevalence: return "prevalence";
    }
    return "?";
}

std::string_view control_parameter_name(ControlParameter c)
{
    switch (c) {
    case ControlParameter::BitingRate: return "a";
    case ControlParameter::EggCarryingCapacity: return "kappa_E";
    case ControlParameter::EggMortality: return "mu_E";
    case ControlParameter::MosquitoMortality: return "mu_M";
    }
    return "?";
}

namespace {

// Unchecked force of infection; the sensitivity pipeline may probe slightly
// negative prevalences around the threshold.
double lambda_raw(const ModelParams& p, double prev)
{
    return (p.mu_H + p.alpha_H + p.gamma_H) * prev /
           (1.0 - (1.0 + p.gamma_H / p.mu_H) * prev);
}

double endemic_prevalence_raw(const ModelParams& p)
{
    return equilibrium_prevalence(p, exact_host_population(p));
}

ModelParams perturbed(const ModelParams& p, ControlParameter param, double factor)
{
    ModelParams out = p;
    out.set(control_parameter_name(param), p.get(control_parameter_name(param)) * factor);
    return out;
}

// d(log N_H)/d(theta) of the exact host population, central differences.
double host_log_derivative(const ModelParams& p, ControlParameter param)
{
    constexpr double h = 1e-6;
    const double theta = p.get(control_parameter_name(param));
    const double up = exact_host_population(perturbed(p, param, 1.0 + h));
    const double dn = exact_host_population(perturbed(p, param, 1.0 - h));
    return (up - dn) / (2.0 * h * theta * exact_host_population(p));
}

} // namespace

double output_value(OutputQuantity q, const ModelParams& p)
{
    if (q == OutputQuantity::BasicReproduction)
        return basic_reproduction_number(p);
    const double prev = endemic_prevalence_raw(p);
    if (q == OutputQuantity::Prevalence) return prev;
    return lambda_raw(p, prev);
}

double exact_relative_variation(OutputQuantity q, const ModelParams& p,
                                ControlParameter param, double delta_frac)
{
    if (delta_frac == 0) return 0.0;
    const double theta = p.get(control_parameter_name(param));
    if (!(theta * (1.0 + delta_frac) > 0))
        throw DomainError("exact_relative_variation: perturbed parameter leaves its domain");

    const double v0 = output_value(q, p);
    if (v0 == 0)
        throw DomainError("exact_relative_variation: baseline quantity is zero");
    const double v1 = output_value(q, perturbed(p, param, 1.0 + delta_frac));

    if (q != OutputQuantity::BasicReproduction && (v0 > 0) != (v1 > 0))
        throw DomainError(
            "exact_relative_variation: perturbation crosses the endemic threshold "
            "(disease-free transition)");
    return (v1 - v0) / v0;
}

namespace {

// (theta/R0) dR0/dtheta for {a, kappa_E, mu_E, mu_M}. The biting-rate entry
// is the exact exponent of a^2; the kappa_E entry is 1 up to round-off since
// N_M is proportional to kappa_E. The host-population terms vanish: the
// disease-free N_H depends only on kappa_H, r_H, mu_H.
std::array<double, 4> r0_log_derivatives(const ModelParams& p)
{
    const auto df = disease_free_populations(p);
    const double pcs = p.p * p.climate();
    return {
        2.0,
        p.kappa_E * (pcs / (df.n_m * p.mu_M)) *
            (1.0 - p.mu_M * (p.mu_E + pcs) / (p.r_M * pcs)),
        -p.mu_E * p.kappa_E / (p.r_M * df.n_m),
        p.mu_M * (p.g / (p.g * p.mu_M + p.gamma_M) -
                  1.0 / (p.mu_M + p.gamma_M) - 1.0 / p.mu_M -
                  pcs * p.kappa_E / (p.mu_M * p.mu_M * df.n_m)),
    };
}

} // namespace

R0Partials analytic_r0_partials(const ModelParams& p)
{
    const double r0 = basic_reproduction_number(p);
    const auto el = r0_log_derivatives(p);
    return {el[0] * r0 / p.a, el[1] * r0 / p.kappa_E, el[2] * r0 / p.mu_E,
            el[3] * r0 / p.mu_M};
}

double r0_mu_m_partial_as_printed(const ModelParams& p)
{
    const double r0 = basic_reproduction_number(p);
    const auto df = disease_free_populations(p);
    const double pcs = p.p * p.climate();
    return r0 * (1.0 / (p.mu_M + p.gamma_M) + 1.0 / (p.mu_M * (1.0 - p.g)) -
                 pcs * p.kappa_E / (p.mu_M * p.mu_M * df.n_m));
}

double analytic_elasticity(OutputQuantity q, const ModelParams& p,
                           ControlParameter param)
{
    const double theta = p.get(control_parameter_name(param));

    if (q == OutputQuantity::BasicReproduction)
        return r0_log_derivatives(p)[static_cast<int>(param)];

    // Differentiate the endemic prevalence
    //   prev = (P - T W) / (P q + a c T)
    // with P = (gamma_M + g mu_M) a^2 b c N_M/N_H, T = D (mu_M + gamma_M),
    // W = mu_M (1-g), q = 1 + gamma_H/mu_H.
    const auto df = disease_free_populations(p);
    const double n_h = exact_host_population(p);
    const double big_d = p.mu_H + p.gamma_H + p.alpha_H;
    const double growth = p.gamma_M + p.g * p.mu_M;
    const double P = growth * p.a * p.a * p.b * p.c * df.n_m / n_h;
    const double T = big_d * (p.mu_M + p.gamma_M);
    const double W = p.mu_M * (1.0 - p.g);
    const double qr = 1.0 + p.gamma_H / p.mu_H;
    const double ac = p.a * p.c;
    const double pcs = p.p * p.climate();

    const double dlog_nh = host_log_derivative(p, param);

    double dlogP = -dlog_nh; // every P carries 1/N_H
    double dT = 0, dW = 0, dac = 0;
    switch (param) {
    case ControlParameter::BitingRate:
        dlogP += 2.0 / p.a;
        dac = p.c;
        break;
    case ControlParameter::EggCarryingCapacity:
        dlogP += 1.0 / p.kappa_E; // N_M is proportional to kappa_E
        break;
    case ControlParameter::EggMortality:
        dlogP += -p.kappa_E / (p.r_M * df.n_m); // (1/N_M) dN_M/dmu_E
        break;
    case ControlParameter::MosquitoMortality:
        dlogP += p.g / growth - pcs * p.kappa_E / (p.mu_M * p.mu_M * df.n_m);
        dT = big_d;
        dW = 1.0 - p.g;
        break;
    }
    const double dP = P * dlogP;

    const double num = P - T * W;
    const double den = P * qr + ac * T;
    const double dnum = dP - dT * W - T * dW;
    const double dden = dP * qr + dac * T + ac * dT;
    const double prev = num / den;
    const double dprev = (dnum * den - num * dden) / (den * den);

    if (q == OutputQuantity::Prevalence) return theta * dprev / prev;

    // lambda = D prev / (1 - q prev); D and q do not involve the four
    // control parameters, so dlambda = D dprev / (1 - q prev)^2.
    const double one_minus = 1.0 - qr * prev;
    const double lambda = big_d * prev / one_minus;
    const double dlambda = big_d * dprev / (one_minus * one_minus);
    return theta * dlambda / lambda;
}

namespace {

struct PublishedCell {
    double value;
    bool reproducible;
};

// Published sensitivity figures. The flagged cells do not follow from the
// published equations; the report prints both figures side by side.
constexpr PublishedCell published_table[3][4] = {
    // a, kappa_E, mu_E, mu_M
    {{1.94, true}, {0.69, false}, {-8.28e-4, false}, {-2.42, true}},   // R0
    {{5.02, false}, {2.32, true}, {-1.93e-3, false}, {-5.40, true}},   // lambda
    {{2.67, true}, {1.34, true}, {-2.31e-2, false}, {-3.20, true}},    // prevalence
};

// theta^2 V''/V by central second differences at relative step h.
double second_log_term(OutputQuantity q, const ModelParams& p,
                       ControlParameter param)
{
    constexpr double h = 1e-3;
    const double v0 = output_value(q, p);
    const double up = output_value(q, perturbed(p, param, 1.0 + h));
    const double dn = output_value(q, perturbed(p, param, 1.0 - h));
    return (up - 2.0 * v0 + dn) / (v0 * h * h);
}

} // namespace

SensitivityReport elasticity_table(const ModelParams& p, double delta_frac)
{
    if (!(delta_frac > -1) || delta_frac == 0)
        throw DomainError("elasticity_table: delta_frac must be nonzero and > -1");
    if (!(output_value(OutputQuantity::Prevalence, p) > 0))
        throw DomainError("elasticity_table: baseline must be endemic (R0 > 1)");

    SensitivityReport report;
    report.delta_frac = delta_frac;
    for (int qi = 0; qi < 3; ++qi) {
        for (int ci = 0; ci < 4; ++ci) {
            const auto q = static_cast<OutputQuantity>(qi);
            const auto c = static_cast<ControlParameter>(ci);
            SensitivityCell cell;
            cell.elasticity = analytic_elasticity(q, p, c);
            cell.analytic = cell.elasticity +
                            0.5 * second_log_term(q, p, c) * delta_frac;
            cell.oracle = exact_relative_variation(q, p, c, delta_frac) / delta_frac;
            cell.discrepancy =
                std::abs(cell.analytic - cell.oracle) > 1e-4 * std::abs(cell.oracle);
            cell.published_value = published_table[qi][ci].value;
            cell.reproducible = published_table[qi][ci].reproducible;
            report.cells[qi][ci] = cell;
        }
    }
    return report;
}

const SensitivityCell& SensitivityReport::cell(OutputQuantity q,
                                               ControlParameter c) const
{
    return cells[static_cast<int>(q)][static_cast<int>(c)];
}

void SensitivityReport::write_csv(std::ostream& os) const
{
    os << "quantity,parameter,elasticity,analytic,oracle,published_value,"
          "reproducible_from_equations,flagged\n";
    for (int qi = 0; qi < 3; ++qi) {
        for (int ci = 0; ci < 4; ++ci) {
            const auto& cell = cells[qi][ci];
            os << quantity_name(static_cast<OutputQuantity>(qi)) << ','
               << control_parameter_name(static_cast<ControlParameter>(ci)) << ','
               << format_double(cell.elasticity) << ','
               << format_double(cell.analytic) << ','
               << format_double(cell.oracle) << ','
               << format_double(cell.published_value) << ','
               << (cell.reproducible ? "yes" : "no") << ','
               << (cell.discrepancy ? "yes" : "no") << '\n';
        }
    }
}

void SensitivityReport::write_table(std::ostream& os) const
{
    os << "per-1% elasticities (analytic | oracle | published)\n";
    for (int qi = 0; qi < 3; ++qi) {
        os << quantity_name(static_cast<OutputQuantity>(qi)) << ":\n";
        for (int ci = 0; ci < 4; ++ci) {
            const auto& cell = cells[qi][ci];
            os << "  " << std::setw(8) << std::left
               << std::string(control_parameter_name(static_cast<ControlParameter>(ci)))
               << std::right << std::setprecision(6) << std::scientific
               << std::setw(15) << cell.analytic << std::setw(15) << cell.oracle
               << std::setw(15) << cell.published_value
               << (cell.reproducible ? "" : "   [not reproducible from the equations]")
               << (cell.discrepancy ? "   [analytic/oracle discrepancy]" : "")
               << '\n';
        }
    }
    os.unsetf(std::ios_base::floatfield);
}

std::string_view strategy_name(ControlStrategy s)
{
    switch (s) {
    case ControlStrategy::Adulticide: return "adulticide";
    case ControlStrategy::BiteReduction: return "bite-reduction";
    case ControlStrategy::SourceReduction: return "source-reduction";
    case ControlStrategy::Larvicide: return "larvicide";
    }
    return "?";
}

ControlParameter strategy_parameter(ControlStrategy s)
{
    switch (s) {
    case ControlStrategy::Adulticide: return ControlParameter::MosquitoMortality;
    case ControlStrategy::BiteReduction: return ControlParameter::BitingRate;
    case ControlStrategy::SourceReduction: return ControlParameter::EggCarryingCapacity;
    case ControlStrategy::Larvicide: return ControlParameter::EggMortality;
    }
    return ControlParameter::BitingRate;
}

std::array<ControlStrategy, 4> strategy_ranking(const SensitivityReport& report,
                                                OutputQuantity quantity)
{
    std::array<ControlStrategy, 4> order = {
        ControlStrategy::Adulticide,
        ControlStrategy::BiteReduction,
        ControlStrategy::SourceReduction,
        ControlStrategy::Larvicide,
    };
    auto magnitude = [&](ControlStrategy s, OutputQuantity q) {
        return std::abs(report.cell(q, strategy_parameter(s)).elasticity);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](ControlStrategy lhs, ControlStrategy rhs) {
                         const double l = magnitude(lhs, quantity);
                         const double r = magnitude(rhs, quantity);
                         if (l != r) return l > r;
                         return magnitude(lhs, OutputQuantity::BasicReproduction) >
                                magnitude(rhs, OutputQuantity::BasicReproduction);
                     });
    return order;
}

} // namespace dengue
