#include "dengue/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dengue {

double seasonal_factor(double t, const SeasonalFactor& s)
{
    return s.d1 - s.d2 * std::sin(2.0 * std::numbers::pi * s.f * t + s.phi);
}

namespace {

void require(bool ok, const char* what)
{
    if (!ok) throw DomainError(std::string("ModelParams: ") + what);
}

} // namespace

void ModelParams::validate() const
{
    require(a >= 0 && mu_H >= 0 && r_H >= 0 && alpha_H >= 0 && gamma_H >= 0 &&
                p >= 0 && gamma_M >= 0 && mu_M >= 0 && r_M >= 0 && mu_E >= 0,
            "all rates must be nonnegative");
    require(kappa_H > 0 && kappa_E > 0, "carrying capacities must be positive");
    require(b >= 0 && b <= 1, "b must lie in [0,1]");
    require(c >= 0 && c <= 1, "c must lie in [0,1]");
    require(g >= 0 && g < 1, "g must lie in [0,1)");
    require(r_H > mu_H, "r_H must exceed mu_H for a positive host population");
    require(seasonality.d2 >= 0 && seasonality.d1 >= seasonality.d2,
            "seasonality needs d1 >= d2 >= 0 so c_s(t) stays nonnegative");
    require(seasonality.f >= 0, "seasonal frequency must be nonnegative");
}

double ModelParams::climate() const
{
    if (!seasonality.constant())
        throw DomainError("constant climate requested but d2 != 0");
    return seasonality.d1;
}

const std::array<std::string_view, 16>& ModelParams::parameter_names()
{
    static const std::array<std::string_view, 16> names = {
        "a",       "b",       "mu_H", "r_H",     "kappa_H", "alpha_H",
        "gamma_H", "p",       "gamma_M", "mu_M", "r_M",     "g",
        "kappa_E", "mu_E",    "c",    "c_S",
    };
    return names;
}

double ModelParams::get(std::string_view name) const
{
    if (name == "a") return a;
    if (name == "b") return b;
    if (name == "mu_H") return mu_H;
    if (name == "r_H") return r_H;
    if (name == "kappa_H") return kappa_H;
    if (name == "alpha_H") return alpha_H;
    if (name == "gamma_H") return gamma_H;
    if (name == "p") return p;
    if (name == "gamma_M") return gamma_M;
    if (name == "mu_M") return mu_M;
    if (name == "r_M") return r_M;
    if (name == "g") return g;
    if (name == "kappa_E") return kappa_E;
    if (name == "mu_E") return mu_E;
    if (name == "c") return c;
    if (name == "c_S") return seasonality.d1;
    throw DomainError("unknown parameter name: " + std::string(name));
}

void ModelParams::set(std::string_view name, double value)
{
    if (name == "a") { a = value; return; }
    if (name == "b") { b = value; return; }
    if (name == "mu_H") { mu_H = value; return; }
    if (name == "r_H") { r_H = value; return; }
    if (name == "kappa_H") { kappa_H = value; return; }
    if (name == "alpha_H") { alpha_H = value; return; }
    if (name == "gamma_H") { gamma_H = value; return; }
    if (name == "p") { p = value; return; }
    if (name == "gamma_M") { gamma_M = value; return; }
    if (name == "mu_M") { mu_M = value; return; }
    if (name == "r_M") { r_M = value; return; }
    if (name == "g") { g = value; return; }
    if (name == "kappa_E") { kappa_E = value; return; }
    if (name == "mu_E") { mu_E = value; return; }
    if (name == "c") { c = value; return; }
    if (name == "c_S") { seasonality.d1 = value; return; }
    throw DomainError("unknown parameter name: " + std::string(name));
}

std::array<double, 8> StateVector::to_array() const
{
    return {S_H, I_H, R_H, S_M, L_M, I_M, S_E, I_E};
}

StateVector StateVector::from_array(const std::array<double, 8>& v)
{
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

const std::array<std::string_view, 8>& StateVector::names()
{
    static const std::array<std::string_view, 8> names = {
        "S_H", "I_H", "R_H", "S_M", "L_M", "I_M", "S_E", "I_E",
    };
    return names;
}

StateVector rhs_unchecked(const StateVector& x, const ModelParams& p, double t)
{
    const double n_h = x.n_h();
    if (!(n_h > 0))
        throw DomainError("rhs requires N_H > 0");

    const double cs = seasonal_factor(t, p.seasonality);

    // Shared contact terms; reusing them keeps the S_H/I_H and S_M/L_M
    // cancellations exact, so summing host equations reproduces the
    // aggregate host balance to the last bit.
    const double host_infection = p.a * p.b * x.I_M * x.S_H / n_h;
    const double mosq_infection = p.a * p.c * x.S_M * x.I_H / n_h;
    const double egg_room = 1.0 - (x.S_E + x.I_E) / p.kappa_E;
    const double hatch_s = p.p * cs * x.S_E;
    const double hatch_i = p.p * cs * x.I_E;
    const double infected_adults = x.I_M + x.L_M;

    StateVector d;
    d.S_H = -host_infection - p.mu_H * x.S_H +
            p.r_H * n_h * (1.0 - n_h / p.kappa_H);
    d.I_H = host_infection - (p.mu_H + p.alpha_H + p.gamma_H) * x.I_H;
    d.R_H = p.gamma_H * x.I_H - p.mu_H * x.R_H;
    d.S_M = hatch_s - p.mu_M * x.S_M - mosq_infection;
    d.L_M = mosq_infection - p.gamma_M * x.L_M - p.mu_M * x.L_M;
    d.I_M = p.gamma_M * x.L_M - p.mu_M * x.I_M + hatch_i;
    d.S_E = (p.r_M * x.S_M + (1.0 - p.g) * p.r_M * infected_adults) * egg_room -
            p.mu_E * x.S_E - hatch_s;
    d.I_E = p.g * p.r_M * infected_adults * egg_room - p.mu_E * x.I_E - hatch_i;
    return d;
}

StateVector rhs(const StateVector& x, const ModelParams& p, double t)
{
    const auto v = x.to_array();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0)
            throw DomainError(std::string("rhs: negative compartment ") +
                              std::string(StateVector::names()[i]));
    }
    return rhs_unchecked(x, p, t);
}

EipEquivalence eip_equivalence(double gamma_M, double mu_M)
{
    if (!(gamma_M > 0) || !(mu_M > 0))
        throw DomainError("eip_equivalence requires positive rates");
    const double survival = gamma_M / (gamma_M + mu_M);
    const double tau = std::log((gamma_M + mu_M) / gamma_M) / mu_M;
    return {tau, survival};
}

} // namespace dengue
