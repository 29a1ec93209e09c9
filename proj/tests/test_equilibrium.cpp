#include <doctest.h>

#include <cmath>
#include <random>

#include "dengue/equilibrium.hpp"
#include "dengue/thresholds.hpp"
#include "helpers.hpp"

using namespace dengue;
using dengue::test::max_relative_residual;
using dengue::test::random_params;
using dengue::test::rel_diff;

// Hand-evaluated disease-free totals for the baseline column:
//   N_H0 = 5e6 * (9.5e-5 - 3.5e-5)/9.5e-5
//   N_E  = 9.8e7 * (1 - 0.09*0.1105/0.525)
//   N_M  = (0.0105/0.09) * N_E
namespace {
constexpr double kNh0 = 3157894.7368421056;
constexpr double kNm = 11216753.333333334;
constexpr double kNe = 96143600.0;
} // namespace

TEST_CASE("disease-free totals at baseline")
{
    const auto df = disease_free_populations(ModelParams::baseline());
    CHECK(rel_diff(df.n_h0, kNh0) < 1e-12);
    CHECK(rel_diff(df.n_m, kNm) < 1e-12);
    CHECK(rel_diff(df.n_e, kNe) < 1e-12);
    CHECK(df.mosquito_viable);
}

TEST_CASE("disease-free totals: host extinction and viability boundary")
{
    ModelParams p = ModelParams::baseline();
    p.r_H = p.mu_H;
    CHECK_THROWS_AS(disease_free_populations(p), DomainError);

    // r_M * p * c_S == mu_M * (mu_E + p*c_S) exactly
    p = ModelParams::baseline();
    const double pcs = p.p * p.climate();
    p.r_M = p.mu_M * (p.mu_E + pcs) / pcs;
    const auto df = disease_free_populations(p);
    CHECK(df.n_m == 0.0);
    CHECK(df.n_e == 0.0);
    CHECK_FALSE(df.mosquito_viable);

    p.r_M *= 0.9; // below the boundary
    const auto df2 = disease_free_populations(p);
    CHECK(df2.n_m == 0.0);
    CHECK_FALSE(df2.mosquito_viable);
}

TEST_CASE("mosquito and egg totals ignore the disease parameters")
{
    const auto base = disease_free_populations(ModelParams::baseline());
    for (auto name : {"alpha_H", "a", "b", "c", "g"}) {
        ModelParams p = ModelParams::baseline();
        p.set(name, p.get(name) * 0.5);
        const auto df = disease_free_populations(p);
        CHECK(df.n_m == base.n_m);
        CHECK(df.n_e == base.n_e);
    }
}

TEST_CASE("endemic equilibrium at baseline reproduces the published prevalence")
{
    const auto eq = endemic_equilibrium(ModelParams::baseline());
    REQUIRE(eq.endemic);
    const double prev = eq.state.I_H / eq.n_h;
    CHECK(rel_diff(prev, 1.04e-4) < 0.02);
    // totals are consistent with the component sums
    CHECK(rel_diff(eq.state.n_h(), eq.n_h) < 1e-12);
    CHECK(rel_diff(eq.state.n_m(), eq.n_m) < 1e-10);
    CHECK(rel_diff(eq.state.n_e(), eq.n_e) < 1e-12);
}

TEST_CASE("endemic equilibrium zeroes the right-hand side")
{
    const ModelParams p = ModelParams::baseline();
    const auto eq = endemic_equilibrium(p);
    CHECK(max_relative_residual(eq.state, p) < 1e-8);

    // per component: |dx/dt| below 1e-6 of the compartment itself
    const auto d = rhs(eq.state, p, 0.0).to_array();
    const auto x = eq.state.to_array();
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(std::abs(d[i]) < 1e-6 * std::abs(x[i]));
}

TEST_CASE("endemic equilibrium zeroes the right-hand side across random draws")
{
    std::mt19937_64 rng(2024);
    int endemic_seen = 0;
    for (int i = 0; i < 60; ++i) {
        const ModelParams p = random_params(rng, 0.7, 1.4);
        const auto df = disease_free_populations(p);
        if (!df.mosquito_viable) continue;
        const auto eq = endemic_equilibrium(p);
        if (!eq.endemic) continue;
        ++endemic_seen;
        CHECK(max_relative_residual(eq.state, p) < 1e-8);
        for (double v : eq.state.to_array()) CHECK(v >= 0.0);
    }
    CHECK(endemic_seen > 20); // the draw ranges straddle the threshold
}

TEST_CASE("below threshold the disease-free point comes back")
{
    ModelParams p = ModelParams::baseline();
    p.a *= 0.25; // R0 scales with a^2: ~0.11
    REQUIRE(basic_reproduction_number(p) < 1.0);
    const auto eq = endemic_equilibrium(p);
    CHECK_FALSE(eq.endemic);
    CHECK(eq.state.I_H == 0.0);
    CHECK(eq.state.R_H == 0.0);
    CHECK(eq.state.L_M == 0.0);
    CHECK(eq.state.I_M == 0.0);
    CHECK(eq.state.I_E == 0.0);
    CHECK(eq.state.S_M == doctest::Approx(eq.n_m));
}

TEST_CASE("g -> 1 drains the susceptible mosquito and egg pools")
{
    const auto base = endemic_equilibrium(ModelParams::baseline());
    ModelParams p = ModelParams::baseline();
    p.g = 1.0 - 1e-6;
    const auto eq = endemic_equilibrium(p);
    REQUIRE(eq.endemic);
    CHECK(eq.state.S_M / base.state.S_M < 0.01);
    CHECK(eq.state.S_E / base.state.S_E < 0.01);
    // and the closed form still solves the system there
    CHECK(max_relative_residual(eq.state, p) < 1e-8);

    // monotone decline along g
    double last_sm = base.state.S_M;
    for (double g : {0.5, 0.9, 0.99, 0.999}) {
        ModelParams pg = ModelParams::baseline();
        pg.g = g;
        const auto e = endemic_equilibrium(pg);
        CHECK(e.state.S_M < last_sm);
        last_sm = e.state.S_M;
    }
}

TEST_CASE("perturbative host population")
{
    const ModelParams p = ModelParams::baseline();
    const auto df = disease_free_populations(p);

    SUBCASE("alpha_H = 0 returns N_H0 exactly")
    {
        ModelParams p0 = p;
        p0.alpha_H = 0.0;
        CHECK(perturbative_host_population(p0) == df.n_h0);
    }

    SUBCASE("baseline correction is about 1.9e3")
    {
        const double correction = df.n_h0 - perturbative_host_population(p);
        CHECK(rel_diff(correction, 1.921e3) < 1e-2);
    }

    SUBCASE("correction is linear in alpha_H")
    {
        ModelParams p2 = p;
        p2.alpha_H = 2.0 * p.alpha_H;
        const double c1 = df.n_h0 - perturbative_host_population(p);
        const double c2 = df.n_h0 - perturbative_host_population(p2);
        CHECK(rel_diff(c2, 2.0 * c1) < 1e-12);
    }
}

TEST_CASE("exact host population")
{
    const ModelParams p = ModelParams::baseline();

    SUBCASE("alpha_H = 0 reduces to N_H0")
    {
        ModelParams p0 = p;
        p0.alpha_H = 0.0;
        const auto df = disease_free_populations(p0);
        CHECK(rel_diff(exact_host_population(p0), df.n_h0) < 1e-12);
    }

    SUBCASE("agrees with perturbation theory to second order in alpha_H")
    {
        // The correction itself is ~6e-4 relative, so the O(alpha_H^2)
        // mismatch lands near 1.5e-6 of N_H.
        CHECK(rel_diff(exact_host_population(p), perturbative_host_population(p)) <
              5e-6);
    }

    SUBCASE("monotonically decreasing in alpha_H")
    {
        double last = exact_host_population(ModelParams::baseline());
        for (double alpha : {1e-4, 3.5e-4, 1e-3, 5e-3, 1e-2}) {
            ModelParams pa = ModelParams::baseline();
            pa.alpha_H = alpha;
            const double nh = exact_host_population(pa);
            if (alpha > 1e-4) CHECK(nh < last);
            last = nh;
        }
    }
}

TEST_CASE("host quadratic: root matches a generic solver, including omega = 0")
{
    auto roots_of = [](const HostQuadratic& q) {
        const double disc = q.theta * q.theta - 4.0 * q.pi * q.omega;
        REQUIRE(disc >= 0);
        const double r1 = (-q.theta + std::sqrt(disc)) / (2.0 * q.pi);
        const double r2 = (-q.theta - std::sqrt(disc)) / (2.0 * q.pi);
        return std::pair{r1, r2};
    };

    SUBCASE("baseline: plus branch is the positive root")
    {
        const ModelParams p = ModelParams::baseline();
        const auto q = host_population_quadratic(p);
        const auto [r1, r2] = roots_of(q);
        CHECK(rel_diff(exact_host_population(p), std::max(r1, r2)) < 1e-12);
        CHECK(exact_host_population(p) > 0);
    }

    SUBCASE("omega tuned to zero")
    {
        // omega = Gamma kappa_H [alpha_H - (r_H - mu_H)(1 + gamma_H/mu_H)]
        ModelParams p = ModelParams::baseline();
        p.alpha_H = (p.r_H - p.mu_H) * (1.0 + p.gamma_H / p.mu_H);
        const auto q = host_population_quadratic(p);
        CHECK(std::abs(q.omega) <=
              1e-10 * std::abs(q.theta) * std::abs(q.theta) / std::abs(q.pi));
        const auto [r1, r2] = roots_of(q);
        const double nh = exact_host_population(p);
        // plus branch: -theta/pi when theta < 0, else the zero root
        const double expected = q.theta < 0 ? -q.theta / q.pi : 0.0;
        CHECK(std::abs(nh - expected) <=
              1e-9 * std::max(std::abs(r1), std::abs(r2)));
    }
}

TEST_CASE("prevalence relation with disease mortality")
{
    // I_H/N_H = -mu_H/alpha_H + (r_H/alpha_H)(1 - N_H/kappa_H)
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        const ModelParams p = random_params(rng, 0.8, 1.25);
        const auto eq = endemic_equilibrium(p);
        if (!eq.endemic || p.alpha_H <= 0) continue;
        ++checked;
        const double lhs = eq.state.I_H / eq.n_h;
        const double rhs14 = -p.mu_H / p.alpha_H +
                             p.r_H / p.alpha_H * (1.0 - eq.n_h / p.kappa_H);
        CHECK(rel_diff(lhs, rhs14) < 1e-8);
    }
    CHECK(checked > 10);
}
