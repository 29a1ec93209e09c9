#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dengue/sensitivity.hpp"
#include "dengue/thresholds.hpp"
#include "helpers.hpp"

using namespace dengue;
using dengue::test::random_params;
using dengue::test::rel_diff;

namespace {

// Valid endemic draw for elasticity checks: comfortably above threshold so
// the elasticities are far from their R0 -> 1 singularities.
ModelParams endemic_draw(std::mt19937_64& rng)
{
    for (;;) {
        const ModelParams p = random_params(rng, 0.8, 1.3);
        const auto df = disease_free_populations(p);
        if (!df.mosquito_viable) continue;
        if (basic_reproduction_number(p) < 1.1) continue;
        return p;
    }
}

constexpr auto kQuantities = {OutputQuantity::BasicReproduction,
                              OutputQuantity::ForceOfInfection,
                              OutputQuantity::Prevalence};
constexpr auto kParams = {ControlParameter::BitingRate,
                          ControlParameter::EggCarryingCapacity,
                          ControlParameter::EggMortality,
                          ControlParameter::MosquitoMortality};

} // namespace

TEST_CASE("exact relative variation: basics")
{
    const ModelParams p = ModelParams::baseline();

    SUBCASE("zero delta gives zero")
    {
        CHECK(exact_relative_variation(OutputQuantity::BasicReproduction, p,
                                       ControlParameter::BitingRate, 0.0) == 0.0);
    }

    SUBCASE("R0 is exactly linear in kappa_E")
    {
        const double dv = exact_relative_variation(
            OutputQuantity::BasicReproduction, p,
            ControlParameter::EggCarryingCapacity, 0.01);
        CHECK(std::abs(dv - 0.01) < 1e-6);
    }

    SUBCASE("published prevalence response to a 1% bite reduction")
    {
        const double dv = exact_relative_variation(
            OutputQuantity::Prevalence, p, ControlParameter::BitingRate, -0.01);
        CHECK(rel_diff(dv, -0.0267) < 0.05);
    }

    SUBCASE("threshold crossings are reported")
    {
        ModelParams near = p;
        near.b = p.b / basic_reproduction_number(p) * 1.0001; // R0 just above 1
        CHECK_THROWS_AS(exact_relative_variation(OutputQuantity::Prevalence, near,
                                                 ControlParameter::BitingRate, -0.01),
                        DomainError);
    }
}

TEST_CASE("analytic R0 partials at baseline")
{
    const ModelParams p = ModelParams::baseline();
    const auto d = analytic_r0_partials(p);
    const double r0 = basic_reproduction_number(p);

    CHECK(p.a * d.wrt_a / r0 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.kappa_E * d.wrt_kappa_e / r0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.mu_E * d.wrt_mu_e / r0 == doctest::Approx(-1.7474e-2).epsilon(1e-4));
    CHECK(p.mu_M * d.wrt_mu_m / r0 == doctest::Approx(-2.3464).epsilon(1e-3));
}

TEST_CASE("corrected mu_M derivative matches finite differences; the printed form does not")
{
    const ModelParams p = ModelParams::baseline();
    const double r0 = basic_reproduction_number(p);

    // central finite differences of the R0 expression itself
    const double h = 1e-6;
    ModelParams up = p, dn = p;
    up.mu_M = p.mu_M * (1.0 + h);
    dn.mu_M = p.mu_M * (1.0 - h);
    const double fd = (basic_reproduction_number(up) - basic_reproduction_number(dn)) /
                      (2.0 * h * p.mu_M);

    const auto d = analytic_r0_partials(p);
    CHECK(rel_diff(d.wrt_mu_m, fd) < 1e-6);

    const double printed = r0_mu_m_partial_as_printed(p);
    CHECK(rel_diff(printed, fd) > 0.5); // wrong sign structure: not even close
    CHECK(p.mu_M * printed / r0 == doctest::Approx(0.478).epsilon(0.01));
    CHECK(printed > 0);
    CHECK(fd < 0);
}

TEST_CASE("elasticity table at the baseline")
{
    const ModelParams p = ModelParams::baseline();
    const auto report = elasticity_table(p);

    SUBCASE("published values that follow from the equations, within 5%")
    {
        using Q = OutputQuantity;
        using C = ControlParameter;
        CHECK(rel_diff(report.cell(Q::Prevalence, C::BitingRate).elasticity, 2.67) < 0.05);
        CHECK(rel_diff(report.cell(Q::Prevalence, C::EggCarryingCapacity).elasticity, 1.34) < 0.05);
        CHECK(rel_diff(report.cell(Q::Prevalence, C::MosquitoMortality).elasticity, -3.20) < 0.05);
        CHECK(rel_diff(report.cell(Q::ForceOfInfection, C::EggCarryingCapacity).elasticity, 2.32) < 0.05);
        CHECK(rel_diff(report.cell(Q::ForceOfInfection, C::MosquitoMortality).elasticity, -5.40) < 0.05);
    }

    SUBCASE("signs: contact and breeding capacity up, mortalities down")
    {
        for (auto q : kQuantities) {
            CHECK(report.cell(q, ControlParameter::BitingRate).elasticity > 0);
            CHECK(report.cell(q, ControlParameter::EggCarryingCapacity).elasticity > 0);
            CHECK(report.cell(q, ControlParameter::EggMortality).elasticity < 0);
            CHECK(report.cell(q, ControlParameter::MosquitoMortality).elasticity < 0);
        }
    }

    SUBCASE("the non-reproducible published cells are flagged, with our values printed")
    {
        using Q = OutputQuantity;
        using C = ControlParameter;
        const auto& r0_ke = report.cell(Q::BasicReproduction, C::EggCarryingCapacity);
        CHECK_FALSE(r0_ke.reproducible);
        CHECK(r0_ke.published_value == 0.69);
        CHECK(r0_ke.elasticity == doctest::Approx(1.0).epsilon(1e-10));

        const auto& lam_a = report.cell(Q::ForceOfInfection, C::BitingRate);
        CHECK_FALSE(lam_a.reproducible);
        CHECK(lam_a.published_value == 5.02);

        for (auto q : kQuantities) {
            const auto& cell = report.cell(q, C::EggMortality);
            CHECK_FALSE(cell.reproducible);
        }
        CHECK(report.cell(Q::BasicReproduction, C::EggMortality).elasticity ==
              doctest::Approx(-1.7e-2).epsilon(0.05));

        // everything else is reproducible
        CHECK(report.cell(Q::BasicReproduction, C::BitingRate).reproducible);
        CHECK(report.cell(Q::Prevalence, C::BitingRate).reproducible);
        CHECK(report.cell(Q::ForceOfInfection, C::MosquitoMortality).reproducible);
    }

    SUBCASE("no analytic/oracle discrepancies at a small probe step")
    {
        const auto fine = elasticity_table(p, 1e-4);
        for (auto q : kQuantities)
            for (auto c : kParams) CHECK_FALSE(fine.cell(q, c).discrepancy);
    }

    SUBCASE("at the default 1% step the Taylor prediction holds to 1%")
    {
        for (auto q : kQuantities) {
            for (auto c : kParams) {
                const auto& cell = report.cell(q, c);
                CHECK(std::abs(cell.analytic - cell.oracle) <=
                      1e-2 * std::abs(cell.oracle));
            }
        }
    }

    SUBCASE("CSV and text renderings carry the grid")
    {
        std::ostringstream csv, txt;
        report.write_csv(csv);
        report.write_table(txt);
        CHECK(csv.str().find("prevalence,mu_M,") != std::string::npos);
        CHECK(csv.str().find("lambda,a,") != std::string::npos);
        CHECK(txt.str().find("not reproducible") != std::string::npos);
        // header + 12 cells
        std::istringstream in(csv.str());
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) ++rows;
        CHECK(rows == 13);
    }
}

TEST_CASE("analytic elasticities match the exact recomputation across random draws")
{
    std::mt19937_64 rng(314);
    constexpr double delta = 1e-4;
    for (int i = 0; i < 100; ++i) {
        const ModelParams p = endemic_draw(rng);
        const auto report = elasticity_table(p, delta);
        for (auto q : kQuantities) {
            for (auto c : kParams) {
                const auto& cell = report.cell(q, c);
                CHECK(std::abs(cell.analytic - cell.oracle) <=
                      1e-4 * std::abs(cell.oracle));
                CHECK_FALSE(cell.discrepancy);
            }
        }
    }
}

TEST_CASE("strategy ranking")
{
    const ModelParams p = ModelParams::baseline();
    const auto report = elasticity_table(p);

    SUBCASE("force-of-infection ranking matches the published ordering")
    {
        const auto order = strategy_ranking(report, OutputQuantity::ForceOfInfection);
        CHECK(order[0] == ControlStrategy::Adulticide);
        CHECK(order[1] == ControlStrategy::BiteReduction);
        CHECK(order[2] == ControlStrategy::SourceReduction);
        CHECK(order[3] == ControlStrategy::Larvicide);
    }

    SUBCASE("prevalence ranking agrees")
    {
        const auto order = strategy_ranking(report, OutputQuantity::Prevalence);
        CHECK(order[0] == ControlStrategy::Adulticide);
        CHECK(order[1] == ControlStrategy::BiteReduction);
        CHECK(order[2] == ControlStrategy::SourceReduction);
        CHECK(order[3] == ControlStrategy::Larvicide);
    }

    SUBCASE("all-equal elasticities preserve the declaration order")
    {
        SensitivityReport flat = report;
        for (auto& row : flat.cells)
            for (auto& cell : row) cell.elasticity = 1.0;
        const auto order = strategy_ranking(flat, OutputQuantity::ForceOfInfection);
        CHECK(order[0] == ControlStrategy::Adulticide);
        CHECK(order[1] == ControlStrategy::BiteReduction);
        CHECK(order[2] == ControlStrategy::SourceReduction);
        CHECK(order[3] == ControlStrategy::Larvicide);
    }
}

TEST_CASE("elasticity table input validation")
{
    ModelParams below = ModelParams::baseline();
    below.a *= 0.25;
    REQUIRE(basic_reproduction_number(below) < 1.0);
    CHECK_THROWS_AS(elasticity_table(below), DomainError);
    CHECK_THROWS_AS(elasticity_table(ModelParams::baseline(), 0.0), DomainError);
}
