#include "dengue/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "dengue/csv.hpp"
#include "dengue/equilibrium.hpp"
#include "dengue/thresholds.hpp"

namespace dengue {

void SamplerConfig::validate() const
{
    if (!(shape > 0))
        throw DomainError("SamplerConfig: shape must be positive");
    if (n_draws < 1)
        throw DomainError("SamplerConfig: n_draws must be >= 1");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Hand-rolled distributions on top of mt19937_64: the standard library's
// gamma/normal distributions are implementation-defined, which would break
// bit-identical sequences across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() // (0,1)
    {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }

    double normal()
    {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Marsaglia-Tsang, boosted for shape < 1.
    double gamma(double shape)
    {
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta_symmetric(double shape)
    {
        const double g1 = gamma(shape);
        const double g2 = gamma(shape);
        return g1 / (g1 + g2);
    }

private:
    std::mt19937_64 eng_;
};

std::uint64_t draw_seed(std::uint64_t seed, int index)
{
    return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1)));
}

DrawOutputs evaluate_one(const ModelParams& draw)
{
    DrawOutputs out;
    try {
        out.r0 = basic_reproduction_number(draw);
        if (out.r0 <= 1.0) {
            out.below_threshold = true;
            return out;
        }
        const double n_h = exact_host_population(draw);
        const double prev = equilibrium_prevalence(draw, n_h);
        if (prev <= 0) {
            out.below_threshold = true;
            return out;
        }
        out.prevalence = prev;
        out.lambda = force_of_infection_from_prevalence(draw, prev);
    } catch (const DomainError&) {
        out.valid = false;
    } catch (const NumericalError&) {
        out.valid = false;
    }
    return out;
}

SummaryRow column_summary(std::vector<double> values)
{
    SummaryRow row;
    const auto n = static_cast<double>(values.size());
    double sum = 0;
    for (double v : values) sum += v;
    row.mean = sum / n;
    double ss = 0;
    for (double v : values) ss += (v - row.mean) * (v - row.mean);
    row.variance = ss / (n - 1.0);

    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const double pos = q * (n - 1.0);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - std::floor(pos);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    row.ci_low = quantile(0.025);
    row.ci_high = quantile(0.975);
    return row;
}

} // namespace

std::vector<ModelParams> sample_parameters(const ModelParams& baseline,
                                           const SamplerConfig& cfg)
{
    cfg.validate();
    const auto& names = ModelParams::parameter_names();

    std::vector<ModelParams> draws;
    draws.reserve(static_cast<std::size_t>(cfg.n_draws));
    for (int i = 0; i < cfg.n_draws; ++i) {
        Rng rng(draw_seed(cfg.seed, i));
        ModelParams d = baseline;
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (!cfg.enabled[j]) continue;
            d.set(names[j], 2.0 * baseline.get(names[j]) * rng.beta_symmetric(cfg.shape));
        }
        draws.push_back(d);
    }
    return draws;
}

std::vector<DrawOutputs> evaluate_draws(const std::vector<ModelParams>& draws,
                                        ExecutionMode mode)
{
    std::vector<DrawOutputs> outputs(draws.size());
    const auto n = static_cast<std::int64_t>(draws.size());
    if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            outputs[static_cast<std::size_t>(i)] =
                evaluate_one(draws[static_cast<std::size_t>(i)]);
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            outputs[static_cast<std::size_t>(i)] =
                evaluate_one(draws[static_cast<std::size_t>(i)]);
    }
    return outputs;
}

MonteCarloSummary summarize(const std::vector<ModelParams>& draws,
                            const std::vector<DrawOutputs>& outputs)
{
    if (draws.size() != outputs.size())
        throw DomainError("summarize: draw/output size mismatch");
    if (draws.size() < 2)
        throw InsufficientDataError("summarize: need at least 2 draws");

    MonteCarloSummary s;
    s.n_draws = static_cast<int>(draws.size());

    const auto& names = ModelParams::parameter_names();
    std::vector<double> column(draws.size());
    for (std::size_t j = 0; j < names.size(); ++j) {
        for (std::size_t i = 0; i < draws.size(); ++i)
            column[i] = draws[i].get(names[j]);
        s.parameters[j] = column_summary(column);
    }

    std::vector<double> r0s, lams, prevs;
    for (const auto& o : outputs) {
        if (!o.valid) continue;
        r0s.push_back(o.r0);
        lams.push_back(o.lambda);
        prevs.push_back(o.prevalence);
        if (o.below_threshold) ++s.n_below_threshold;
    }
    s.n_valid = static_cast<int>(r0s.size());
    if (s.n_valid < 2)
        throw InsufficientDataError("summarize: fewer than 2 valid draws");
    s.r0 = column_summary(std::move(r0s));
    s.lambda = column_summary(std::move(lams));
    s.prevalence = column_summary(std::move(prevs));
    return s;
}

MonteCarloResult run_monte_carlo(const ModelParams& baseline, const SamplerConfig& cfg,
                                 ExecutionMode mode)
{
    baseline.validate();
    MonteCarloResult result;
    result.config = cfg;
    result.draws = sample_parameters(baseline, cfg);
    result.outputs = evaluate_draws(result.draws, mode);
    result.summary = summarize(result.draws, result.outputs);
    return result;
}

std::array<double, 16> sampled_halfwidths(const ModelParams& baseline, double shape,
                                          int n_draws, std::uint64_t seed)
{
    SamplerConfig cfg;
    cfg.shape = shape;
    cfg.n_draws = n_draws;
    cfg.seed = seed;
    const auto draws = sample_parameters(baseline, cfg);

    std::array<double, 16> half{};
    const auto& names = ModelParams::parameter_names();
    std::vector<double> column(draws.size());
    for (std::size_t j = 0; j < names.size(); ++j) {
        for (std::size_t i = 0; i < draws.size(); ++i)
            column[i] = draws[i].get(names[j]);
        const auto row = column_summary(column);
        half[j] = 0.5 * (row.ci_high - row.ci_low);
    }
    return half;
}

const std::array<double, 16>& published_ci_halfwidths()
{
    static const std::array<double, 16> half = {
        9.8e-3,   // a
        0.0337,   // b
        2.00e-6,  // mu_H
        5.3e-6,   // r_H
        2.81e5,   // kappa_H
        1.97e-5,  // alpha_H
        8.097e-3, // gamma_H
        8.55e-3,  // p
        8.097e-3, // gamma_M
        5.52e-3,  // mu_M
        2.8226,   // r_M
        5.684e-3, // g
        5.545e6,  // kappa_E
        5.6644e-3,// mu_E
        0.03191,  // c
        0.00398,  // c_S
    };
    return half;
}

void write_draws_csv(std::ostream& os, const MonteCarloResult& result)
{
    os << "# seed=" << result.config.seed << " shape="
       << format_double(result.config.shape) << " n_draws="
       << result.config.n_draws << '\n';
    const auto& names = ModelParams::parameter_names();
    os << "draw";
    for (auto n : names) os << ',' << n;
    os << ",R0,lambda,prevalence,below_threshold,valid\n";
    for (std::size_t i = 0; i < result.draws.size(); ++i) {
        os << i;
        for (auto n : names) os << ',' << format_double(result.draws[i].get(n));
        const auto& o = result.outputs[i];
        os << ',' << format_double(o.r0) << ',' << format_double(o.lambda) << ','
           << format_double(o.prevalence) << ',' << (o.below_threshold ? 1 : 0)
           << ',' << (o.valid ? 1 : 0) << '\n';
    }
}

void write_summary_csv(std::ostream& os, const MonteCarloResult& result)
{
    os << "# seed=" << result.config.seed << " shape="
       << format_double(result.config.shape) << " n_draws="
       << result.config.n_draws << " n_valid=" << result.summary.n_valid
       << " n_below_threshold=" << result.summary.n_below_threshold << '\n';
    os << "column,mean,variance,ci95_low,ci95_high\n";
    auto row = [&](std::string_view name, const SummaryRow& r) {
        os << name << ',' << format_double(r.mean) << ',' << format_double(r.variance)
           << ',' << format_double(r.ci_low) << ',' << format_double(r.ci_high) << '\n';
    };
    const auto& names = ModelParams::parameter_names();
    for (std::size_t j = 0; j < names.size(); ++j)
        row(names[j], result.summary.parameters[j]);
    row("R0", result.summary.r0);
    row("lambda", result.summary.lambda);
    row("prevalence", result.summary.prevalence);
}

} // namespace dengue
