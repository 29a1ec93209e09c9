#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dengue/model.hpp"
#include "dengue/parallel.hpp"

namespace dengue {

// Symmetric-Beta resampling around the baseline: each enabled parameter is
// drawn as 2 * baseline * Beta(shape, shape), so the draw mean is the
// baseline and the support is [0, 2*baseline]. Per-draw generators are
// seeded from (seed, draw index); serial and parallel evaluation produce
// identical sequences.
struct SamplerConfig {
    double shape = 50.0;
    int n_draws = 1000;
    std::uint64_t seed = 20130812;
    std::array<bool, 16> enabled{}; // indexed like ModelParams::parameter_names()

    SamplerConfig() { enabled.fill(true); }
    void validate() const;
};

std::vector<ModelParams> sample_parameters(const ModelParams& baseline,
                                           const SamplerConfig& cfg);

struct DrawOutputs {
    double r0 = 0;
    double lambda = 0;
    double prevalence = 0;
    bool below_threshold = false; // R0 <= 1: lambda and prevalence forced to 0
    bool valid = true;            // false when the draw violates model preconditions
};

std::vector<DrawOutputs> evaluate_draws(const std::vector<ModelParams>& draws,
                                        ExecutionMode mode = ExecutionMode::Parallel);

struct SummaryRow {
    double mean = 0;
    double variance = 0; // unbiased
    double ci_low = 0;   // empirical 2.5% quantile
    double ci_high = 0;  // empirical 97.5% quantile
};

struct MonteCarloSummary {
    std::array<SummaryRow, 16> parameters; // ModelParams::parameter_names() order
    SummaryRow r0;
    SummaryRow lambda;
    SummaryRow prevalence;
    int n_draws = 0;
    int n_valid = 0;
    int n_below_threshold = 0;
};

/// Per-column mean, unbiased variance and central 95% interval. Outputs of
/// invalid draws are excluded. Throws InsufficientDataError below 2 draws.
MonteCarloSummary summarize(const std::vector<ModelParams>& draws,
                            const std::vector<DrawOutputs>& outputs);

struct MonteCarloResult {
    SamplerConfig config;
    std::vector<ModelParams> draws;
    std::vector<DrawOutputs> outputs;
    MonteCarloSummary summary;
};

MonteCarloResult run_monte_carlo(const ModelParams& baseline, const SamplerConfig& cfg,
                                 ExecutionMode mode = ExecutionMode::Parallel);

/// Half-width of the empirical central 95% interval of each sampled
/// parameter for a candidate shape; the calibration table for picking the
/// default dispersion.
std::array<double, 16> sampled_halfwidths(const ModelParams& baseline, double shape,
                                          int n_draws, std::uint64_t seed);

/// Published per-parameter 95% CI half-widths (the column the default shape
/// was calibrated against), in parameter_names() order.
const std::array<double, 16>& published_ci_halfwidths();

// CSV artifacts; the seed travels in a leading comment line.
void write_draws_csv(std::ostream& os, const MonteCarloResult& result);
void write_summary_csv(std::ostream& os, const MonteCarloResult& result);

} // namespace dengue
