#pragma once

#include <array>
#include <cmath>
#include <random>

#include "dengue/model.hpp"

namespace dengue::test {

inline double rel_diff(double actual, double expected)
{
    return std::abs(actual - expected) / std::abs(expected);
}

// Per-equation sum of |term| magnitudes, transcribed independently of the
// production rhs so residual checks have a flow scale to compare against.
inline std::array<double, 8> flow_scales(const StateVector& x, const ModelParams& p,
                                         double t = 0)
{
    const double n_h = x.n_h();
    const double cs = seasonal_factor(t, p.seasonality);
    const double bite_h = std::abs(p.a * p.b * x.I_M * x.S_H / n_h);
    const double bite_m = std::abs(p.a * p.c * x.S_M * x.I_H / n_h);
    const double room = std::abs(1.0 - (x.S_E + x.I_E) / p.kappa_E);

    std::array<double, 8> s{};
    s[0] = bite_h + std::abs(p.mu_H * x.S_H) +
           std::abs(p.r_H * n_h * (1.0 - n_h / p.kappa_H));
    s[1] = bite_h + std::abs((p.mu_H + p.alpha_H + p.gamma_H) * x.I_H);
    s[2] = std::abs(p.gamma_H * x.I_H) + std::abs(p.mu_H * x.R_H);
    s[3] = std::abs(p.p * cs * x.S_E) + std::abs(p.mu_M * x.S_M) + bite_m;
    s[4] = bite_m + std::abs((p.gamma_M + p.mu_M) * x.L_M);
    s[5] = std::abs(p.gamma_M * x.L_M) + std::abs(p.mu_M * x.I_M) +
           std::abs(p.p * cs * x.I_E);
    s[6] = std::abs(p.r_M * (x.S_M + (1.0 - p.g) * (x.I_M + x.L_M)) * room) +
           std::abs(p.mu_E * x.S_E) + std::abs(p.p * cs * x.S_E);
    s[7] = std::abs(p.g * p.r_M * (x.I_M + x.L_M) * room) +
           std::abs(p.mu_E * x.I_E) + std::abs(p.p * cs * x.I_E);
    return s;
}

// Largest |dx_i/dt| relative to that equation's flow scale.
inline double max_relative_residual(const StateVector& x, const ModelParams& p,
                                    double t = 0)
{
    const auto d = rhs_unchecked(x, p, t).to_array();
    const auto scales = flow_scales(x, p, t);
    double worst = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double scale = std::max(scales[i], 1e-30);
        worst = std::max(worst, std::abs(d[i]) / scale);
    }
    return worst;
}

// Baseline jittered by independent uniform factors in [lo, hi]; rejects
// biologically impossible combinations.
inline ModelParams random_params(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> factor(lo, hi);
    for (;;) {
        ModelParams p = ModelParams::baseline();
        for (auto name : ModelParams::parameter_names())
            p.set(name, p.get(name) * factor(rng));
        p.b = std::min(p.b, 1.0);
        p.c = std::min(p.c, 1.0);
        if (p.r_H <= p.mu_H || p.g >= 1) continue;
        return p;
    }
}

} // namespace dengue::test
