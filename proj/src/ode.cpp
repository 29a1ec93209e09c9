#include "dengue/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>

#include "dengue/csv.hpp"

namespace dengue {

void SolverConfig::validate() const
{
    if (!(rtol > 0) || !(atol > 0))
        throw DomainError("SolverConfig: tolerances must be positive");
    if (method == SolverMethod::FixedRk4 && !(fixed_step > 0))
        throw DomainError("SolverConfig: fixed_step must be positive");
    if (sample_dt < 0 || initial_step < 0)
        throw DomainError("SolverConfig: negative step settings");
    if (!(min_step > 0))
        throw DomainError("SolverConfig: min_step must be positive");
    if (!(convergence_window > 0) || !(convergence_tol > 0))
        throw DomainError("SolverConfig: convergence settings must be positive");
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order weights minus the embedded 4th-order weights.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

class Stepper {
public:
    Stepper(const FlatRhs& f, std::span<const double> y0, const SolverConfig& cfg)
        : f_(f), cfg_(cfg), n_(y0.size()), y_(y0.begin(), y0.end())
    {
        // Absolute tolerance scaled per component to the starting magnitude;
        // components born at zero keep the raw floor.
        atol_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            atol_[i] = cfg.atol * std::max(1.0, std::abs(y_[i]));
        for (auto& k : k_) k.resize(n_);
        ytmp_.resize(n_);
        ynew_.resize(n_);
    }

    const std::vector<double>& state() const { return y_; }

    /// Exactly one accepted step, never beyond t_max. Gaps at round-off
    /// scale are snapped to t_max so callers' sweep loops terminate.
    void advance_single(double& t, double t_max)
    {
        const double gap = t_max - t;
        if (gap <= 4 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(t_max))) {
            t = t_max;
            return;
        }
        if (cfg_.method == SolverMethod::FixedRk4) {
            fixed_step(t, std::min(cfg_.fixed_step, gap));
            return;
        }
        if (h_ <= 0) h_ = initial_step(t, t_max);
        for (;;) {
            h_ = std::min(h_, t_max - t);
            if (adaptive_attempt(t)) {
                t = tnew_;
                y_ = ynew_;
                return;
            }
        }
    }

    void advance_to(double& t, double t_target)
    {
        while (t < t_target) advance_single(t, t_target);
    }

private:
    double initial_step(double t, double t_target) const
    {
        if (cfg_.initial_step > 0) return cfg_.initial_step;
        return std::min(1.0, (t_target - t) / 100.0);
    }

    void eval(double t, const std::vector<double>& y, std::vector<double>& dydt)
    {
        f_(t, std::span<const double>(y), std::span<double>(dydt));
        if (++evals_ > max_evals_)
            throw NumericalError("integrate: evaluation budget exceeded");
    }

    // Returns true when accepted (result in ynew_/tnew_), false on rejection
    // with h_ already reduced.
    bool adaptive_attempt(double t)
    {
        const double h = h_;
        eval(t, y_, k_[0]);

        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * a21 * k_[0][i];
        eval(t + c2 * h, ytmp_, k_[1]);

        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a31 * k_[0][i] + a32 * k_[1][i]);
        eval(t + c3 * h, ytmp_, k_[2]);

        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i]);
        eval(t + c4 * h, ytmp_, k_[3]);

        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a51 * k_[0][i] + a52 * k_[1][i] +
                                    a53 * k_[2][i] + a54 * k_[3][i]);
        eval(t + c5 * h, ytmp_, k_[4]);

        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * (a61 * k_[0][i] + a62 * k_[1][i] + a63 * k_[2][i] +
                                    a64 * k_[3][i] + a65 * k_[4][i]);
        eval(t + h, ytmp_, k_[5]);

        for (std::size_t i = 0; i < n_; ++i)
            ynew_[i] = y_[i] + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i] +
                                    b5 * k_[4][i] + b6 * k_[5][i]);
        eval(t + h, ynew_, k_[6]);

        double err_sq = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double err_i =
                h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] +
                     e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
            const double sc =
                atol_[i] + cfg_.rtol * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
            err_sq += (err_i / sc) * (err_i / sc);
        }
        const double err = std::sqrt(err_sq / static_cast<double>(n_));
        if (!std::isfinite(err))
            throw NumericalError("integrate: non-finite error estimate");

        bool negative_reject = false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (ynew_[i] < -atol_[i]) {
                negative_reject = true;
                break;
            }
        }

        if (err > 1.0 || negative_reject) {
            const double shrink =
                negative_reject ? 0.5 : std::max(0.2, 0.9 * std::pow(err, -0.2));
            h_ = h * std::min(shrink, 0.9);
            if (h_ < cfg_.min_step)
                throw StiffnessError("integrate: step size collapsed below floor");
            return false;
        }

        for (std::size_t i = 0; i < n_; ++i)
            if (ynew_[i] < 0) ynew_[i] = 0.0;

        tnew_ = t + h;
        const double grow = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h_ = h * std::clamp(grow, 0.2, 5.0);
        return true;
    }

    void fixed_step(double& t, double h)
    {
        eval(t, y_, k_[0]);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + 0.5 * h * k_[0][i];
        eval(t + 0.5 * h, ytmp_, k_[1]);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + 0.5 * h * k_[1][i];
        eval(t + 0.5 * h, ytmp_, k_[2]);
        for (std::size_t i = 0; i < n_; ++i)
            ytmp_[i] = y_[i] + h * k_[2][i];
        eval(t + h, ytmp_, k_[3]);
        for (std::size_t i = 0; i < n_; ++i) {
            y_[i] += h / 6.0 * (k_[0][i] + 2.0 * k_[1][i] + 2.0 * k_[2][i] + k_[3][i]);
            if (y_[i] < 0) {
                if (y_[i] < -atol_[i])
                    throw NumericalError(
                        "integrate: fixed step drove a component negative");
                y_[i] = 0.0;
            }
        }
        t += h;
    }

    const FlatRhs& f_;
    const SolverConfig& cfg_;
    std::size_t n_;
    std::vector<double> y_;
    std::vector<double> atol_;
    std::array<std::vector<double>, 7> k_;
    std::vector<double> ytmp_;
    std::vector<double> ynew_;
    double h_ = 0;
    double tnew_ = 0;
    long long evals_ = 0;
    static constexpr long long max_evals_ = 500'000'000LL;
};

} // namespace

FlatTrajectory integrate_flat(const FlatRhs& f, std::span<const double> y0,
                              double t0, double t1, const SolverConfig& cfg)
{
    cfg.validate();
    if (!(t1 > t0))
        throw DomainError("integrate: need t1 > t0");

    FlatTrajectory out;
    out.times.push_back(t0);
    out.states.emplace_back(y0.begin(), y0.end());

    Stepper stepper(f, y0, cfg);
    double t = t0;

    if (cfg.sample_dt > 0) {
        const double span = t1 - t0;
        const auto n_samples = static_cast<long long>(
            std::floor(span / cfg.sample_dt * (1.0 + 1e-12)));
        for (long long k = 1; k <= n_samples; ++k) {
            const double target = t0 + static_cast<double>(k) * cfg.sample_dt;
            stepper.advance_to(t, target);
            out.times.push_back(t);
            out.states.push_back(stepper.state());
        }
        if (t < t1 - 1e-9 * cfg.sample_dt) {
            stepper.advance_to(t, t1);
            out.times.push_back(t);
            out.states.push_back(stepper.state());
        }
    } else {
        while (t < t1) {
            stepper.advance_single(t, t1);
            out.times.push_back(t);
            out.states.push_back(stepper.state());
        }
    }
    return out;
}

void Trajectory::write_csv(std::ostream& os) const
{
    os << "t";
    for (auto name : StateVector::names()) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << format_double(times[i]);
        for (double v : states[i].to_array()) os << ',' << format_double(v);
        os << '\n';
    }
}

Trajectory integrate(const StateVector& x0, const ModelParams& p, double t0,
                     double t1, const SolverConfig& cfg)
{
    p.validate();
    const auto arr = x0.to_array();
    for (std::size_t i = 0; i < arr.size(); ++i)
        if (arr[i] < 0)
            throw DomainError("integrate: negative initial compartment " +
                              std::string(StateVector::names()[i]));
    if (!(x0.n_h() > 0))
        throw DomainError("integrate: initial N_H must be positive");

    const FlatRhs f = [&p](double t, std::span<const double> y,
                           std::span<double> dydt) {
        const StateVector x{y[0], y[1], y[2], y[3], y[4], y[5], y[6], y[7]};
        const StateVector d = rhs_unchecked(x, p, t);
        const auto da = d.to_array();
        std::copy(da.begin(), da.end(), dydt.begin());
    };

    const FlatTrajectory flat = integrate_flat(f, arr, t0, t1, cfg);

    Trajectory out;
    out.params = p;
    out.times = flat.times;
    out.states.reserve(flat.states.size());
    for (const auto& y : flat.states)
        out.states.push_back({y[0], y[1], y[2], y[3], y[4], y[5], y[6], y[7]});
    return out;
}

SteadyState detect_steady_state(const Trajectory& traj, double window, double tol)
{
    if (traj.times.empty())
        throw DomainError("detect_steady_state: empty trajectory");
    const double t_end = traj.times.back();
    if (t_end - traj.times.front() < window)
        throw DomainError("detect_steady_state: trajectory shorter than window");

    std::size_t first = traj.times.size();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] >= t_end - window) {
            first = i;
            break;
        }
    }

    std::array<double, 8> lo{}, hi{}, sum{};
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    std::size_t count = 0;
    for (std::size_t i = first; i < traj.states.size(); ++i) {
        const auto v = traj.states[i].to_array();
        for (std::size_t j = 0; j < 8; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
            sum[j] += v[j];
        }
        ++count;
    }

    bool converged = true;
    std::array<double, 8> mean{};
    for (std::size_t j = 0; j < 8; ++j) {
        mean[j] = sum[j] / static_cast<double>(count);
        const double scale = std::max(std::abs(lo[j]), std::abs(hi[j]));
        const double change = scale > 0 ? (hi[j] - lo[j]) / scale : 0.0;
        if (change >= tol) converged = false;
    }
    return {converged, StateVector::from_array(mean)};
}

} // namespace dengue
