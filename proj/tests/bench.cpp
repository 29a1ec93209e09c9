// Benchmark comparing the OpenMP kernels against their serial reference
// implementations, verifying bit-identical results along the way.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "dengue/equilibrium.hpp"
#include "dengue/montecarlo.hpp"
#include "dengue/parallel.hpp"
#include "dengue/spatial.hpp"

using namespace dengue;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int mismatches = 0;

void check_equal(double a, double b)
{
    if (std::memcmp(&a, &b, sizeof a) != 0) ++mismatches;
}

void bench_spatial(int nx, double days, int repeats)
{
    const ModelParams p = ModelParams::baseline();
    const auto df = disease_free_populations(p);
    StateVector base;
    base.S_H = df.n_h0;
    base.S_M = df.n_m;
    base.S_E = df.n_e;

    const Grid grid{nx, nx, 1.0, true};
    SpatialField field = SpatialField::uniform(grid, base);
    field.cells[static_cast<std::size_t>(grid.index(nx / 2, nx / 2))].I_M = 50.0;
    const auto kernel = build_kernel(KernelProfile::Gaussian, 4.0, grid);

    SolverConfig cfg;
    cfg.sample_dt = days;

    double serial_ms = 0, parallel_ms = 0;
    SpatialTrajectory serial, parallel;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = Clock::now();
        serial = simulate_spatial(field, kernel, p, 0.0, days, cfg,
                                  ExecutionMode::Serial);
        serial_ms += ms_since(t0);
        t0 = Clock::now();
        parallel = simulate_spatial(field, kernel, p, 0.0, days, cfg,
                                    ExecutionMode::Parallel);
        parallel_ms += ms_since(t0);
    }
    for (std::size_t k = 0; k < serial.times.size(); ++k)
        for (int c = 0; c < grid.cells(); ++c) {
            const auto a = serial.snapshots[k][static_cast<std::size_t>(c)].to_array();
            const auto b =
                parallel.snapshots[k][static_cast<std::size_t>(c)].to_array();
            for (std::size_t i = 0; i < 8; ++i) check_equal(a[i], b[i]);
        }

    std::printf("spatial %dx%d, %g days, kernel %zu offsets: serial %.1f ms, "
                "parallel %.1f ms (%.2fx, %d threads)\n",
                nx, nx, days, kernel.offsets.size(), serial_ms / repeats,
                parallel_ms / repeats, serial_ms / parallel_ms,
                max_threads());
}

void bench_montecarlo(int n_draws, int repeats)
{
    SamplerConfig cfg;
    cfg.n_draws = n_draws;
    const auto draws = sample_parameters(ModelParams::baseline(), cfg);

    double serial_ms = 0, parallel_ms = 0;
    std::vector<DrawOutputs> serial, parallel;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = Clock::now();
        serial = evaluate_draws(draws, ExecutionMode::Serial);
        serial_ms += ms_since(t0);
        t0 = Clock::now();
        parallel = evaluate_draws(draws, ExecutionMode::Parallel);
        parallel_ms += ms_since(t0);
    }
    for (std::size_t i = 0; i < serial.size(); ++i) {
        check_equal(serial[i].r0, parallel[i].r0);
        check_equal(serial[i].lambda, parallel[i].lambda);
        check_equal(serial[i].prevalence, parallel[i].prevalence);
    }

    std::printf("montecarlo %d draws: serial %.1f ms, parallel %.1f ms "
                "(%.2fx, %d threads)\n",
                n_draws, serial_ms / repeats, parallel_ms / repeats,
                serial_ms / parallel_ms, max_threads());
}

} // namespace

int main(int argc, char** argv)
{
    const bool quick = argc > 1 && std::string_view(argv[1]) == "--quick";
    std::printf("openmp: %s\n", openmp_enabled() ? "enabled" : "disabled");

    if (quick) {
        bench_spatial(12, 5.0, 1);
        bench_montecarlo(500, 2);
    } else {
        bench_spatial(48, 20.0, 3);
        bench_montecarlo(20000, 5);
    }

    if (mismatches > 0) {
        std::printf("FAIL: %d serial/parallel value mismatches\n", mismatches);
        return 1;
    }
    std::printf("serial and parallel results are bit-identical\n");
    return 0;
}
