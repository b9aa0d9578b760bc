// Timings of the data-parallel kernels, serial reference vs OpenMP.
#include <chrono>
#include <cstdio>
#include <random>

#include "sigevo/kernels.hpp"
#include "sigevo/solver.hpp"

using namespace sigevo;
using kernels::Exec;
using clk = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(int reps, const F& fn) {
    fn();  // warm up
    const auto t0 = clk::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = clk::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    const int N = argc > 1 ? std::atoi(argv[1]) : 512;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 10;

    ProblemConfig pc;
    pc.sigma = 1.0; pc.sigma1 = 0.25; pc.sigma2 = 0.75; pc.dim_n = 2;
    const ValidatedConfig cfg = validate(pc);
    const GridSpec grid = make_grid(2, N, 256.0);
    FftWorkspace fft(grid);
    const std::size_t total = grid.total_points();

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<cplx> u(total), v(total), f(total), out_u(total), out_v(total);
    for (std::size_t i = 0; i < total; ++i) {
        u[i] = {uni(rng), uni(rng)};
        v[i] = {uni(rng), uni(rng)};
        f[i] = {uni(rng), 0.0};
    }
    std::vector<double> k0(total), k1(total), dk0(total), dk1(total);

    std::printf("grid %dx%d (%zu modes), %d reps\n", N, N, total, reps);
    std::printf("%-24s %12s %12s %8s\n", "kernel", "serial ms", "openmp ms", "speedup");

    auto row = [&](const char* name, auto serial, auto parallel) {
        const double ts = time_ms(reps, serial);
        const double tp = time_ms(reps, parallel);
        std::printf("%-24s %12.3f %12.3f %8.2fx\n", name, ts, tp, ts / tp);
    };

    row("assemble_kernel_tables",
        [&] { kernels::assemble_kernel_tables(cfg, fft.mode_radius(), 0.5, k0, k1, dk0, dk1, Exec::Serial); },
        [&] { kernels::assemble_kernel_tables(cfg, fft.mode_radius(), 0.5, k0, k1, dk0, dk1, Exec::Parallel); });
    row("apply_propagator",
        [&] { kernels::apply_propagator(k0, k1, dk0, dk1, u, v, f, 0.1, out_u, out_v, Exec::Serial); },
        [&] { kernels::apply_propagator(k0, k1, dk0, dk1, u, v, f, 0.1, out_u, out_v, Exec::Parallel); });
    row("map_abs_pow",
        [&] { kernels::map_abs_pow(u, out_u, 3.0, Exec::Serial); },
        [&] { kernels::map_abs_pow(u, out_u, 3.0, Exec::Parallel); });
    row("weighted_norm_sq",
        [&] { (void)kernels::weighted_norm_sq(k1, u, Exec::Serial); },
        [&] { (void)kernels::weighted_norm_sq(k1, u, Exec::Parallel); });
    row("apply_real_mask",
        [&] { kernels::apply_real_mask(out_u, fft.dealias_mask(), Exec::Serial); },
        [&] { kernels::apply_real_mask(out_u, fft.dealias_mask(), Exec::Parallel); });
    return 0;
}
