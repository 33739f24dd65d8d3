// Timing comparison of the Lindblad right-hand-side kernels and the RK7 step:
// dense reference vs structured serial vs structured OpenMP.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dmsim/liouvillian.hpp"
#include "dmsim/propagation.hpp"
#include "dmsim/units.hpp"

using namespace dmsim;
using Clock = std::chrono::steady_clock;

namespace {

ComplexMatrix random_density(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    ComplexMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = Complex(dist(rng), dist(rng));
    ComplexMatrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    return rho;
}

DriveSchedule bench_schedule() {
    DriveSchedule s;
    FlatTopParams q{0.3, 2.0, 1.0, 900.0, units::ghz_to_angular(7.8), 0.1, 0.2};
    FlatTopParams r{0.1, 2.0, 1.0, 900.0, units::ghz_to_angular(6.0), -0.4, 0.0};
    s.qubit.push_back(q);
    s.resonator.push_back(r);
    return s;
}

double time_loop(int iters, const std::function<void()>& fn) {
    fn();  // warmup
    const auto start = Clock::now();
    for (int i = 0; i < iters; ++i) fn();
    const auto stop = Clock::now();
    return std::chrono::duration<double, std::micro>(stop - start).count() / iters;
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 0;
    if (argc > 1) threads = std::atoi(argv[1]);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("openmp: enabled, max threads %d\n", omp_get_max_threads());
#else
    (void)threads;
    std::printf("openmp: disabled\n");
#endif

    const DriveSchedule sched = bench_schedule();

    for (auto [nq, nr] : {std::pair{3, 8}, std::pair{4, 10}, std::pair{5, 25}}) {
        DeviceParams p = DeviceParams::table1({nq, nr});
        const int n = p.dims.joint();
        LindbladGenerator gen(p);
        const ComplexMatrix rho = random_density(n, 1234);
        ComplexMatrix out(n, n);
        KernelWorkspace ws;
        gen.init_workspace(ws);

        const auto drift = build_drift(p);
        const auto drive = build_drive_ops(p);
        const auto collapse = build_collapse_ops(p);
        auto h_of_t = [&](double t) -> ComplexMatrix {
            return drift + sched.omega_q_drive(t) * drive.x_q + sched.omega_r_drive(t) * drive.x_r;
        };

        const int iters = n <= 64 ? 400 : 50;
        const double us_dense = time_loop(std::max(4, iters / 10), [&] {
            out = lindblad_rhs(rho, 5.0, h_of_t, collapse);
        });
        const double us_serial = time_loop(iters, [&] {
            gen.apply(rho, 5.0, sched, out, ws, ExecPolicy::Serial);
        });
        const double us_omp = time_loop(iters, [&] {
            gen.apply(rho, 5.0, sched, out, ws, ExecPolicy::OpenMP);
        });

        DensityState st{rho, 0.0};
        PropagateOptions opts;
        opts.record_stride = 1 << 30;
        opts.check_positivity = false;
        const double dt = default_dt(gen, sched);
        opts.dt = dt;
        const double us_step = time_loop(std::max(2, iters / 10), [&] {
            (void)propagate(st, gen, sched, 0.0, dt, opts);
        });

        std::printf(
            "dims (%d,%d) n=%3d | rhs dense %9.1f us | serial %8.2f us | omp %8.2f us | "
            "rk7 step %8.1f us | dt_auto %.4f ps\n",
            nq, nr, n, us_dense, us_serial, us_omp, us_step, dt * 1e3);
    }
    return 0;
}
