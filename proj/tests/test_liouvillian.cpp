#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dmsim/liouvillian.hpp"
#include "dmsim/propagation.hpp"
#include "dmsim/units.hpp"

using namespace dmsim;

namespace {

ComplexMatrix random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    ComplexMatrix m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = Complex(dist(rng), dist(rng));
    return 0.5 * (m + m.adjoint());
}

DriveSchedule two_tone_schedule() {
    DriveSchedule s;
    FlatTopParams q;
    q.amp = 0.3;
    q.t_rise = 2.0;
    q.t0 = 1.0;
    q.t1 = 40.0;
    q.omega = units::ghz_to_angular(7.8);
    q.phase = 0.3;
    q.drag_coeff = 0.2;
    s.qubit.push_back(q);
    FlatTopParams r = q;
    r.amp = 0.11;
    r.omega = units::ghz_to_angular(6.1);
    r.phase = -0.8;
    s.resonator.push_back(r);
    return s;
}

// literal dense RHS through model operators
ComplexMatrix dense_rhs(const DeviceParams& p, const DriveSchedule& sched,
                        const ComplexMatrix& rho, double t) {
    const auto drift = build_drift(p);
    const auto drive = build_drive_ops(p);
    const auto collapse = build_collapse_ops(p);
    auto h_of_t = [&](double tt) -> ComplexMatrix {
        return drift + sched.omega_q_drive(tt) * drive.x_q + sched.omega_r_drive(tt) * drive.x_r;
    };
    return lindblad_rhs(rho, t, h_of_t, collapse);
}

}  // namespace

TEST_CASE("structured generator matches dense reference") {
    for (auto [nq, nr] : {std::pair{3, 4}, std::pair{4, 6}, std::pair{3, 2}}) {
        DeviceParams p = DeviceParams::table1({nq, nr});
        const int n = p.dims.joint();
        const ComplexMatrix rho = random_hermitian(n, 7 * nq + nr);
        const DriveSchedule sched = two_tone_schedule();

        LindbladGenerator gen(p);
        ComplexMatrix fast(n, n);
        KernelWorkspace ws;
        for (double t : {0.0, 3.7, 25.0}) {
            gen.apply(rho, t, sched, fast, ws);
            const ComplexMatrix ref = dense_rhs(p, sched, rho, t);
            const double err = (fast - ref).norm() / std::max(1.0, ref.norm());
            CAPTURE(nq);
            CAPTURE(nr);
            CAPTURE(t);
            CHECK(err < 1e-13);
        }
    }
}

TEST_CASE("structured generator matches dense reference on non-hermitian input") {
    DeviceParams p = DeviceParams::table1({3, 5});
    const int n = p.dims.joint();
    std::mt19937 rng(42);
    std::normal_distribution<double> dist;
    ComplexMatrix rho(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) rho(i, j) = Complex(dist(rng), dist(rng));

    LindbladGenerator gen(p);
    ComplexMatrix fast(n, n);
    KernelWorkspace ws;
    gen.apply(rho, 1.2, two_tone_schedule(), fast, ws);
    const ComplexMatrix ref = dense_rhs(p, two_tone_schedule(), rho, 1.2);
    CHECK((fast - ref).norm() / ref.norm() < 1e-13);
}

TEST_CASE("openmp kernel agrees with serial kernel bitwise") {
    DeviceParams p = DeviceParams::table1({4, 7});
    const int n = p.dims.joint();
    const ComplexMatrix rho = random_hermitian(n, 11);
    LindbladGenerator gen(p);
    const DriveSchedule sched = two_tone_schedule();

    ComplexMatrix serial(n, n), parallel(n, n);
    KernelWorkspace ws;
    gen.apply(rho, 5.0, sched, serial, ws, ExecPolicy::Serial);
    gen.apply(rho, 5.0, sched, parallel, ws, ExecPolicy::OpenMP);
    CHECK((serial - parallel).norm() == 0.0);
}

TEST_CASE("generator trace-free on random input") {
    DeviceParams p = DeviceParams::table1({3, 8});
    const int n = p.dims.joint();
    const ComplexMatrix rho = random_hermitian(n, 3);
    LindbladGenerator gen(p);
    ComplexMatrix out(n, n);
    KernelWorkspace ws;
    gen.apply(rho, 0.7, two_tone_schedule(), out, ws);
    CHECK(std::abs(out.trace()) < 1e-12 * rho.norm());
}

TEST_CASE("rotating frame leaves populations' dynamics consistent") {
    // apply in both frames at t=0 where phases are unity: diagonals must agree
    DeviceParams p = DeviceParams::table1({3, 4});
    const int n = p.dims.joint();
    const ComplexMatrix rho = random_hermitian(n, 5);
    LindbladGenerator lab(p, Frame::Lab), rot(p, Frame::Rotating);
    const DriveSchedule sched = two_tone_schedule();
    ComplexMatrix out_lab(n, n), out_rot(n, n);
    KernelWorkspace ws;
    lab.apply(rho, 0.0, sched, out_lab, ws);
    rot.apply(rho, 0.0, sched, out_rot, ws);
    CHECK((out_lab.diagonal() - out_rot.diagonal()).norm() < 1e-13);
}
