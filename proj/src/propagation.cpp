#include "dmsim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <Eigen/Eigenvalues>

#include "dmsim/units.hpp"

namespace dmsim {

double DensityState::hermiticity_defect() const {
    const double nrm = rho.norm();
    if (nrm == 0.0) return 0.0;
    return (rho - rho.adjoint()).norm() / nrm;
}

double DensityState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho + rho.adjoint()),
                                                    Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

const Rk7Tableau& Rk7Tableau::get() {
    static const Rk7Tableau t = [] {
        Rk7Tableau tb{};
        auto& a = tb.a;
        for (auto& row : a) row.fill(0.0);
        a[1][0] = 2.0 / 27.0;
        a[2][0] = 1.0 / 36.0; a[2][1] = 1.0 / 12.0;
        a[3][0] = 1.0 / 24.0; a[3][2] = 1.0 / 8.0;
        a[4][0] = 5.0 / 12.0; a[4][2] = -25.0 / 16.0; a[4][3] = 25.0 / 16.0;
        a[5][0] = 1.0 / 20.0; a[5][3] = 1.0 / 4.0; a[5][4] = 1.0 / 5.0;
        a[6][0] = -25.0 / 108.0; a[6][3] = 125.0 / 108.0; a[6][4] = -65.0 / 27.0;
        a[6][5] = 125.0 / 54.0;
        a[7][0] = 31.0 / 300.0; a[7][4] = 61.0 / 225.0; a[7][5] = -2.0 / 9.0;
        a[7][6] = 13.0 / 900.0;
        a[8][0] = 2.0; a[8][3] = -53.0 / 6.0; a[8][4] = 704.0 / 45.0; a[8][5] = -107.0 / 9.0;
        a[8][6] = 67.0 / 90.0; a[8][7] = 3.0;
        a[9][0] = -91.0 / 108.0; a[9][3] = 23.0 / 108.0; a[9][4] = -976.0 / 135.0;
        a[9][5] = 311.0 / 54.0; a[9][6] = -19.0 / 60.0; a[9][7] = 17.0 / 6.0;
        a[9][8] = -1.0 / 12.0;
        a[10][0] = 2383.0 / 4100.0; a[10][3] = -341.0 / 164.0; a[10][4] = 4496.0 / 1025.0;
        a[10][5] = -301.0 / 82.0; a[10][6] = 2133.0 / 4100.0; a[10][7] = 45.0 / 82.0;
        a[10][8] = 45.0 / 164.0; a[10][9] = 18.0 / 41.0;
        a[11][0] = 3.0 / 205.0; a[11][5] = -6.0 / 41.0; a[11][6] = -3.0 / 205.0;
        a[11][7] = -3.0 / 41.0; a[11][8] = 3.0 / 41.0; a[11][9] = 6.0 / 41.0;
        a[12][0] = -1777.0 / 4100.0; a[12][3] = -341.0 / 164.0; a[12][4] = 4496.0 / 1025.0;
        a[12][5] = -289.0 / 82.0; a[12][6] = 2193.0 / 4100.0; a[12][7] = 51.0 / 82.0;
        a[12][8] = 33.0 / 164.0; a[12][9] = 12.0 / 41.0; a[12][11] = 1.0;

        tb.b7 = {41.0 / 840.0, 0, 0, 0, 0, 34.0 / 105.0, 9.0 / 35.0, 9.0 / 35.0,
                 9.0 / 280.0, 9.0 / 280.0, 41.0 / 840.0, 0, 0};
        tb.b8 = {0, 0, 0, 0, 0, 34.0 / 105.0, 9.0 / 35.0, 9.0 / 35.0,
                 9.0 / 280.0, 9.0 / 280.0, 0, 41.0 / 840.0, 41.0 / 840.0};
        tb.c = {0, 2.0 / 27.0, 1.0 / 9.0, 1.0 / 6.0, 5.0 / 12.0, 1.0 / 2.0, 5.0 / 6.0,
                1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, 1.0, 0.0, 1.0};
        return tb;
    }();
    return t;
}

double rk7_stability_factor(Complex z) {
    const auto& tb = Rk7Tableau::get();
    constexpr int s = Rk7Tableau::stages;
    // k_i = z * (1 + sum_j a_ij k_j); R = 1 + sum_i b_i k_i
    std::array<Complex, s> k{};
    for (int i = 0; i < s; ++i) {
        Complex acc(1.0, 0.0);
        for (int j = 0; j < i; ++j) acc += tb.a[i][j] * k[j];
        k[i] = z * acc;
    }
    Complex r(1.0, 0.0);
    for (int i = 0; i < s; ++i) r += tb.b7[i] * k[i];
    return std::abs(r);
}

double stability_max_dt(const LindbladGenerator& gen, double safety) {
    const int n = gen.size();
    // collect distinct diagonal modes against the ground index
    std::vector<Complex> modes;
    modes.reserve(static_cast<std::size_t>(n) * 4);
    for (int i = 0; i < n; ++i)
        for (int j : {0, i / 2, std::max(0, i - 1), i})
            modes.push_back(gen.diagonal_mode(i, j));
    // full scan is cheap enough at the dims used here; include all pairs
    if (n <= 256) {
        modes.clear();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) modes.push_back(gen.diagonal_mode(i, j));
    }

    auto stable = [&](double dt) {
        for (const Complex& lam : modes)
            if (rk7_stability_factor(dt * lam) > 1.0 + 1e-12) return false;
        return true;
    };

    double lo = 0.0, hi = 1e-4;  // ns
    while (stable(hi) && hi < 1.0) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return safety * lo;
}

double default_dt(const LindbladGenerator& gen, const DriveSchedule& schedule) {
    const double w_fast = std::max(schedule.max_carrier(), gen.params().omega_q);
    const double t_min = units::two_pi / w_fast;
    return std::min(t_min / 40.0, stability_max_dt(gen));
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t,
                           const std::function<ComplexMatrix(double)>& h_of_t,
                           const CollapseSet& collapse) {
    const ComplexMatrix h = h_of_t(t);
    ComplexMatrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
    for (const auto& ch : collapse.channels) {
        if (ch.rate == 0.0) continue;
        const ComplexMatrix l_rho = ch.op * rho;
        const ComplexMatrix ldl = ch.op.adjoint() * ch.op;
        out += ch.rate * (l_rho * ch.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

namespace {

// dest = base + dt * sum_i coeff_i * k_i, evaluated in few passes
void weighted_sum(ComplexMatrix& dest, const ComplexMatrix& base, double dt,
                  const double* coeffs, const std::vector<ComplexMatrix>& k, const int* idx,
                  int count) {
    switch (count) {
        case 0: dest = base; return;
        case 1: dest = base + (dt * coeffs[0]) * k[idx[0]]; return;
        case 2:
            dest = base + (dt * coeffs[0]) * k[idx[0]] + (dt * coeffs[1]) * k[idx[1]];
            return;
        default:
            dest = base + (dt * coeffs[0]) * k[idx[0]] + (dt * coeffs[1]) * k[idx[1]] +
                   (dt * coeffs[2]) * k[idx[2]];
            for (int i = 3; i + 1 < count; i += 2)
                dest += (dt * coeffs[i]) * k[idx[i]] + (dt * coeffs[i + 1]) * k[idx[i + 1]];
            if ((count - 3) % 2 == 1) dest += (dt * coeffs[count - 1]) * k[idx[count - 1]];
            return;
    }
}

struct StageLists {
    // nonzero (index, coeff) per stage row, and for b7
    std::array<std::array<int, 13>, 13> idx{};
    std::array<std::array<double, 13>, 13> coeff{};
    std::array<int, 13> count{};
    std::array<int, 13> b_idx{};
    std::array<double, 13> b_coeff{};
    int b_count = 0;

    StageLists() {
        const auto& tb = Rk7Tableau::get();
        for (int i = 0; i < 13; ++i) {
            int c = 0;
            for (int j = 0; j < i; ++j)
                if (tb.a[i][j] != 0.0) {
                    idx[i][c] = j;
                    coeff[i][c] = tb.a[i][j];
                    ++c;
                }
            count[i] = c;
        }
        for (int i = 0; i < 13; ++i)
            if (tb.b7[i] != 0.0) {
                b_idx[b_count] = i;
                b_coeff[b_count] = tb.b7[i];
                ++b_count;
            }
    }
};

}  // namespace

Trajectory propagate(const DensityState& initial, const LindbladGenerator& gen,
                     const DriveSchedule& schedule, double t_start, double t_end,
                     const PropagateOptions& opts) {
    const int n = gen.size();
    if (initial.rho.rows() != n || initial.rho.cols() != n)
        throw std::invalid_argument("propagate: state dimension does not match generator");
    if (!(t_end > t_start)) throw std::invalid_argument("propagate: empty time span");

    const double w_fast = std::max(schedule.max_carrier(), gen.params().omega_q);
    const double t_min = units::two_pi / w_fast;
    double dt = opts.dt;
    if (dt <= 0.0) {
        dt = default_dt(gen, schedule);
    } else if (dt > t_min / 20.0) {
        if (!opts.allow_coarse_dt)
            throw std::invalid_argument("propagate: dt exceeds T_min/20 carrier resolution; "
                                        "set allow_coarse_dt to override");
        std::cerr << "[propagate] warning: dt = " << dt << " ns exceeds T_min/20 = "
                  << t_min / 20.0 << " ns\n";
    }

    const long n_steps = std::max(1L, std::lround(std::ceil((t_end - t_start) / dt)));
    dt = (t_end - t_start) / static_cast<double>(n_steps);

    static const StageLists stage_lists;
    const auto& tb = Rk7Tableau::get();
    constexpr int s = Rk7Tableau::stages;

    std::vector<ComplexMatrix> k(s, ComplexMatrix(n, n));
    ComplexMatrix y(n, n);
    ComplexMatrix rho = initial.rho;
    KernelWorkspace ws;
    gen.init_workspace(ws);

    // checkpoint schedule as step indices
    std::vector<long> checkpoint_steps;
    for (double tc : opts.checkpoint_times) {
        if (tc < t_start - 1e-12 || tc > t_end + 1e-12) continue;
        checkpoint_steps.push_back(std::lround((tc - t_start) / dt));
    }
    if (opts.checkpoint_cadence > 0.0) {
        const long every = std::max(1L, std::lround(opts.checkpoint_cadence / dt));
        for (long q = every; q < n_steps; q += every) checkpoint_steps.push_back(q);
    }
    checkpoint_steps.push_back(n_steps);
    std::sort(checkpoint_steps.begin(), checkpoint_steps.end());
    checkpoint_steps.erase(std::unique(checkpoint_steps.begin(), checkpoint_steps.end()),
                           checkpoint_steps.end());

    Trajectory traj;
    traj.dt = dt;
    const double trace0 = rho.trace().real();

    auto record = [&](long step) {
        const double t = t_start + static_cast<double>(step) * dt;
        traj.times.push_back(t);
        traj.iq.push_back(iq_expectation(rho, gen.dims()));
        traj.qubit_pops.push_back(qubit_populations(rho, gen.dims()));
    };

    auto check_invariants = [&](long step) {
        const double t = t_start + static_cast<double>(step) * dt;
        DensityState st{rho, t};
        const double drift = std::abs(rho.trace().real() - trace0);
        const double herm = st.hermiticity_defect();
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        traj.max_hermiticity_defect = std::max(traj.max_hermiticity_defect, herm);
        if (drift > opts.trace_abort)
            throw IntegrationDivergedError(
                "trace drift " + std::to_string(drift) + " at step " + std::to_string(step), step,
                t);
        if (opts.check_positivity) {
            const double mineig = st.min_eigenvalue();
            traj.min_eigenvalue_seen = std::min(traj.min_eigenvalue_seen, mineig);
            if (mineig < opts.eig_abort)
                throw IntegrationDivergedError(
                    "negative eigenvalue " + std::to_string(mineig) + " at step " +
                        std::to_string(step),
                    step, t);
        }
        traj.checkpoints.push_back(std::move(st));
    };

    record(0);
    std::size_t next_cp = 0;
    while (next_cp < checkpoint_steps.size() && checkpoint_steps[next_cp] == 0) {
        check_invariants(0);
        ++next_cp;
    }

    for (long step = 0; step < n_steps; ++step) {
        const double t = t_start + static_cast<double>(step) * dt;
        for (int i = 0; i < s; ++i) {
            const double ti = t + tb.c[i] * dt;
            if (i == 0) {
                gen.apply(rho, ti, schedule, k[0], ws, opts.policy);
            } else {
                weighted_sum(y, rho, dt, stage_lists.coeff[i].data(), k,
                             stage_lists.idx[i].data(), stage_lists.count[i]);
                gen.apply(y, ti, schedule, k[i], ws, opts.policy);
            }
        }
        weighted_sum(y, rho, dt, stage_lists.b_coeff.data(), k, stage_lists.b_idx.data(),
                     stage_lists.b_count);
        rho.swap(y);

        const long done = step + 1;
        // cheap per-step trace guard
        const double drift = std::abs(rho.trace().real() - trace0);
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        if (drift > opts.trace_abort)
            throw IntegrationDivergedError(
                "trace drift " + std::to_string(drift) + " at step " + std::to_string(done), done,
                t + dt);

        if (done % opts.record_stride == 0 || done == n_steps) record(done);
        while (next_cp < checkpoint_steps.size() && checkpoint_steps[next_cp] == done) {
            check_invariants(done);
            ++next_cp;
        }
    }

    traj.final_state = DensityState{rho, t_end};
    return traj;
}

std::pair<double, double> iq_expectation(const ComplexMatrix& rho, const SpaceDims& dims) {
    // Tr(rho a_r) = sum_i sqrt(n_i) rho(i, i-1) over entries with n_i >= 1
    Complex acc(0.0, 0.0);
    for (int m = 0; m < dims.n_q; ++m)
        for (int nlev = 1; nlev < dims.n_r; ++nlev) {
            const int i = dims.index(m, nlev);
            acc += std::sqrt(static_cast<double>(nlev)) * rho(i, i - 1);
        }
    return {acc.real(), acc.imag()};
}

std::vector<double> qubit_populations(const ComplexMatrix& rho, const SpaceDims& dims) {
    std::vector<double> pops(dims.n_q, 0.0);
    for (int m = 0; m < dims.n_q; ++m)
        for (int nlev = 0; nlev < dims.n_r; ++nlev)
            pops[m] += rho(dims.index(m, nlev), dims.index(m, nlev)).real();
    return pops;
}

ComplexMatrix partial_trace_resonator(const ComplexMatrix& rho, const SpaceDims& dims) {
    ComplexMatrix out = ComplexMatrix::Zero(dims.n_q, dims.n_q);
    for (int m = 0; m < dims.n_q; ++m)
        for (int mp = 0; mp < dims.n_q; ++mp)
            for (int nlev = 0; nlev < dims.n_r; ++nlev)
                out(m, mp) += rho(dims.index(m, nlev), dims.index(mp, nlev));
    return out;
}

}  // namespace dmsim
