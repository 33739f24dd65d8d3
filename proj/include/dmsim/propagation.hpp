#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmsim/liouvillian.hpp"

namespace dmsim {

struct DensityState {
    ComplexMatrix rho;
    double time = 0.0;

    double trace_real() const { return rho.trace().real(); }
    double hermiticity_defect() const;  // ||rho - rho^dag||_F / ||rho||_F
    double min_eigenvalue() const;
};

struct Trajectory {
    std::vector<double> times;                 // ns
    std::vector<std::pair<double, double>> iq; // Re/Im of Tr(rho a_r)
    std::vector<std::vector<double>> qubit_pops;  // per record, length n_q
    std::vector<DensityState> checkpoints;
    DensityState final_state;
    double dt = 0.0;
    double max_trace_drift = 0.0;
    double max_hermiticity_defect = 0.0;
    double min_eigenvalue_seen = 0.0;
};

class IntegrationDivergedError : public std::runtime_error {
public:
    IntegrationDivergedError(const std::string& what, long step, double time)
        : std::runtime_error(what), step_(step), time_(time) {}
    long step() const { return step_; }
    double time() const { return time_; }

private:
    long step_;
    double time_;
};

struct PropagateOptions {
    double dt = 0.0;             // ns; 0 = auto (carrier/40 capped by stability)
    int record_stride = 10;      // observables every this many steps
    std::vector<double> checkpoint_times;  // full-state snapshots (snapped to grid)
    double checkpoint_cadence = 0.0;       // ns; 0 = only requested times + final
    ExecPolicy policy = ExecPolicy::Serial;
    bool allow_coarse_dt = false;  // override the dt <= T_min/20 guard, with warning
    double trace_abort = 1e-4;
    double eig_abort = -1e-4;
    bool check_positivity = true;  // min-eigenvalue check at checkpoints
};

// 13-stage Runge-Kutta pair; the propagating solution is the 7th-order member.
struct Rk7Tableau {
    static constexpr int stages = 13;
    std::array<std::array<double, 13>, 13> a;
    std::array<double, 13> b7;
    std::array<double, 13> b8;
    std::array<double, 13> c;
    static const Rk7Tableau& get();
};

// Linear stability factor |R(z)| of the 7th-order solution at z = lambda * dt.
double rk7_stability_factor(Complex z);

// Largest dt keeping every diagonal coherence mode of the generator inside the
// stability region (with the given safety margin applied).
double stability_max_dt(const LindbladGenerator& gen, double safety = 0.9);

// Default integration step: min(T_min/40, stability cap) with
// T_min = 2*pi / max(max carrier, omega_q).
double default_dt(const LindbladGenerator& gen, const DriveSchedule& schedule);

// Literal dense Lindblad right-hand side (reference implementation):
//   -i[H(t), rho] + sum_k rate_k (L rho L^dag - 1/2 {L^dag L, rho})
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t,
                           const std::function<ComplexMatrix(double)>& h_of_t,
                           const CollapseSet& collapse);

// Fixed-step RK7 integration of the master equation from state.time over
// [t_start, t_end], recording IQ and qubit populations.
Trajectory propagate(const DensityState& initial, const LindbladGenerator& gen,
                     const DriveSchedule& schedule, double t_start, double t_end,
                     const PropagateOptions& opts = {});

// I = Re Tr(rho a_r), Q = Im Tr(rho a_r)
std::pair<double, double> iq_expectation(const ComplexMatrix& rho, const SpaceDims& dims);

// Diagonal of Tr_R(rho)
std::vector<double> qubit_populations(const ComplexMatrix& rho, const SpaceDims& dims);

ComplexMatrix partial_trace_resonator(const ComplexMatrix& rho, const SpaceDims& dims);

}  // namespace dmsim
