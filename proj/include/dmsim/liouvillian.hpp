#pragma once

#include <array>

#include "dmsim/model.hpp"
#include "dmsim/pulses.hpp"

namespace dmsim {

// Frame of integration. The rotating frame removes omega_q*n_q + omega_r*n_r
// from the diagonal and puts the corresponding phases on coupling and drive
// terms; dissipators are frame-invariant. Populations agree between frames.
enum class Frame { Lab, Rotating };

enum class ExecPolicy { Serial, OpenMP };

// Runtime complex prefactors for the eight off-diagonal stencil offsets of
// H_s(t) = g X_q X_r + Om_q(t) X_q + Om_r(t) X_r (plus frame phases).
struct StencilScalars {
    Complex coupling_pp, coupling_pm, coupling_mp, coupling_mm;
    Complex qubit_low, qubit_raise;
    Complex res_low, res_raise;
    bool real_amplitudes = true;  // lab frame: all prefactors real
};

// Scratch buffers for the fused kernel: zero-padded split re/im planes of the
// input state, split output planes, and per-call stencil coefficient slots.
// One workspace per concurrent propagation.
struct KernelWorkspace {
    RealMatrix in_re, in_im;    // (n + 2 pad) x (n + 2 pad)
    RealMatrix out_re, out_im;  // n x n
    RealMatrix left_re, left_im;    // n x 8
    RealMatrix right_re, right_im;  // n x 8
    std::array<bool, 8> left_has_re{}, left_has_im{};
    int n = 0;
    int pad = 0;
};

// Structured application of the Lindblad generator
//   L(t)[rho] = -i[H(t), rho] + sum_k rate_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho}).
//
// Every channel of the model has diagonal L^dag L, so the drift diagonal, all
// anticommutators and the dephasing sandwiches collapse into one elementwise
// complex weight W. What remains is the commutator with the sparse ladder
// stencil of H_s(t) and four shifted-block ladder sandwiches. The fused kernel
// evaluates all of it in one sweep per column on split re/im planes: O(N^2)
// per application instead of the O(N^3) of dense matmuls.
class LindbladGenerator {
public:
    LindbladGenerator(const DeviceParams& params, Frame frame = Frame::Lab);

    const DeviceParams& params() const { return params_; }
    const SpaceDims& dims() const { return params_.dims; }
    Frame frame() const { return frame_; }
    int size() const { return n_; }

    void init_workspace(KernelWorkspace& ws) const;

    // Stencil prefactors at time t for drive amplitudes (om_q, om_r).
    StencilScalars scalars_at(double t, double om_q, double om_r) const;

    // out = L(t)[rho]
    void apply(const ComplexMatrix& rho, const StencilScalars& s, ComplexMatrix& out,
               KernelWorkspace& ws, ExecPolicy policy = ExecPolicy::Serial) const;

    // Convenience: drive amplitudes evaluated from the schedule at absolute time t.
    void apply(const ComplexMatrix& rho, double t, const DriveSchedule& schedule,
               ComplexMatrix& out, KernelWorkspace& ws,
               ExecPolicy policy = ExecPolicy::Serial) const;

    // Eigenvalue of the purely diagonal part of the generator for coherence
    // (i, j): -i(E_i - E_j) minus its total damping. Governs linear stability
    // of explicit fixed-step integration.
    Complex diagonal_mode(int i, int j) const {
        return Complex(w_re_(i, j), w_im_(i, j));
    }

    const RealVector& drift_diagonal() const { return energy_; }

private:
    void prepare_coefficients(const StencilScalars& s, KernelWorkspace& ws) const;
    void kernel_columns(const KernelWorkspace& ws, int col0, int ncols) const;
    void load_columns(const ComplexMatrix& rho, KernelWorkspace& ws, int col0, int ncols) const;
    void store_columns(const KernelWorkspace& ws, ComplexMatrix& out, int col0,
                       int ncols) const;

    DeviceParams params_;
    Frame frame_;
    int n_ = 0;
    int n_r_ = 0;

    RealMatrix w_re_, w_im_;  // elementwise weight (damping+dephasing, -energy gap)
    RealVector energy_;       // frame-adjusted diagonal drift energies

    // static ladder coefficient vectors, full length n, truncation zeros built in
    std::array<RealVector, 8> stencil_coeff_;
    std::array<int, 8> stencil_offset_;

    // full-size sandwich masks with rates folded in, zero outside valid blocks
    RealMatrix mask_q_decay_;    // reads (i+n_r, j+n_r)
    RealMatrix mask_q_thermal_;  // reads (i-n_r, j-n_r)
    RealMatrix mask_r_decay_;    // reads (i+1, j+1)
    RealMatrix mask_r_thermal_;  // reads (i-1, j-1)

    double kappa_q_th_ = 0.0;
    double kappa_r_th_ = 0.0;
    double frame_omega_q_ = 0.0;
    double frame_omega_r_ = 0.0;
};

}  // namespace dmsim
