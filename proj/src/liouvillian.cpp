#include "dmsim/liouvillian.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmsim {

LindbladGenerator::LindbladGenerator(const DeviceParams& params, Frame frame)
    : params_(params), frame_(frame) {
    params_.validate();
    const SpaceDims& d = params_.dims;
    n_ = d.joint();
    n_r_ = d.n_r;
    kappa_q_th_ = params_.kappa_q_th();
    kappa_r_th_ = params_.kappa_r_th();
    if (frame_ == Frame::Rotating) {
        frame_omega_q_ = params_.omega_q;
        frame_omega_r_ = params_.omega_r;
    }

    energy_.resize(n_);
    RealVector damping(n_), mq(n_), mr(n_);
    for (int i = 0; i < n_; ++i) {
        const double m = d.qubit_level(i);
        const double nn = d.resonator_level(i);
        mq(i) = m;
        mr(i) = nn;
        energy_(i) = (params_.omega_q - frame_omega_q_) * m + 0.5 * params_.delta * m * (m - 1.0) +
                     (params_.omega_r - frame_omega_r_) * nn;
        // truncated a a^dag has a zero diagonal entry at the top level
        const double qq_top = d.qubit_level(i) <= d.n_q - 2 ? m + 1.0 : 0.0;
        const double rr_top = d.resonator_level(i) <= d.n_r - 2 ? nn + 1.0 : 0.0;
        damping(i) = params_.kappa_q * m + 0.5 * params_.gamma_q * m * m + kappa_q_th_ * qq_top +
                     params_.kappa_r * nn + 0.5 * params_.gamma_r * nn * nn + kappa_r_th_ * rr_top;
    }

    w_re_.resize(n_, n_);
    w_im_.resize(n_, n_);
    for (int j = 0; j < n_; ++j)
        for (int i = 0; i < n_; ++i) {
            w_re_(i, j) = -0.5 * (damping(i) + damping(j)) +
                          0.5 * params_.gamma_q * mq(i) * mq(j) +
                          0.5 * params_.gamma_r * mr(i) * mr(j);
            w_im_(i, j) = -(energy_(i) - energy_(j));
        }

    // ladder coefficients by output row, truncation zeros built in
    RealVector ql(n_), qr_(n_), rl(n_), rr(n_);
    for (int i = 0; i < n_; ++i) {
        const int m = d.qubit_level(i);
        const int nn = d.resonator_level(i);
        ql(i) = m <= d.n_q - 2 ? std::sqrt(m + 1.0) : 0.0;   // reads i + n_r
        qr_(i) = std::sqrt(static_cast<double>(m));          // reads i - n_r
        rl(i) = nn <= d.n_r - 2 ? std::sqrt(nn + 1.0) : 0.0; // reads i + 1
        rr(i) = std::sqrt(static_cast<double>(nn));          // reads i - 1
    }

    stencil_offset_ = {n_r_ + 1, n_r_ - 1, -(n_r_ - 1), -(n_r_ + 1), n_r_, -n_r_, 1, -1};
    stencil_coeff_[0] = ql.cwiseProduct(rl);   // a_q a_r
    stencil_coeff_[1] = ql.cwiseProduct(rr);   // a_q a_r^dag
    stencil_coeff_[2] = qr_.cwiseProduct(rl);  // a_q^dag a_r
    stencil_coeff_[3] = qr_.cwiseProduct(rr);  // a_q^dag a_r^dag
    stencil_coeff_[4] = ql;
    stencil_coeff_[5] = qr_;
    stencil_coeff_[6] = rl;
    stencil_coeff_[7] = rr;

    auto outer_masked = [&](const RealVector& c, double rate) {
        RealMatrix m = rate * (c * c.transpose());
        return m;
    };
    mask_q_decay_ = outer_masked(ql, params_.kappa_q);
    mask_q_thermal_ = outer_masked(qr_, kappa_q_th_);
    mask_r_decay_ = outer_masked(rl, params_.kappa_r);
    mask_r_thermal_ = outer_masked(rr, kappa_r_th_);
}

void LindbladGenerator::init_workspace(KernelWorkspace& ws) const {
    ws.n = n_;
    ws.pad = n_r_ + 1;
    const int s = n_ + 2 * ws.pad;
    ws.in_re.setZero(s, s);
    ws.in_im.setZero(s, s);
    ws.out_re.resize(n_, n_);
    ws.out_im.resize(n_, n_);
    ws.left_re.resize(n_, 8);
    ws.left_im.resize(n_, 8);
    ws.right_re.resize(n_, 8);
    ws.right_im.resize(n_, 8);
}

StencilScalars LindbladGenerator::scalars_at(double t, double om_q, double om_r) const {
    StencilScalars s;
    const double g = params_.g;
    if (frame_ == Frame::Lab) {
        s.coupling_pp = s.coupling_pm = s.coupling_mp = s.coupling_mm = g;
        s.qubit_low = s.qubit_raise = om_q;
        s.res_low = s.res_raise = om_r;
        s.real_amplitudes = true;
        return s;
    }
    const Complex eq = std::polar(1.0, -frame_omega_q_ * t);
    const Complex er = std::polar(1.0, -frame_omega_r_ * t);
    s.coupling_pp = g * eq * er;
    s.coupling_pm = g * eq * std::conj(er);
    s.coupling_mp = std::conj(s.coupling_pm);
    s.coupling_mm = std::conj(s.coupling_pp);
    s.qubit_low = om_q * eq;
    s.qubit_raise = om_q * std::conj(eq);
    s.res_low = om_r * er;
    s.res_raise = om_r * std::conj(er);
    s.real_amplitudes = false;
    return s;
}

// Left factor enters as -i s_t c_t(i) on read row i + offset; right factor as
// +i s_t c_t(j - offset) on read column j - offset.
void LindbladGenerator::prepare_coefficients(const StencilScalars& s, KernelWorkspace& ws) const {
    const std::array<Complex, 8> amps = {s.coupling_pp, s.coupling_pm, s.coupling_mp,
                                         s.coupling_mm, s.qubit_low,   s.qubit_raise,
                                         s.res_low,     s.res_raise};
    for (int t = 0; t < 8; ++t) {
        const Complex left = Complex(0.0, -1.0) * amps[t];
        const Complex right = Complex(0.0, 1.0) * amps[t];
        ws.left_re.col(t) = left.real() * stencil_coeff_[t];
        ws.left_im.col(t) = left.imag() * stencil_coeff_[t];
        ws.left_has_re[t] = left.real() != 0.0;
        ws.left_has_im[t] = left.imag() != 0.0;
        // shifted coefficient c_t(j - offset), zero outside [0, n)
        const int off = stencil_offset_[t];
        auto& rre = ws.right_re;
        auto& rim = ws.right_im;
        for (int j = 0; j < n_; ++j) {
            const int src = j - off;
            const double c = (src >= 0 && src < n_) ? stencil_coeff_[t](src) : 0.0;
            rre(j, t) = right.real() * c;
            rim(j, t) = right.imag() * c;
        }
    }
}

void LindbladGenerator::load_columns(const ComplexMatrix& rho, KernelWorkspace& ws, int col0,
                                     int ncols) const {
    const int p = ws.pad;
    const int stride = n_ + 2 * p;
    for (int j = col0; j < col0 + ncols; ++j) {
        const double* src = reinterpret_cast<const double*>(rho.col(j).data());
        double* dr = ws.in_re.data() + static_cast<std::ptrdiff_t>(j + p) * stride + p;
        double* di = ws.in_im.data() + static_cast<std::ptrdiff_t>(j + p) * stride + p;
        for (int i = 0; i < n_; ++i) {
            dr[i] = src[2 * i];
            di[i] = src[2 * i + 1];
        }
    }
}

void LindbladGenerator::store_columns(const KernelWorkspace& ws, ComplexMatrix& out, int col0,
                                      int ncols) const {
    for (int j = col0; j < col0 + ncols; ++j) {
        double* dst = reinterpret_cast<double*>(out.col(j).data());
        const double* sr = ws.out_re.col(j).data();
        const double* si = ws.out_im.col(j).data();
        for (int i = 0; i < n_; ++i) {
            dst[2 * i] = sr[i];
            dst[2 * i + 1] = si[i];
        }
    }
}

void LindbladGenerator::kernel_columns(const KernelWorkspace& ws, int col0, int ncols) const {
    const int n = n_;
    const int p = ws.pad;
    const int nr = n_r_;
    const std::ptrdiff_t stride = n + 2 * p;
    const double* in_re = ws.in_re.data();
    const double* in_im = ws.in_im.data();
    auto col_re = [&](int j) { return in_re + (j + p) * stride + p; };
    auto col_im = [&](int j) { return in_im + (j + p) * stride + p; };

    for (int j = col0; j < col0 + ncols; ++j) {
        const double* zr = col_re(j);
        const double* zi = col_im(j);
        double* o_r = const_cast<double*>(ws.out_re.col(j).data());
        double* o_i = const_cast<double*>(ws.out_im.col(j).data());
        const double* wr = w_re_.col(j).data();
        const double* wi = w_im_.col(j).data();

        const double* mqd = mask_q_decay_.col(j).data();
        const double* mqt = mask_q_thermal_.col(j).data();
        const double* mrd = mask_r_decay_.col(j).data();
        const double* mrt = mask_r_thermal_.col(j).data();
        const double* sq_r = col_re(j + nr) + nr;  // (i+nr, j+nr)
        const double* sq_i = col_im(j + nr) + nr;
        const double* tq_r = col_re(j - nr) - nr;
        const double* tq_i = col_im(j - nr) - nr;
        const double* sr_r = col_re(j + 1) + 1;
        const double* sr_i = col_im(j + 1) + 1;
        const double* tr_r = col_re(j - 1) - 1;
        const double* tr_i = col_im(j - 1) - 1;

        // elementwise weight + ladder sandwiches
        for (int i = 0; i < n; ++i) {
            double ar = wr[i] * zr[i] - wi[i] * zi[i];
            double ai = wr[i] * zi[i] + wi[i] * zr[i];
            ar += mqd[i] * sq_r[i] + mqt[i] * tq_r[i] + mrd[i] * sr_r[i] + mrt[i] * tr_r[i];
            ai += mqd[i] * sq_i[i] + mqt[i] * tq_i[i] + mrd[i] * sr_i[i] + mrt[i] * tr_i[i];
            o_r[i] = ar;
            o_i[i] = ai;
        }

        // commutator left products: -i s c(i) rho(i+off, j)
        for (int t = 0; t < 8; ++t) {
            if (!ws.left_has_re[t] && !ws.left_has_im[t]) continue;
            const int off = stencil_offset_[t];
            const double* xr = zr + off;
            const double* xi = zi + off;
            const double* lr = ws.left_re.col(t).data();
            const double* li = ws.left_im.col(t).data();
            if (!ws.left_has_re[t]) {
                for (int i = 0; i < n; ++i) {
                    o_r[i] -= li[i] * xi[i];
                    o_i[i] += li[i] * xr[i];
                }
            } else {
                for (int i = 0; i < n; ++i) {
                    o_r[i] += lr[i] * xr[i] - li[i] * xi[i];
                    o_i[i] += lr[i] * xi[i] + li[i] * xr[i];
                }
            }
        }

        // commutator right products: +i s c(j-off) rho(i, j-off)
        for (int t = 0; t < 8; ++t) {
            const double vr = ws.right_re(j, t);
            const double vi = ws.right_im(j, t);
            if (vr == 0.0 && vi == 0.0) continue;
            const int off = stencil_offset_[t];
            const double* xr = col_re(j - off);
            const double* xi = col_im(j - off);
            if (vr == 0.0) {
                for (int i = 0; i < n; ++i) {
                    o_r[i] -= vi * xi[i];
                    o_i[i] += vi * xr[i];
                }
            } else {
                for (int i = 0; i < n; ++i) {
                    o_r[i] += vr * xr[i] - vi * xi[i];
                    o_i[i] += vr * xi[i] + vi * xr[i];
                }
            }
        }
    }
}

void LindbladGenerator::apply(const ComplexMatrix& rho, const StencilScalars& s,
                              ComplexMatrix& out, KernelWorkspace& ws, ExecPolicy policy) const {
    if (ws.n != n_) init_workspace(ws);
    if (out.rows() != n_ || out.cols() != n_) out.resize(n_, n_);
    prepare_coefficients(s, ws);

    if (policy == ExecPolicy::Serial) {
        load_columns(rho, ws, 0, n_);
        kernel_columns(ws, 0, n_);
        store_columns(ws, out, 0, n_);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel
    {
        const int nt = omp_get_num_threads();
        const int id = omp_get_thread_num();
        const int chunk = (n_ + nt - 1) / nt;
        const int c0 = std::min(id * chunk, n_);
        const int nc = std::min(chunk, n_ - c0);
        if (nc > 0) load_columns(rho, ws, c0, nc);
#pragma omp barrier
        if (nc > 0) {
            kernel_columns(ws, c0, nc);
            store_columns(ws, out, c0, nc);
        }
    }
#else
    load_columns(rho, ws, 0, n_);
    kernel_columns(ws, 0, n_);
    store_columns(ws, out, 0, n_);
#endif
}

void LindbladGenerator::apply(const ComplexMatrix& rho, double t, const DriveSchedule& schedule,
                              ComplexMatrix& out, KernelWorkspace& ws, ExecPolicy policy) const {
    apply(rho, scalars_at(t, schedule.omega_q_drive(t), schedule.omega_r_drive(t)), out, ws,
          policy);
}

}  // namespace dmsim
