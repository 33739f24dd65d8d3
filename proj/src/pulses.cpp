#include "dmsim/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "dmsim/units.hpp"

namespace dmsim {

namespace {
constexpr double inv_sqrt_pi = 0.5641895835477562869;
}

void FlatTopParams::validate() const {
    if (t_rise <= 0.0) throw std::invalid_argument("FlatTopParams: t_rise must be positive");
    if (!(t0 < t1)) throw std::invalid_argument("FlatTopParams: t0 must precede t1");
}

FlatTopParams FlatTopParams::shifted(double dt) const {
    FlatTopParams p = *this;
    p.t0 += dt;
    p.t1 += dt;
    return p;
}

double flattop_envelope(double t, const FlatTopParams& p) {
    const double up = 1.0 + std::erf((t - p.t0) / p.t_rise);
    const double down = 1.0 + std::erf((p.t1 - t) / p.t_rise);
    return 0.25 * p.amp * up * down;
}

double flattop_envelope_deriv(double t, const FlatTopParams& p) {
    const double xu = (t - p.t0) / p.t_rise;
    const double xd = (p.t1 - t) / p.t_rise;
    const double gu = 2.0 * inv_sqrt_pi * std::exp(-xu * xu) / p.t_rise;
    const double gd = 2.0 * inv_sqrt_pi * std::exp(-xd * xd) / p.t_rise;
    return 0.25 * p.amp * (gu * (1.0 + std::erf(xd)) - gd * (1.0 + std::erf(xu)));
}

double drag_signal(double t, const FlatTopParams& p) {
    const double ph = p.omega * t + p.phase;
    double s = flattop_envelope(t, p) * std::cos(ph);
    if (p.drag_coeff != 0.0) s -= p.drag_coeff * flattop_envelope_deriv(t, p) * std::sin(ph);
    return s;
}

double multiplexed_drive(double t, const std::vector<FlatTopParams>& channels) {
    double s = 0.0;
    for (const auto& ch : channels) s += drag_signal(t, ch);
    return s;
}

DriveSchedule DriveSchedule::shifted(double dt) const {
    DriveSchedule out;
    out.qubit.reserve(qubit.size());
    out.resonator.reserve(resonator.size());
    for (const auto& ch : qubit) out.qubit.push_back(ch.shifted(dt));
    for (const auto& ch : resonator) out.resonator.push_back(ch.shifted(dt));
    return out;
}

double DriveSchedule::max_carrier() const {
    double w = 0.0;
    for (const auto& ch : qubit) w = std::max(w, std::abs(ch.omega));
    for (const auto& ch : resonator) w = std::max(w, std::abs(ch.omega));
    return w;
}

Spectrum spectrum(const std::vector<FlatTopParams>& channels, double t_start, double t_end,
                  double dt_ns, double threshold_frac) {
    if (!(dt_ns > 0.0) || !(t_end > t_start))
        throw std::invalid_argument("spectrum: need uniform grid with dt > 0 covering the schedule");

    const auto n = static_cast<std::size_t>(std::floor((t_end - t_start) / dt_ns));
    if (n < 8) throw std::invalid_argument("spectrum: grid too short");

    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k)
        samples[k] = multiplexed_drive(t_start + static_cast<double>(k) * dt_ns, channels);

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> freq;
    fft.fwd(freq, samples);

    Spectrum out;
    const std::size_t n_half = n / 2 + 1;
    out.freq_ghz.resize(n_half);
    out.magnitude.resize(n_half);
    out.bin_width_ghz = 1.0 / (static_cast<double>(n) * dt_ns);  // 1/ns = GHz
    for (std::size_t k = 0; k < n_half; ++k) {
        out.freq_ghz[k] = static_cast<double>(k) * out.bin_width_ghz;
        out.magnitude[k] = std::abs(freq[k]);
    }

    const double peak_floor =
        threshold_frac * *std::max_element(out.magnitude.begin(), out.magnitude.end());
    if (peak_floor > 0.0) {
        for (std::size_t k = 1; k + 1 < n_half; ++k) {
            if (out.magnitude[k] > peak_floor && out.magnitude[k] >= out.magnitude[k - 1] &&
                out.magnitude[k] > out.magnitude[k + 1])
                out.peaks.push_back({out.freq_ghz[k], out.magnitude[k]});
        }
    }
    return out;
}

}  // namespace dmsim
