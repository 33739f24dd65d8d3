#pragma once

#include <vector>

#include "dmsim/operators.hpp"

namespace dmsim {

// Flat-top Gaussian pulse with carrier, phase and a derivative-quadrature
// correction. Envelope (rad/ns):
//   E(t) = (amp/4) * (1 + erf((t - t0)/t_rise)) * (1 + erf((t1 - t)/t_rise))
// Full signal: E(t) cos(w t + phase) - drag_coeff * E'(t) sin(w t + phase),
// with the carrier in absolute lab time.
struct FlatTopParams {
    double amp = 0.0;        // rad/ns
    double t_rise = 1.0;     // ns, > 0
    double t0 = 0.0;         // ns
    double t1 = 0.0;         // ns, > t0
    double omega = 0.0;      // carrier, rad/ns
    double phase = 0.0;      // rad
    double drag_coeff = 0.0; // ns

    void validate() const;
    FlatTopParams shifted(double dt) const;  // envelope shift; carrier stays absolute
};

double flattop_envelope(double t, const FlatTopParams& p);
double flattop_envelope_deriv(double t, const FlatTopParams& p);
double drag_signal(double t, const FlatTopParams& p);
double multiplexed_drive(double t, const std::vector<FlatTopParams>& channels);

// Per-line pulse sets for one run segment. Envelope support is shifted as a
// whole when stages are concatenated.
struct DriveSchedule {
    std::vector<FlatTopParams> qubit;
    std::vector<FlatTopParams> resonator;

    double omega_q_drive(double t) const { return multiplexed_drive(t, qubit); }
    double omega_r_drive(double t) const { return multiplexed_drive(t, resonator); }

    DriveSchedule shifted(double dt) const;
    // Largest carrier angular frequency over both lines (0 if no channels).
    double max_carrier() const;
};

struct SpectrumPeak {
    double freq_ghz;
    double magnitude;
};

struct Spectrum {
    std::vector<double> freq_ghz;
    std::vector<double> magnitude;   // |DFT| of the multiplexed waveform, both lines summed per line below
    std::vector<SpectrumPeak> peaks;
    double bin_width_ghz = 0.0;
};

// Magnitude of the DFT of the sampled waveform on a uniform grid
// [t_start, t_end) with step dt_ns, rectangular window. Peaks are local maxima
// above threshold_frac * max(magnitude).
Spectrum spectrum(const std::vector<FlatTopParams>& channels, double t_start, double t_end,
                  double dt_ns, double threshold_frac = 0.05);

}  // namespace dmsim
