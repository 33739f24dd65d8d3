#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dmsim/operators.hpp"

namespace dmsim {

// Device parameters in internal units (rad/ns, 1/ns, ns, K).
// The single source of physical truth for a run.
struct DeviceParams {
    double omega_q = 0.0;   // transmon frequency, rad/ns
    double omega_r = 0.0;   // resonator frequency, rad/ns
    double delta = 0.0;     // transmon anharmonicity, rad/ns, negative
    double g = 0.0;         // qubit-resonator coupling, rad/ns
    double kappa_q = 0.0;   // transmon decay rate, 1/ns
    double gamma_q = 0.0;   // transmon dephasing rate, 1/ns
    double kappa_r = 0.0;   // resonator decay rate, 1/ns
    double gamma_r = 0.0;   // resonator dephasing rate, 1/ns
    double temperature = 0.0;  // bath temperature, K
    SpaceDims dims;

    // Detailed-balance thermal excitation rates kappa * nbar(omega, T),
    // overridable for what-if studies.
    std::optional<double> kappa_q_th_override;
    std::optional<double> kappa_r_th_override;

    double detuning() const { return omega_q - omega_r; }
    double kappa_q_th() const;
    double kappa_r_th() const;

    // Throws on hard violations; returns soft warnings (e.g. dispersive-limit breach).
    std::vector<std::string> validate() const;

    // Table I device at the given truncation.
    static DeviceParams table1(SpaceDims dims = {5, 25});
};

struct CollapseChannel {
    ComplexMatrix op;   // joint-space operator
    double rate;        // 1/ns
    std::string label;
};

// The six dissipative channels of the master equation, fixed order:
// (a_q, kappa_q), (n_q, gamma_q/2), (a_q^dag, kappa_q_th),
// (a_r, kappa_r), (n_r, gamma_r/2), (a_r^dag, kappa_r_th).
struct CollapseSet {
    std::vector<CollapseChannel> channels;
};

// Mean thermal occupation 1/(exp(hbar*omega/kB*T) - 1); 0 at T = 0.
double thermal_occupation(double omega, double temperature_k);

// H_drift = H_0 + H_c on the joint space (lab frame, no RWA, hbar = 1).
ComplexMatrix build_drift(const DeviceParams& p);

// Drive coupling operators X_q = a_q + a_q^dag, X_r = a_r + a_r^dag (joint space).
struct DriveOps {
    ComplexMatrix x_q;
    ComplexMatrix x_r;
};
DriveOps build_drive_ops(const DeviceParams& p);

CollapseSet build_collapse_ops(const DeviceParams& p);

}  // namespace dmsim
