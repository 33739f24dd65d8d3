#include "dmsim/model.hpp"

#include <cmath>
#include <stdexcept>

#include "dmsim/units.hpp"

namespace dmsim {

double thermal_occupation(double omega, double temperature_k) {
    if (omega <= 0.0) throw std::domain_error("thermal_occupation: omega must be positive");
    if (temperature_k < 0.0) throw std::domain_error("thermal_occupation: negative temperature");
    if (temperature_k == 0.0) return 0.0;
    const double x = omega / (units::kb_over_hbar * temperature_k);
    return 1.0 / std::expm1(x);
}

double DeviceParams::kappa_q_th() const {
    if (kappa_q_th_override) return *kappa_q_th_override;
    return kappa_q * thermal_occupation(omega_q, temperature);
}

double DeviceParams::kappa_r_th() const {
    if (kappa_r_th_override) return *kappa_r_th_override;
    return kappa_r * thermal_occupation(omega_r, temperature);
}

std::vector<std::string> DeviceParams::validate() const {
    dims.validate();
    if (delta >= 0.0) throw std::invalid_argument("DeviceParams: anharmonicity must be negative");
    if (kappa_q < 0 || gamma_q < 0 || kappa_r < 0 || gamma_r < 0)
        throw std::invalid_argument("DeviceParams: rates must be non-negative");
    if (temperature < 0) throw std::invalid_argument("DeviceParams: temperature must be non-negative");
    if (omega_q <= 0 || omega_r <= 0) throw std::invalid_argument("DeviceParams: frequencies must be positive");

    std::vector<std::string> warnings;
    const double ratio = std::abs(g / detuning());
    if (ratio > 0.2)
        warnings.push_back("dispersive limit strained: g/Delta = " + std::to_string(ratio));
    return warnings;
}

DeviceParams DeviceParams::table1(SpaceDims dims) {
    DeviceParams p;
    p.omega_q = units::ghz_to_angular(7.86);
    p.omega_r = units::ghz_to_angular(6.02);
    p.delta = units::ghz_to_angular(-0.264);
    p.g = units::ghz_to_angular(0.130);
    p.kappa_q = 1.0 / units::us_to_ns(27.0);
    p.gamma_q = 1.0 / units::us_to_ns(39.0);
    p.kappa_r = 1.0 / 100.0;
    p.gamma_r = 1.0 / 50.0;
    p.temperature = 0.050;
    p.dims = dims;
    return p;
}

ComplexMatrix build_drift(const DeviceParams& p) {
    p.validate();
    const auto& d = p.dims;
    const ComplexMatrix a_q = embed(annihilation(d.n_q), Subsystem::Qubit, d);
    const ComplexMatrix a_r = embed(annihilation(d.n_r), Subsystem::Resonator, d);
    const ComplexMatrix x_q = a_q + a_q.adjoint();
    const ComplexMatrix x_r = a_r + a_r.adjoint();

    ComplexMatrix h = p.omega_r * (a_r.adjoint() * a_r) + p.omega_q * (a_q.adjoint() * a_q) +
                      0.5 * p.delta * (a_q.adjoint() * a_q.adjoint() * a_q * a_q) +
                      p.g * (x_q * x_r);
    return h;
}

DriveOps build_drive_ops(const DeviceParams& p) {
    const auto& d = p.dims;
    const ComplexMatrix a_q = embed(annihilation(d.n_q), Subsystem::Qubit, d);
    const ComplexMatrix a_r = embed(annihilation(d.n_r), Subsystem::Resonator, d);
    return {a_q + a_q.adjoint(), a_r + a_r.adjoint()};
}

CollapseSet build_collapse_ops(const DeviceParams& p) {
    p.validate();
    const auto& d = p.dims;
    const ComplexMatrix a_q = embed(annihilation(d.n_q), Subsystem::Qubit, d);
    const ComplexMatrix a_r = embed(annihilation(d.n_r), Subsystem::Resonator, d);
    const ComplexMatrix n_q = embed(number_operator(d.n_q), Subsystem::Qubit, d);
    const ComplexMatrix n_r = embed(number_operator(d.n_r), Subsystem::Resonator, d);

    CollapseSet set;
    set.channels = {
        {a_q, p.kappa_q, "qubit_decay"},
        {n_q, 0.5 * p.gamma_q, "qubit_dephasing"},
        {a_q.adjoint(), p.kappa_q_th(), "qubit_thermal"},
        {a_r, p.kappa_r, "resonator_decay"},
        {n_r, 0.5 * p.gamma_r, "resonator_dephasing"},
        {a_r.adjoint(), p.kappa_r_th(), "resonator_thermal"},
    };
    return set;
}

}  // namespace dmsim
