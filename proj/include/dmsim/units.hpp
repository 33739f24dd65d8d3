#pragma once

#include <cmath>

// Internal unit system: time in ns, angular frequency in rad/ns, rate in 1/ns,
// temperature in kelvin, hbar = 1. A frequency quoted as f GHz enters as
// omega = 2*pi*f rad/ns; a rate quoted as 1/(T us) enters as 1e-3/T per ns.
namespace dmsim::units {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// k_B / hbar in rad/(ns*K)
inline constexpr double kb_over_hbar = 130.920083;

constexpr double ghz_to_angular(double f_ghz) { return two_pi * f_ghz; }
constexpr double angular_to_ghz(double omega) { return omega / two_pi; }

constexpr double per_us_to_per_ns(double r) { return r * 1e-3; }
constexpr double us_to_ns(double t) { return t * 1e3; }

}  // namespace dmsim::units
