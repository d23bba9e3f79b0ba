#pragma once
#include <cmath>

#include "qpg/errors.hpp"

namespace qpg {

/// Vacuum speed of light, m/s (exact by SI definition).
inline constexpr double c_vacuum = 299792458.0;
inline constexpr double pi = 3.14159265358979323846;

/// Canonical units: vacuum wavelength in nanometres, frequency in hertz,
/// temperature in degrees Celsius.  All module interfaces stick to these.

inline double frequency_from_wavelength_nm(double lambda_nm) {
    if (!(lambda_nm > 0.0))
        throw error("wavelength must be positive, got " + std::to_string(lambda_nm) + " nm");
    return c_vacuum / (lambda_nm * 1e-9);
}

inline double wavelength_nm_from_frequency(double nu_hz) {
    if (!(nu_hz > 0.0))
        throw error("frequency must be positive, got " + std::to_string(nu_hz) + " Hz");
    return c_vacuum / nu_hz * 1e9;
}

inline double angular_frequency_from_wavelength_nm(double lambda_nm) {
    return 2.0 * pi * frequency_from_wavelength_nm(lambda_nm);
}

inline double wavelength_nm_from_angular_frequency(double omega) {
    return wavelength_nm_from_frequency(omega / (2.0 * pi));
}

/// sin(x)/x convention (not the pi-normalized variant), sinc(0) = 1.
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/// FWHM of a Gaussian with standard deviation sigma.
inline constexpr double gaussian_fwhm_factor = 2.3548200450309493; // 2*sqrt(2*ln 2)

} // namespace qpg
