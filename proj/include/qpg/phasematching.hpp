#pragma once
#include <cmath>
#include <complex>
#include <optional>

#include "qpg/dispersion.hpp"
#include "qpg/grid.hpp"
#include "qpg/material.hpp"
#include "qpg/peak.hpp"
#include "qpg/units.hpp"

namespace qpg {

/// Quasi-phasematched SFG process: input + pump -> output.
struct ProcessSpec {
    MaterialModel material_in;
    MaterialModel material_pump;
    MaterialModel material_out;
    double length_m = 0.0;
    double temperature_C = 0.0;
    double lambda_in_nm = 0.0;   // centre
    double lambda_pump_nm = 0.0; // centre
    int qpm_order = 1;
    std::optional<double> poling_period_m; // solved when absent

    /// lambda_out from energy conservation; derived, never stored.
    double lambda_out_nm() const { return 1.0 / (1.0 / lambda_in_nm + 1.0 / lambda_pump_nm); }

    void validate() const {
        if (!(length_m > 0)) throw error("process length must be positive");
        if (qpm_order < 1 || qpm_order % 2 == 0) throw error("qpm_order must be odd and positive");
        if (poling_period_m && !(*poling_period_m > 0))
            throw error("poling period must be positive");
        if (!(lambda_in_nm > 0) || !(lambda_pump_nm > 0))
            throw error("centre wavelengths must be positive");
    }
};

namespace detail {
inline double kvec(const MaterialModel& m, double lambda_nm, double T) {
    return 2.0 * pi * m.refractive_index(lambda_nm, T) / (lambda_nm * 1e-9);
}

/// Material contribution k_out - k_in - k_pump at the given wavelengths.
inline double material_mismatch(const ProcessSpec& s, double lambda_in_nm,
                                double lambda_pump_nm) {
    const double lambda_out = 1.0 / (1.0 / lambda_in_nm + 1.0 / lambda_pump_nm);
    return kvec(s.material_out, lambda_out, s.temperature_C) -
           kvec(s.material_in, lambda_in_nm, s.temperature_C) -
           kvec(s.material_pump, lambda_pump_nm, s.temperature_C);
}

/// The first-order poling Fourier component compensates mismatch of either
/// sign; the grating direction follows the sign of the centre mismatch.
inline double grating_sign(const ProcessSpec& s) {
    return material_mismatch(s, s.lambda_in_nm, s.lambda_pump_nm) >= 0 ? 1.0 : -1.0;
}
} // namespace detail

/// Wavevector mismatch Delta k = k_out - k_in - k_pump -/+ order*2*pi/Lambda, 1/m.
inline double delta_k(const ProcessSpec& spec, double lambda_in_nm, double lambda_pump_nm) {
    spec.validate();
    if (!spec.poling_period_m) throw error("delta_k requires a poling period (solve it first)");
    return detail::material_mismatch(spec, lambda_in_nm, lambda_pump_nm) -
           detail::grating_sign(spec) * spec.qpm_order * 2.0 * pi / *spec.poling_period_m;
}

/// Poling period such that Delta k vanishes at the spec centre.
inline double solve_poling_period(const ProcessSpec& spec) {
    ProcessSpec s = spec;
    s.poling_period_m = 1.0; // placeholder so validate() passes
    s.validate();
    const double mismatch = detail::material_mismatch(s, s.lambda_in_nm, s.lambda_pump_nm);
    if (std::abs(mismatch) < 1e-12)
        throw no_root("material phase mismatch vanishes at centre; no finite poling period");
    const double period = s.qpm_order * 2.0 * pi / std::abs(mismatch);
    if (period < 1e-7 || period > 1.0)
        throw no_root("solved poling period " + std::to_string(period) +
                      " m outside the physical bracket [1e-7, 1] m");
    return period;
}

inline ProcessSpec with_solved_poling_period(const ProcessSpec& spec) {
    ProcessSpec s = spec;
    s.poling_period_m = solve_poling_period(spec);
    return s;
}

/// Complex phasematching amplitude sinc(dk L/2) * exp(i dk L/2).
inline std::complex<double> phasematching_value(const ProcessSpec& spec, double lambda_in_nm,
                                                double lambda_pump_nm) {
    const double x = delta_k(spec, lambda_in_nm, lambda_pump_nm) * spec.length_m / 2.0;
    return sinc(x) * std::complex<double>(std::cos(x), std::sin(x));
}

/// 2-D phasematching amplitude over (lambda_in x lambda_pump) wavelength grids.
inline ComplexMap2D phasematching_map(const ProcessSpec& spec, const SpectralGrid& grid_in,
                                      const SpectralGrid& grid_pump) {
    if (grid_in.unit != axis_unit::nanometre || grid_pump.unit != axis_unit::nanometre)
        throw error("phasematching_map expects wavelength grids in nanometres");
    ComplexMap2D map;
    map.axis_first = grid_in;
    map.axis_second = grid_pump;
    map.values.resize(grid_in.n, grid_pump.n);
    for (int i = 0; i < grid_in.n; ++i)
        for (int j = 0; j < grid_pump.n; ++j)
            map.values(i, j) = phasematching_value(spec, grid_in[i], grid_pump[j]);
    return map;
}

/// FWHM (Hz) of the output-frequency marginal of |phasematching|^2 at the
/// fixed central input, on an auto-refined 1-D cut.
inline double phasematching_output_fwhm(const ProcessSpec& spec_in) {
    ProcessSpec spec = spec_in.poling_period_m ? spec_in : with_solved_poling_period(spec_in);
    const double nu_in = frequency_from_wavelength_nm(spec.lambda_in_nm);
    const double nu_pump0 = frequency_from_wavelength_nm(spec.lambda_pump_nm);
    const double nu_out0 = nu_in + nu_pump0;

    // initial window from the output/pump group-velocity mismatch
    const double dinv = std::abs(
        gvm(spec.material_out, spec.lambda_out_nm(), spec.material_pump, spec.lambda_pump_nm,
            spec.temperature_C));
    double fw_est = dinv > 1e-16
                        ? 2.0 * 1.3915573782515135 * 2.0 / (spec.length_m * dinv) / (2.0 * pi)
                        : 1e12;
    double halfspan = 4.0 * fw_est;

    auto cut_fwhm = [&](int n, double span) {
        std::vector<double> nu(n), inten(n);
        for (int i = 0; i < n; ++i) {
            nu[i] = nu_out0 - span + 2.0 * span * i / (n - 1);
            const double lambda_pump = wavelength_nm_from_frequency(nu[i] - nu_in);
            inten[i] = std::norm(phasematching_value(spec, spec.lambda_in_nm, lambda_pump));
        }
        return detail::fwhm_halfmax(nu, inten);
    };

    double prev = -1.0;
    int n = 257;
    for (int refinement = 0; refinement < 24; ++refinement) {
        double fw;
        try {
            fw = cut_fwhm(n, halfspan);
        } catch (const fit_failed&) {
            halfspan *= 2.0; // window too narrow to resolve the half maximum
            n = 2 * n - 1;
            continue;
        }
        if (prev > 0 && std::abs(fw - prev) < 1e-3 * prev) return fw;
        prev = fw;
        n = 2 * n - 1;
    }
    throw grid_not_converged("phasematching output FWHM did not converge under refinement");
}

} // namespace qpg
