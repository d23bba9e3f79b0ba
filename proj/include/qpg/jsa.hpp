#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qpg/grid.hpp"
#include "qpg/peak.hpp"
#include "qpg/phasematching.hpp"
#include "qpg/units.hpp"

namespace qpg {

/// Spectral pump amplitude, unit peak magnitude.  The fwhm refers to the
/// pump *intensity* spectrum, in Hz.
struct PumpEnvelope {
    enum class shape_kind { gaussian, user_sampled };
    shape_kind shape = shape_kind::gaussian;
    double centre_nm = 0.0;
    double fwhm_hz = 0.0;
    SpectralGrid sample_grid;           // frequency axis (Hz) for user samples
    std::vector<std::complex<double>> samples; // normalized to unit peak

    static PumpEnvelope gaussian(double centre_nm, double fwhm_hz) {
        if (!(fwhm_hz > 0)) throw error("pump fwhm must be positive");
        PumpEnvelope p;
        p.centre_nm = centre_nm;
        p.fwhm_hz = fwhm_hz;
        return p;
    }

    static PumpEnvelope sampled(const SpectralGrid& grid,
                                std::vector<std::complex<double>> amp) {
        if (grid.unit != axis_unit::hertz) throw error("sampled pump needs a frequency grid");
        if (static_cast<int>(amp.size()) != grid.n)
            throw error("sampled pump amplitude length does not match its grid");
        double peak = 0.0;
        for (auto& v : amp) peak = std::max(peak, std::abs(v));
        if (!(peak > 0)) throw error("sampled pump amplitude is identically zero");
        for (auto& v : amp) v /= peak;
        PumpEnvelope p;
        p.shape = shape_kind::user_sampled;
        p.sample_grid = grid;
        p.samples = std::move(amp);
        p.centre_nm = wavelength_nm_from_frequency(0.5 * (grid.lo + grid.hi));
        return p;
    }

    /// Amplitude at frequency nu (Hz).
    std::complex<double> operator()(double nu_hz) const {
        if (shape == shape_kind::gaussian) {
            const double d = nu_hz - frequency_from_wavelength_nm(centre_nm);
            return std::exp(-2.0 * std::log(2.0) * d * d / (fwhm_hz * fwhm_hz));
        }
        if (nu_hz <= sample_grid.lo || nu_hz >= sample_grid.hi) return 0.0;
        const double t = (nu_hz - sample_grid.lo) / sample_grid.step();
        const int i = std::min(static_cast<int>(t), sample_grid.n - 2);
        const double f = t - i;
        return samples[i] * (1.0 - f) + samples[i + 1] * f;
    }
};

/// Type-II PDC source process: pump -> signal + idler.
struct PdcSpec {
    MaterialModel material_signal;
    MaterialModel material_idler;
    MaterialModel material_pump;
    double length_m = 0.0;
    double temperature_C = 0.0;
    double lambda_signal_nm = 0.0; // centre
    double lambda_pump_nm = 0.0;   // centre
    int qpm_order = 1;
    std::optional<double> poling_period_m;

    double lambda_idler_nm() const {
        const double inv = 1.0 / lambda_pump_nm - 1.0 / lambda_signal_nm;
        if (!(inv > 0)) throw error("PDC energy conservation violated at centre");
        return 1.0 / inv;
    }
};

namespace detail {
inline double pdc_material_mismatch(const PdcSpec& s, double nu_s, double nu_i) {
    const double ls = wavelength_nm_from_frequency(nu_s);
    const double li = wavelength_nm_from_frequency(nu_i);
    const double lp = wavelength_nm_from_frequency(nu_s + nu_i);
    return kvec(s.material_pump, lp, s.temperature_C) -
           kvec(s.material_signal, ls, s.temperature_C) -
           kvec(s.material_idler, li, s.temperature_C);
}
} // namespace detail

inline double solve_pdc_poling_period(const PdcSpec& spec) {
    const double nu_s = frequency_from_wavelength_nm(spec.lambda_signal_nm);
    const double nu_i = frequency_from_wavelength_nm(spec.lambda_idler_nm());
    const double mismatch = detail::pdc_material_mismatch(spec, nu_s, nu_i);
    if (std::abs(mismatch) < 1e-12)
        throw no_root("PDC phase mismatch vanishes at centre; no finite poling period");
    return spec.qpm_order * 2.0 * pi / std::abs(mismatch);
}

/// JSA(nu_s, nu_i) = pump(nu_s + nu_i) * sinc(dk L/2) * exp(i dk L/2)
/// on frequency grids (Hz).  The squared magnitude is the JSI.
inline ComplexMap2D pdc_jsa(const PdcSpec& spec_in, const PumpEnvelope& pump,
                            const SpectralGrid& grid_signal, const SpectralGrid& grid_idler) {
    if (grid_signal.unit != axis_unit::hertz || grid_idler.unit != axis_unit::hertz)
        throw error("pdc_jsa expects frequency grids in hertz");
    PdcSpec spec = spec_in;
    if (!spec.poling_period_m) spec.poling_period_m = solve_pdc_poling_period(spec);
    const double nu_s0 = frequency_from_wavelength_nm(spec.lambda_signal_nm);
    const double nu_i0 = frequency_from_wavelength_nm(spec.lambda_idler_nm());
    const double sign =
        detail::pdc_material_mismatch(spec, nu_s0, nu_i0) >= 0 ? 1.0 : -1.0;
    const double grating = sign * spec.qpm_order * 2.0 * pi / *spec.poling_period_m;

    ComplexMap2D map;
    map.axis_first = grid_signal;
    map.axis_second = grid_idler;
    map.values.resize(grid_signal.n, grid_idler.n);
    for (int i = 0; i < grid_signal.n; ++i) {
        for (int j = 0; j < grid_idler.n; ++j) {
            const double dk =
                detail::pdc_material_mismatch(spec, grid_signal[i], grid_idler[j]) - grating;
            const double x = dk * spec.length_m / 2.0;
            map.values(i, j) = pump(grid_signal[i] + grid_idler[j]) * sinc(x) *
                               std::complex<double>(std::cos(x), std::sin(x));
        }
    }
    return map;
}

/// Joint transfer amplitude of the converter over (nu_in x nu_out) grids:
/// pump(nu_out - nu_in) * sinc(dk L/2) * exp(i dk L/2).
inline ComplexMap2D conversion_jta(const ProcessSpec& spec_in, const PumpEnvelope& pump,
                                   const SpectralGrid& grid_in, const SpectralGrid& grid_out) {
    if (grid_in.unit != axis_unit::hertz || grid_out.unit != axis_unit::hertz)
        throw error("conversion_jta expects frequency grids in hertz");
    ProcessSpec spec = spec_in.poling_period_m ? spec_in : with_solved_poling_period(spec_in);
    ComplexMap2D map;
    map.axis_first = grid_in;
    map.axis_second = grid_out;
    map.values.resize(grid_in.n, grid_out.n);
    for (int i = 0; i < grid_in.n; ++i) {
        const double lambda_in = wavelength_nm_from_frequency(grid_in[i]);
        for (int j = 0; j < grid_out.n; ++j) {
            const double nu_pump = grid_out[j] - grid_in[i];
            if (!(nu_pump > 0)) {
                map.values(i, j) = 0.0;
                continue;
            }
            const double lambda_pump = wavelength_nm_from_frequency(nu_pump);
            map.values(i, j) =
                pump(nu_pump) * phasematching_value(spec, lambda_in, lambda_pump);
        }
    }
    return map;
}

struct SchmidtDecomposition {
    std::vector<double> coefficients; // descending, squares sum to 1
    Eigen::MatrixXcd input_modes;     // columns, orthonormal on axis_first
    Eigen::MatrixXcd second_axis_modes;
    double norm = 0.0;                // Frobenius norm of the original map

    double schmidt_number() const {
        double s4 = 0.0;
        for (double ci : coefficients) s4 += ci * ci * ci * ci;
        return 1.0 / s4;
    }
};

/// SVD of the discretized kernel with normalized singular values.
inline SchmidtDecomposition schmidt(const ComplexMap2D& map) {
    if (!map.values.allFinite()) throw numerical_failure("schmidt: kernel has non-finite entries");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(map.values,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw numerical_failure("schmidt: SVD did not converge");
    SchmidtDecomposition d;
    const auto& s = svd.singularValues();
    d.norm = s.norm();
    if (!(d.norm > 0)) throw numerical_failure("schmidt: zero kernel");
    d.coefficients.resize(s.size());
    for (int i = 0; i < s.size(); ++i) d.coefficients[i] = s(i) / d.norm;
    d.input_modes = svd.matrixU();
    d.second_axis_modes = svd.matrixV();
    return d;
}

/// FWHM (in the axis unit) of a map marginal; both extractors reported.
inline FwhmResult marginal_fwhm(const ComplexMap2D& map, int axis,
                                fwhm_method method = fwhm_method::gaussian_fit,
                                const std::vector<double>* weights = nullptr) {
    const SpectralGrid& g = axis == 0 ? map.axis_first : map.axis_second;
    return fwhm_of_samples(g.points(), map.marginal(axis, weights), method);
}

/// Bandwidth-compression figure of merit: input FWHM over output FWHM.
inline double compression_factor(double input_fwhm_hz, double output_fwhm_hz) {
    if (!(input_fwhm_hz > 0) || !(output_fwhm_hz > 0))
        throw error("compression_factor needs positive FWHM values");
    return input_fwhm_hz / output_fwhm_hz;
}

struct PumpTuneResult {
    PumpEnvelope pump;
    double achieved_K = 0.0;
};

/// 1-D minimization of the Schmidt number over the pump fwhm (golden section
/// on log-fwhm).  Reports TargetUnreachable with the best K when the target
/// cannot be met.
inline PumpTuneResult tune_pump_for_decorrelation(
    const PdcSpec& spec, double target_K, const SpectralGrid& grid_signal,
    const SpectralGrid& grid_idler, double fwhm_lo_hz = 2e11, double fwhm_hi_hz = 8e12) {
    if (!(target_K >= 1.0)) throw error("target Schmidt number must be >= 1");
    const double lambda_pump = spec.lambda_pump_nm;
    auto K_of = [&](double logf) {
        const auto pump = PumpEnvelope::gaussian(lambda_pump, std::pow(10.0, logf));
        return schmidt(pdc_jsa(spec, pump, grid_signal, grid_idler)).schmidt_number();
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log10(fwhm_lo_hz), b = std::log10(fwhm_hi_hz);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = K_of(x1), f2 = K_of(x2);
    for (int it = 0; it < 60 && (b - a) > 1e-5; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = K_of(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = K_of(x2);
        }
    }
    const double logf = f1 < f2 ? x1 : x2;
    PumpTuneResult r{PumpEnvelope::gaussian(lambda_pump, std::pow(10.0, logf)),
                     std::min(f1, f2)};
    if (r.achieved_K > target_K)
        throw target_unreachable("best Schmidt number " + std::to_string(r.achieved_K) +
                                 " exceeds target " + std::to_string(target_K));
    return r;
}

} // namespace qpg
