#pragma once
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "qpg/dispersion.hpp"
#include "qpg/errors.hpp"
#include "qpg/material.hpp"

namespace qpg {

enum class process_direction { sfg, dfg };

/// Group-velocity-matched operating point on the energy-conservation curve
/// for a fixed output wavelength and temperature.
struct OperatingPoint {
    double lambda_in_nm = 0;
    double lambda_pump_nm = 0;
    double lambda_out_nm = 0;
    double temperature_C = 0;
    process_direction direction = process_direction::sfg;
    double gvm_residual_s_per_m = 0; // recomputed through the dispersion module
    double bracket_width_nm = 0;
};

namespace detail {

// pump wavelength fixed by energy conservation at the given input wavelength
inline double pump_for(double lambda_in_nm, double lambda_out_nm, process_direction dir) {
    const double inv = (dir == process_direction::sfg)
                           ? 1.0 / lambda_out_nm - 1.0 / lambda_in_nm
                           : 1.0 / lambda_in_nm - 1.0 / lambda_out_nm;
    if (!(inv > 0)) throw no_root("energy conservation gives a non-positive pump frequency");
    return 1.0 / inv;
}

// input-wavelength interval on which both materials stay inside their
// validity windows (with a finite-difference safety margin)
inline std::pair<double, double> scan_interval(const MaterialModel& mat_in,
                                               const MaterialModel& mat_pump,
                                               double lambda_out_nm, process_direction dir) {
    const double margin = 1e-4; // fractional; covers the group-index stencil
    double lo = mat_in.lambda_min_um * 1e3 * (1.0 + margin);
    double hi = mat_in.lambda_max_um * 1e3 * (1.0 - margin);
    // invert pump_for to bound lambda_in by the pump validity window
    auto in_for_pump = [&](double lambda_pump_nm) {
        const double inv = (dir == process_direction::sfg)
                               ? 1.0 / lambda_out_nm - 1.0 / lambda_pump_nm
                               : 1.0 / lambda_out_nm + 1.0 / lambda_pump_nm;
        return inv > 0 ? 1.0 / inv : std::numeric_limits<double>::infinity();
    };
    const double a = in_for_pump(mat_pump.lambda_min_um * 1e3 * (1.0 + margin));
    const double b = in_for_pump(mat_pump.lambda_max_um * 1e3 * (1.0 - margin));
    lo = std::max(lo, std::min(a, b));
    hi = std::min(hi, std::max(a, b));
    if (dir == process_direction::sfg) lo = std::max(lo, lambda_out_nm * (1.0 + margin));
    if (!(lo < hi))
        throw no_root("validity windows leave no input-wavelength interval to scan");
    return {lo, hi};
}

} // namespace detail

/// Finds the input wavelength at which the input and pump group velocities
/// match, holding the output wavelength and temperature fixed.  A 128-point
/// scan brackets a sign change of the group-velocity mismatch, then
/// safeguarded secant/bisection refines it to |GVM| < 1e-13 s/m and a
/// bracket below 1e-8 um.  Throws no_root when the mismatch never changes
/// sign on the joint validity interval.
inline OperatingPoint find_gvm_point(const MaterialModel& mat_in, const MaterialModel& mat_pump,
                                     double lambda_out_nm, double temperature_C,
                                     process_direction dir = process_direction::sfg) {
    if (!(lambda_out_nm > 0)) throw error("output wavelength must be positive");
    const auto [lo, hi] = detail::scan_interval(mat_in, mat_pump, lambda_out_nm, dir);

    auto mismatch = [&](double lambda_in) {
        const double lp = detail::pump_for(lambda_in, lambda_out_nm, dir);
        return gvm(mat_in, lambda_in, mat_pump, lp, temperature_C);
    };

    constexpr int n_scan = 128;
    double a = lo, fa = mismatch(lo);
    double b = 0, fb = 0;
    bool bracketed = false;
    for (int i = 1; i < n_scan; ++i) {
        const double x = lo + (hi - lo) * double(i) / double(n_scan - 1);
        const double fx = mismatch(x);
        if (fa == 0.0) {
            b = a;
            fb = fa;
            bracketed = true;
            break;
        }
        if (fa * fx <= 0.0) {
            b = x;
            fb = fx;
            bracketed = true;
            break;
        }
        a = x;
        fa = fx;
    }
    if (!bracketed)
        throw no_root("group-velocity mismatch has no sign change on [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "] nm");

    // secant step accepted only when it stays inside the bracket
    const double tol_gvm = 1e-13, tol_nm = 1e-5;
    double x = a, fx = fa;
    for (int it = 0; it < 200 && (std::abs(fx) > tol_gvm || (b - a) > tol_nm); ++it) {
        double cand = (fb != fa) ? (a * fb - b * fa) / (fb - fa) : 0.5 * (a + b);
        if (!(cand > a && cand < b)) cand = 0.5 * (a + b);
        x = cand;
        fx = mismatch(x);
        if (fa * fx <= 0.0) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    if (std::abs(fx) > tol_gvm && (b - a) > tol_nm)
        throw no_root("group-velocity match refinement did not converge");

    OperatingPoint pt;
    pt.lambda_in_nm = x;
    pt.lambda_pump_nm = detail::pump_for(x, lambda_out_nm, dir);
    pt.lambda_out_nm = lambda_out_nm;
    pt.temperature_C = temperature_C;
    pt.direction = dir;
    pt.gvm_residual_s_per_m = gvm(mat_in, pt.lambda_in_nm, mat_pump, pt.lambda_pump_nm,
                                  temperature_C);
    pt.bracket_width_nm = b - a;
    return pt;
}

/// One sweep sample; `point` is empty where no matched pair exists.
struct TemperatureSample {
    double temperature_C = 0;
    std::optional<OperatingPoint> point;
};

inline std::vector<TemperatureSample> sweep_temperature(const MaterialModel& mat_in,
                                                        const MaterialModel& mat_pump,
                                                        double lambda_out_nm,
                                                        const std::vector<double>& temperatures_C,
                                                        process_direction dir =
                                                            process_direction::sfg) {
    std::vector<TemperatureSample> out;
    out.reserve(temperatures_C.size());
    for (double T : temperatures_C) {
        TemperatureSample s;
        s.temperature_C = T;
        try {
            s.point = find_gvm_point(mat_in, mat_pump, lambda_out_nm, T, dir);
        } catch (const no_root&) {
            // retained as an empty sample so sweeps keep their shape
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace qpg
