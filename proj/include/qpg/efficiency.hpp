#pragma once
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qpg/errors.hpp"

namespace qpg {

/// Click/coincidence probability record.  P_h, P_cc and P_cc12 are joint
/// probabilities per pulse; P_1 and P_2 are the per-arm click probabilities
/// behind the 50/50 splitter conditioned on a herald click.
struct CountStatistics {
    double trials = 0;
    double P_h = 0;    // herald click
    double P_cc = 0;   // herald AND (either splitter arm)
    double P_1 = 0;    // arm 1 | herald
    double P_2 = 0;    // arm 2 | herald
    double P_cc12 = 0; // herald AND arm 1 AND arm 2

    void validate() const {
        for (double p : {P_h, P_cc, P_1, P_2, P_cc12})
            if (!(p >= 0.0 && p <= 1.0))
                throw error("count statistics probabilities must lie in [0, 1]");
        if (P_cc > P_h + 1e-12) throw error("P_cc cannot exceed P_h");
    }

    static CountStatistics from_csv(std::istream& in) {
        std::string header, data;
        if (!std::getline(in, header) || !std::getline(in, data))
            throw parse_error("count statistics CSV needs a header and one data line");
        auto parse_line = [](const std::string& s) {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                cell.erase(0, cell.find_first_not_of(" \t\r"));
                cell.erase(cell.find_last_not_of(" \t\r") + 1);
                out.push_back(cell);
            }
            return out;
        };
        const auto head = parse_line(header);
        const auto vals = parse_line(data);
        if (head.size() != vals.size())
            throw parse_error("count statistics CSV header/data length mismatch");
        std::map<std::string, double> kv;
        for (size_t i = 0; i < head.size(); ++i) kv[head[i]] = std::stod(vals[i]);
        CountStatistics s;
        for (auto& [name, target] : std::map<std::string, double*>{
                 {"trials", &s.trials}, {"P_h", &s.P_h},   {"P_cc", &s.P_cc},
                 {"P_1", &s.P_1},       {"P_2", &s.P_2},   {"P_cc12", &s.P_cc12}}) {
            auto it = kv.find(name);
            if (it == kv.end()) throw parse_error("count statistics CSV missing column " + name);
            *target = it->second;
        }
        s.validate();
        return s;
    }

    void to_csv(std::ostream& out) const {
        out << "trials,P_h,P_cc,P_1,P_2,P_cc12\n";
        char buf[256];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", trials, P_h,
                      P_cc, P_1, P_2, P_cc12);
        out << buf;
    }
};

/// Per-field optical/detection budget; every entry is a fraction in [0,1].
struct EfficiencyBudget {
    double internal = 0;
    double optics_transmission = 0;
    double waveguide_incoupling = 0;
    double fiber_coupling_converted = 0;
    double fiber_coupling_reference = 0;
    std::map<std::string, double> detector_efficiencies;

    void validate() const {
        auto chk = [](double v) {
            if (!(v >= 0.0 && v <= 1.0)) throw error("budget entries must lie in [0, 1]");
        };
        chk(internal);
        chk(optics_transmission);
        chk(waveguide_incoupling);
        chk(fiber_coupling_converted);
        chk(fiber_coupling_reference);
        for (auto& [_, v] : detector_efficiencies) chk(v);
    }
};

struct Estimate {
    double value = 0;
    double stderror = 0;
};

/// Klyshko transmission eta_t = P_cc / P_h with a binomial standard error.
inline Estimate klyshko(const CountStatistics& stats) {
    stats.validate();
    if (!(stats.P_h > 0)) throw division_by_zero("klyshko: herald probability is zero");
    const double eta = stats.P_cc / stats.P_h;
    double se = 0.0;
    const double n_h = stats.trials * stats.P_h;
    if (n_h > 0) se = std::sqrt(std::max(eta * (1.0 - eta), 0.0) / n_h);
    return {eta, se};
}

struct InternalEfficiency {
    double value = 0;
    bool negative_warning = false; // noisy input; reported as-is, never clamped
};

/// eta_int = 1 - eta_t(open) / eta_t(blocked).
inline InternalEfficiency internal_efficiency(double eta_open, double eta_blocked) {
    if (!(eta_blocked > 0)) throw division_by_zero("internal_efficiency: eta_blocked is zero");
    const double v = 1.0 - eta_open / eta_blocked;
    return {v, v < 0.0};
}

/// eta_ext = eta_c * eta_SNSPD / (eta_u * eta_SiAPD).
inline double external_efficiency(double eta_c, double eta_u, double det_converted,
                                  double det_reference) {
    if (!(eta_u > 0) || !(det_converted > 0))
        throw division_by_zero("external_efficiency: zero denominator term");
    return eta_c * det_reference / (eta_u * det_converted);
}

/// Correction for the reduced fibre compatibility of the converted mode.
inline double coupling_corrected_efficiency(double eta_ext, double coupling_converted,
                                            double coupling_reference) {
    if (!(coupling_converted > 0))
        throw division_by_zero("coupling correction: zero converted coupling");
    return eta_ext * coupling_reference / coupling_converted;
}

struct FilterBaseline {
    double ratio = 0;             // output/input bandwidth ratio (CW-pump argument)
    double gaussian_integral = 0; // Gaussian filter over Gaussian spectrum
};

/// Spectral-filter throughput baseline the converter competes against.
inline FilterBaseline filter_baseline(double input_fwhm_hz, double output_fwhm_hz) {
    if (!(input_fwhm_hz > 0) || !(output_fwhm_hz > 0))
        throw error("filter_baseline needs positive bandwidths");
    if (output_fwhm_hz > input_fwhm_hz)
        throw invalid_ordering("filter_baseline: output bandwidth exceeds input bandwidth");
    FilterBaseline b;
    b.ratio = output_fwhm_hz / input_fwhm_hz;
    // closed form of int G_in * G_filter / int G_in for Gaussians
    b.gaussian_integral =
        output_fwhm_hz / std::sqrt(input_fwhm_hz * input_fwhm_hz + output_fwhm_hz * output_fwhm_hz);
    return b;
}

/// Pump-power response eta_int(theta) = sin^2(theta), theta ~ sqrt(pulse energy).
inline double pump_power_response(double theta) {
    if (!(theta >= 0)) throw error("pump_power_response: theta must be >= 0");
    const double s = std::sin(theta);
    return s * s;
}

/// Maps one measured (pulse energy, internal efficiency) pair to the
/// proportionality constant theta = k * sqrt(E).
inline double calibrate_power_response(double pulse_energy, double eta_measured) {
    if (!(pulse_energy > 0)) throw error("calibration needs positive pulse energy");
    if (!(eta_measured > 0.0 && eta_measured < 1.0))
        throw error("calibration efficiency must lie in (0, 1)");
    return std::asin(std::sqrt(eta_measured)) / std::sqrt(pulse_energy);
}

/// Pulse energy at which the calibrated sin^2 response reaches eta_target.
inline double energy_for_efficiency(double k_calibrated, double eta_target) {
    if (!(k_calibrated > 0)) throw error("invalid calibration constant");
    if (!(eta_target >= 0.0 && eta_target <= 1.0))
        throw error("target efficiency must lie in [0, 1]");
    const double theta = std::asin(std::sqrt(eta_target));
    return theta * theta / (k_calibrated * k_calibrated);
}

} // namespace qpg
