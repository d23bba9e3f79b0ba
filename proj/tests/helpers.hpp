#pragma once
#include <doctest.h>

#include "qpg/qpg.hpp"

namespace testutil {

inline const qpg::MaterialModel& ln_o() {
    return qpg::MaterialTable::bundled().get("lithium-niobate-effective-waveguide", "ordinary");
}
inline const qpg::MaterialModel& ln_e() {
    return qpg::MaterialTable::bundled().get("lithium-niobate-effective-waveguide",
                                             "extraordinary");
}
inline const qpg::MaterialModel& lt_o() {
    return qpg::MaterialTable::bundled().get("lithium-tantalate-bulk", "ordinary");
}
inline const qpg::MaterialModel& lt_e() {
    return qpg::MaterialTable::bundled().get("lithium-tantalate-bulk", "extraordinary");
}
inline const qpg::MaterialModel& ktp_y() {
    return qpg::MaterialTable::bundled().get("ktp-bulk", "y");
}
inline const qpg::MaterialModel& ktp_z() {
    return qpg::MaterialTable::bundled().get("ktp-bulk", "z");
}

/// The converter device this library was tuned for: 27 mm waveguide at
/// 190 C, 1545 nm input, 854 nm pump.
inline qpg::ProcessSpec device_process() {
    qpg::ProcessSpec s;
    s.material_in = ln_o();
    s.material_pump = ln_e();
    s.material_out = ln_e();
    s.length_m = 0.027;
    s.temperature_C = 190.0;
    s.lambda_in_nm = 1545.0;
    s.lambda_pump_nm = 854.0;
    return s;
}

/// The photon-pair source feeding it: 3.7 mm KTP, type II, degenerate
/// at 1545 nm.
inline qpg::PdcSpec source_pdc() {
    qpg::PdcSpec s;
    s.material_signal = ktp_z();
    s.material_idler = ktp_y();
    s.material_pump = ktp_y();
    s.length_m = 0.0037;
    s.temperature_C = 25.0;
    s.lambda_signal_nm = 1545.0;
    s.lambda_pump_nm = 772.5;
    return s;
}

inline constexpr double source_pump_fwhm_hz = 1293e9;
inline constexpr double source_signal_fwhm_hz = 963e9;
inline constexpr double device_output_fwhm_hz = 129e9;

inline qpg::SpectralGrid pdc_grid(int n, double halfspan_hz = 3.0 * source_signal_fwhm_hz) {
    const double nu0 = qpg::frequency_from_wavelength_nm(1545.0);
    return {nu0 - halfspan_hz, nu0 + halfspan_hz, n, qpg::axis_unit::hertz};
}

// channel used for the photon-statistics anchor: fitted so that the exact
// click estimator returns g2 = 0.32 at the full chain transmission
inline constexpr double fitted_mean_pairs = 0.1539597691938483;
inline constexpr double herald_eff = 0.68;
inline qpg::ChannelModel device_channel(double conversion = 0.755) {
    return qpg::ChannelModel(herald_eff, 0.48, conversion, 0.30);
}

} // namespace testutil
