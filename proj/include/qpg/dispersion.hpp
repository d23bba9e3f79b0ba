#pragma once
#include <vector>

#include <Eigen/Dense>

#include "qpg/grid.hpp"
#include "qpg/material.hpp"
#include "qpg/units.hpp"

namespace qpg {

inline double refractive_index(const MaterialModel& m, double lambda_nm, double T) {
    return m.refractive_index(lambda_nm, T);
}

/// Relative step for the central finite difference in group_index.
inline constexpr double group_index_rel_step = 1e-6;

/// n_g = n - lambda * dn/dlambda, central difference with fixed relative step.
inline double group_index(const MaterialModel& m, double lambda_nm, double T,
                          double rel_step = group_index_rel_step) {
    const double h = lambda_nm * rel_step;
    const double np = m.refractive_index(lambda_nm + h, T);
    const double nm = m.refractive_index(lambda_nm - h, T);
    const double n = m.refractive_index(lambda_nm, T);
    return n - lambda_nm * (np - nm) / (2.0 * h);
}

/// Group velocity c / n_g, m/s.
inline double group_velocity(const MaterialModel& m, double lambda_nm, double T) {
    return c_vacuum / group_index(m, lambda_nm, T);
}

/// 1/v_g(in) - 1/v_g(pump) in s/m.
inline double gvm(const MaterialModel& min, double lambda_in_nm, const MaterialModel& mpump,
                  double lambda_pump_nm, double T) {
    return (group_index(min, lambda_in_nm, T) - group_index(mpump, lambda_pump_nm, T)) / c_vacuum;
}

/// Group-velocity mismatch matrix over (input grid x pump grid), s/m.
/// The zero contour is the light stripe of the matching map.
inline Eigen::MatrixXd gvm_map(const MaterialModel& min, const MaterialModel& mpump,
                               const SpectralGrid& grid_in, const SpectralGrid& grid_pump,
                               double T) {
    if (grid_in.unit != axis_unit::nanometre || grid_pump.unit != axis_unit::nanometre)
        throw error("gvm_map expects wavelength grids in nanometres");
    std::vector<double> gi(grid_in.n), gp(grid_pump.n);
    for (int i = 0; i < grid_in.n; ++i)
        gi[i] = group_index(min, grid_in[i], T) / c_vacuum;
    for (int j = 0; j < grid_pump.n; ++j)
        gp[j] = group_index(mpump, grid_pump[j], T) / c_vacuum;
    Eigen::MatrixXd m(grid_in.n, grid_pump.n);
    for (int i = 0; i < grid_in.n; ++i)
        for (int j = 0; j < grid_pump.n; ++j) m(i, j) = gi[i] - gp[j];
    return m;
}

} // namespace qpg
