#pragma once
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qpg/errors.hpp"

namespace qpg {

enum class axis_unit { nanometre, hertz };

/// Uniform 1-D spectral axis, endpoints inclusive.
struct SpectralGrid {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    axis_unit unit = axis_unit::nanometre;

    SpectralGrid() = default;
    SpectralGrid(double lo_, double hi_, int n_, axis_unit u)
        : lo(lo_), hi(hi_), n(n_), unit(u) {
        if (n < 1) throw error("spectral grid needs at least one point");
        if (n > 1 && !(hi > lo)) throw error("spectral grid bounds must be increasing");
    }

    double operator[](int i) const {
        return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    }
    double step() const { return n > 1 ? (hi - lo) / (n - 1) : 0.0; }

    std::vector<double> points() const {
        std::vector<double> p(n);
        for (int i = 0; i < n; ++i) p[i] = (*this)[i];
        return p;
    }
};

/// Complex amplitude over (first axis x second axis); phasematching maps,
/// joint spectral amplitudes and joint transfer amplitudes all live here.
struct ComplexMap2D {
    SpectralGrid axis_first;
    SpectralGrid axis_second;
    Eigen::MatrixXcd values; // values(i, j): i on axis_first, j on axis_second

    double total_intensity() const { return values.squaredNorm(); }

    /// Marginal intensity along the requested axis (0 = first, 1 = second),
    /// optionally weighted across the other axis.
    std::vector<double> marginal(int axis, const std::vector<double>* weights = nullptr) const {
        const int nk = axis == 0 ? axis_first.n : axis_second.n;
        const int nj = axis == 0 ? axis_second.n : axis_first.n;
        if (weights && static_cast<int>(weights->size()) != nj)
            throw error("marginal weight vector does not match the integration axis");
        std::vector<double> m(nk, 0.0);
        for (int k = 0; k < nk; ++k) {
            double acc = 0.0;
            for (int j = 0; j < nj; ++j) {
                double v = axis == 0 ? std::norm(values(k, j)) : std::norm(values(j, k));
                acc += weights ? (*weights)[j] * v : v;
            }
            m[k] = acc;
        }
        return m;
    }
};

} // namespace qpg
