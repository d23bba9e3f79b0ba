#pragma once
#include <algorithm>
#include <cmath>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/units.hpp"

namespace qpg {

enum class fwhm_method { gaussian_fit, halfmax_interp };

struct FwhmResult {
    double gaussian = 0.0;  // FWHM from least-squares Gaussian fit
    double halfmax = 0.0;   // FWHM from direct half-maximum interpolation
    bool disagree = false;  // the two extractors differ by more than 5%
    double value = 0.0;     // the one selected by the requested method
};

namespace detail {

inline int count_halfmax_regions(const std::vector<double>& y, double half) {
    int regions = 0;
    bool above = false;
    for (double v : y) {
        bool a = v >= half;
        if (a && !above) ++regions;
        above = a;
    }
    return regions;
}

/// Linear-interpolated full width at half maximum on a sampled curve.
inline double fwhm_halfmax(const std::vector<double>& x, const std::vector<double>& y) {
    const auto it = std::max_element(y.begin(), y.end());
    const double peak = *it;
    if (!(peak > 0)) throw fit_failed("halfmax: empty peak");
    const int ip = static_cast<int>(it - y.begin());
    const double half = peak / 2.0;
    if (count_halfmax_regions(y, half) != 1)
        throw fit_failed("halfmax: marginal is not single-peaked at half maximum");
    int lo = ip;
    while (lo > 0 && y[lo] >= half) --lo;
    if (y[lo] >= half) throw fit_failed("halfmax: peak not resolved on the left edge");
    int hi = ip;
    while (hi < static_cast<int>(y.size()) - 1 && y[hi] >= half) ++hi;
    if (y[hi] >= half) throw fit_failed("halfmax: peak not resolved on the right edge");
    const double xl = x[lo] + (half - y[lo]) * (x[lo + 1] - x[lo]) / (y[lo + 1] - y[lo]);
    const double xr = x[hi - 1] + (half - y[hi - 1]) * (x[hi] - x[hi - 1]) / (y[hi] - y[hi - 1]);
    return xr - xl;
}

/// Least-squares fit of a*exp(-(x-m)^2/(2 s^2)) by damped Gauss-Newton.
inline double fwhm_gaussian_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    const auto it = std::max_element(y.begin(), y.end());
    double a = *it;
    double m = x[it - y.begin()];
    double s = fwhm_halfmax(x, y) / gaussian_fwhm_factor;
    if (!(s > 0)) throw fit_failed("gaussian fit: degenerate initial width");

    double lambda = 1e-3;
    double prev_cost = -1.0;
    for (int iter = 0; iter < 200; ++iter) {
        double JtJ[3][3] = {};
        double Jtr[3] = {};
        double cost = 0.0;
        for (int i = 0; i < n; ++i) {
            const double dx = x[i] - m;
            const double e = std::exp(-dx * dx / (2 * s * s));
            const double f = a * e;
            const double r = y[i] - f;
            const double J[3] = {e, f * dx / (s * s), f * dx * dx / (s * s * s)};
            for (int p = 0; p < 3; ++p) {
                Jtr[p] += J[p] * r;
                for (int q = 0; q < 3; ++q) JtJ[p][q] += J[p] * J[q];
            }
            cost += r * r;
        }
        for (int p = 0; p < 3; ++p) JtJ[p][p] *= (1.0 + lambda);
        // solve the 3x3 normal equations by Gaussian elimination
        double M[3][4];
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) M[p][q] = JtJ[p][q];
            M[p][3] = Jtr[p];
        }
        for (int p = 0; p < 3; ++p) {
            int piv = p;
            for (int q = p + 1; q < 3; ++q)
                if (std::abs(M[q][p]) > std::abs(M[piv][p])) piv = q;
            std::swap(M[p], M[piv]);
            if (std::abs(M[p][p]) < 1e-300) throw fit_failed("gaussian fit: singular normal equations");
            for (int q = p + 1; q < 3; ++q) {
                double fct = M[q][p] / M[p][p];
                for (int r2 = p; r2 < 4; ++r2) M[q][r2] -= fct * M[p][r2];
            }
        }
        double d[3];
        for (int p = 2; p >= 0; --p) {
            d[p] = M[p][3];
            for (int q = p + 1; q < 3; ++q) d[p] -= M[p][q] * d[q];
            d[p] /= M[p][p];
        }
        a += d[0];
        m += d[1];
        s += d[2];
        s = std::abs(s);
        if (!(a > 0) || !(s > 0) || !std::isfinite(a + m + s))
            throw fit_failed("gaussian fit diverged");
        const double step = std::abs(d[1]) + std::abs(d[2]);
        if (prev_cost >= 0 && cost > prev_cost) lambda *= 10;
        else lambda = std::max(lambda * 0.3, 1e-12);
        prev_cost = cost;
        if (step < 1e-12 * s) return gaussian_fwhm_factor * s;
    }
    throw fit_failed("gaussian fit did not converge");
}

} // namespace detail

/// FWHM of a sampled single-peaked curve; both extractors are always run and
/// flagged when they disagree by more than 5% (sinc^2 tails bias the fit).
inline FwhmResult fwhm_of_samples(const std::vector<double>& x, const std::vector<double>& y,
                                  fwhm_method method = fwhm_method::gaussian_fit) {
    if (x.size() != y.size() || x.size() < 5) throw fit_failed("fwhm: need at least 5 samples");
    FwhmResult r;
    r.halfmax = detail::fwhm_halfmax(x, y);
    r.gaussian = detail::fwhm_gaussian_fit(x, y);
    r.disagree = std::abs(r.gaussian - r.halfmax) > 0.05 * std::max(r.gaussian, r.halfmax);
    r.value = method == fwhm_method::gaussian_fit ? r.gaussian : r.halfmax;
    return r;
}

} // namespace qpg
