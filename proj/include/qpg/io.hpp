#pragma once
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/grid.hpp"
#include "qpg/jsa.hpp"

namespace qpg {

inline constexpr const char* library_version = "1.0.0";

/// FNV-1a over the exact bytes of the resolved configuration text.
inline std::uint64_t fnv1a_hash(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Provenance block written at the top of every exported table.
struct ExportMeta {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;

    void write(std::ostream& out) const {
        char buf[128];
        out << "# version " << library_version << "\n";
        std::snprintf(buf, sizeof buf, "# config_hash %016llx\n",
                      (unsigned long long)config_hash);
        out << buf;
        out << "# seed " << seed << "\n";
    }
};

namespace detail {
inline void put(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}
} // namespace detail

/// Complex map table: one row per grid node,
/// columns: first-axis value, second-axis value, Re, Im, |.|^2.
inline void write_map(std::ostream& out, const ComplexMap2D& map, const ExportMeta& meta,
                      const std::string& axis_first_label,
                      const std::string& axis_second_label) {
    meta.write(out);
    out << "# columns " << axis_first_label << " " << axis_second_label
        << " re im intensity\n";
    for (int i = 0; i < map.axis_first.n; ++i)
        for (int j = 0; j < map.axis_second.n; ++j) {
            const auto v = map.values(i, j);
            detail::put(out, map.axis_first[i]);
            out << ' ';
            detail::put(out, map.axis_second[j]);
            out << ' ';
            detail::put(out, v.real());
            out << ' ';
            detail::put(out, v.imag());
            out << ' ';
            detail::put(out, std::norm(v));
            out << '\n';
        }
    if (!out) throw error("write_map: stream failure");
}

/// Real-valued map with the same row layout minus the complex columns.
inline void write_real_map(std::ostream& out, const SpectralGrid& axis_first,
                           const SpectralGrid& axis_second, const Eigen::MatrixXd& values,
                           const ExportMeta& meta, const std::string& axis_first_label,
                           const std::string& axis_second_label,
                           const std::string& value_label) {
    if (values.rows() != axis_first.n || values.cols() != axis_second.n)
        throw error("write_real_map: shape mismatch");
    meta.write(out);
    out << "# columns " << axis_first_label << " " << axis_second_label << " " << value_label
        << "\n";
    for (int i = 0; i < axis_first.n; ++i)
        for (int j = 0; j < axis_second.n; ++j) {
            detail::put(out, axis_first[i]);
            out << ' ';
            detail::put(out, axis_second[j]);
            out << ' ';
            detail::put(out, values(i, j));
            out << '\n';
        }
    if (!out) throw error("write_real_map: stream failure");
}

/// Two-column table of samples along one axis.
inline void write_profile(std::ostream& out, const std::vector<double>& x,
                          const std::vector<double>& y, const ExportMeta& meta,
                          const std::string& x_label, const std::string& y_label) {
    if (x.size() != y.size()) throw error("write_profile: length mismatch");
    meta.write(out);
    out << "# columns " << x_label << " " << y_label << "\n";
    for (size_t i = 0; i < x.size(); ++i) {
        detail::put(out, x[i]);
        out << ' ';
        detail::put(out, y[i]);
        out << '\n';
    }
    if (!out) throw error("write_profile: stream failure");
}

/// Schmidt spectrum: index, coefficient, cumulative weight.
inline void write_schmidt(std::ostream& out, const SchmidtDecomposition& dec,
                          const ExportMeta& meta) {
    meta.write(out);
    out << "# schmidt_number ";
    detail::put(out, dec.schmidt_number());
    out << "\n# columns index coefficient cumulative_weight\n";
    double cum = 0;
    for (size_t i = 0; i < dec.coefficients.size(); ++i) {
        const double c = dec.coefficients[i];
        cum += c * c;
        out << i << ' ';
        detail::put(out, c);
        out << ' ';
        detail::put(out, cum);
        out << '\n';
    }
    if (!out) throw error("write_schmidt: stream failure");
}

} // namespace qpg
