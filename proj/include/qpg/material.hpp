#pragma once
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/units.hpp"

namespace qpg {

/// Temperature-dependent Sellmeier record for one material/polarization axis.
///
/// With lambda in micrometres, T in Celsius and f = (T - T0)*(T + T1):
///
///   n^2 = A + Bf*f + (B + bf*f)/(lam^2 - (C + cf*f)^2)
///               + (D + df*f)/(lam^2 - E^2) - G*lam^2
///   n   = sqrt(n^2) + w2m/lam^2 + wp2*lam^2 + wp4*lam^4
///
/// The field order matches data/sellmeier.txt.
struct MaterialModel {
    std::string name;
    std::string polarization; // ordinary | extraordinary | y | z
    double A = 0, Bf = 0, B = 0, bf = 0, C = 0, cf = 0;
    double D = 0, df = 0, E = 0, G = 0;
    double T0 = 0, T1 = 0;
    double w2m = 0, wp2 = 0, wp4 = 0;
    double lambda_min_um = 0, lambda_max_um = 0; // validity, um
    double T_min = 0, T_max = 0;                 // validity, Celsius

    std::string key() const { return name + "/" + polarization; }

    void check_validity(double lambda_nm, double T) const {
        const double lum = lambda_nm * 1e-3;
        if (!(lum >= lambda_min_um && lum <= lambda_max_um))
            throw out_of_validity_range(key() + ": wavelength " + std::to_string(lambda_nm) +
                                        " nm outside [" + std::to_string(lambda_min_um * 1e3) +
                                        ", " + std::to_string(lambda_max_um * 1e3) + "] nm");
        if (!(T >= T_min && T <= T_max))
            throw out_of_validity_range(key() + ": temperature " + std::to_string(T) +
                                        " C outside [" + std::to_string(T_min) + ", " +
                                        std::to_string(T_max) + "] C");
    }

    /// n(lambda, T); lambda in nm (vacuum), T in Celsius.
    double refractive_index(double lambda_nm, double T) const {
        check_validity(lambda_nm, T);
        const double l = lambda_nm * 1e-3; // um
        const double l2 = l * l;
        const double f = (T - T0) * (T + T1);
        const double pole1 = C + cf * f;
        double n2 = A + Bf * f + (B + bf * f) / (l2 - pole1 * pole1) +
                    (D + df * f) / (l2 - E * E) - G * l2;
        if (!(n2 > 0.0) || !std::isfinite(n2))
            throw numerical_failure(key() + ": n^2 not positive at " +
                                    std::to_string(lambda_nm) + " nm");
        double n = std::sqrt(n2) + w2m / l2 + wp2 * l2 + wp4 * l2 * l2;
        if (!(n > 1.0) || !std::isfinite(n))
            throw numerical_failure(key() + ": refractive index not physical at " +
                                    std::to_string(lambda_nm) + " nm");
        return n;
    }
};

namespace detail {
inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    return tok;
}
} // namespace detail

/// Loaded coefficient set; key is "name/polarization".
class MaterialTable {
  public:
    static MaterialTable parse(std::istream& in, const std::string& origin) {
        MaterialTable tab;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto tok = detail::split_ws(line);
            if (tok.empty()) continue;
            if (tok.size() != 21)
                throw parse_error(origin + ":" + std::to_string(lineno) +
                                  ": expected 21 fields, got " + std::to_string(tok.size()));
            MaterialModel m;
            m.name = tok[0];
            m.polarization = tok[1];
            double* fields[] = {&m.A,  &m.Bf, &m.B,   &m.bf,  &m.C,   &m.cf, &m.D,
                                &m.df, &m.E,  &m.G,   &m.T0,  &m.T1,  &m.w2m, &m.wp2,
                                &m.wp4, &m.lambda_min_um, &m.lambda_max_um, &m.T_min, &m.T_max};
            for (int i = 0; i < 19; ++i) {
                char* end = nullptr;
                *fields[i] = std::strtod(tok[i + 2].c_str(), &end);
                if (end == tok[i + 2].c_str() || *end != '\0')
                    throw parse_error(origin + ":" + std::to_string(lineno) +
                                      ": bad numeric field '" + tok[i + 2] + "'");
            }
            if (!(m.lambda_min_um > 0 && m.lambda_max_um > m.lambda_min_um))
                throw parse_error(origin + ":" + std::to_string(lineno) +
                                  ": invalid wavelength validity range");
            tab.models_[m.key()] = m;
        }
        if (tab.models_.empty())
            throw parse_error(origin + ": no material records found");
        return tab;
    }

    static MaterialTable load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw parse_error("cannot open material file: " + path);
        return parse(f, path);
    }

    /// Bundled table: $QPG_DATA_DIR/sellmeier.txt if set, else the
    /// repository data directory baked in at configure time.
    static const MaterialTable& bundled() {
        static MaterialTable tab = [] {
            const char* dir = std::getenv("QPG_DATA_DIR");
            std::string base = dir ? dir : QPG_DEFAULT_DATA_DIR;
            return load(base + "/sellmeier.txt");
        }();
        return tab;
    }

    const MaterialModel& get(const std::string& name, const std::string& polarization) const {
        auto it = models_.find(name + "/" + polarization);
        if (it == models_.end())
            throw error("unknown material/axis: " + name + "/" + polarization);
        return it->second;
    }
    bool has(const std::string& name, const std::string& polarization) const {
        return models_.count(name + "/" + polarization) > 0;
    }
    std::vector<std::string> keys() const {
        std::vector<std::string> k;
        for (auto& [key, _] : models_) k.push_back(key);
        return k;
    }

  private:
    std::map<std::string, MaterialModel> models_;
};

} // namespace qpg
