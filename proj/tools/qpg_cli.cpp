// Command-line front end: emits plot-ready tabular data and machine-readable
// summaries for the frequency-conversion simulator.  All physics lives in the
// library headers; this file only parses configuration, calls the library and
// writes files.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpg/qpg.hpp"

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// tracks emitted files so a failed run leaves no partial outputs behind
struct OutputSet {
    fs::path dir;
    std::vector<fs::path> written;

    std::ofstream open(const std::string& name) {
        fs::create_directories(dir);
        fs::path p = dir / name;
        std::ofstream f(p);
        if (!f) throw qpg::error("cannot open output file " + p.string());
        written.push_back(p);
        return f;
    }
    void discard_all() {
        for (auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

const qpg::MaterialModel& resolve_material(const std::string& key, const std::string& opt) {
    auto slash = key.find('/');
    if (slash == std::string::npos)
        throw qpg::config_error(opt + ": expected name/axis, got '" + key + "'");
    const auto& tab = qpg::MaterialTable::bundled();
    const std::string name = key.substr(0, slash), axis = key.substr(slash + 1);
    if (!tab.has(name, axis))
        throw qpg::config_error(opt + ": unknown material/axis '" + key + "'");
    return tab.get(name, axis);
}

// canonical key = value text of everything that influenced a run; hashed into
// the metadata header of each emitted file
struct ConfigText {
    std::string text;
    void add(const std::string& key, const std::string& value) {
        text += key + " = " + value + "\n";
    }
    void add(const std::string& key, double value) { add(key, fmt(value)); }
    std::uint64_t hash() const { return qpg::fnv1a_hash(text); }
};

// ---------------------------------------------------------------- gvm-map

struct GvmMapArgs {
    std::string material_in, material_pump;
    double in_min = 1450, in_max = 1650, pump_min = 800, pump_max = 950;
    int in_n = 101, pump_n = 101;
    std::vector<double> temperatures{190.0};
    std::vector<double> lambda_out;
};

void run_gvm_map(const GvmMapArgs& a, OutputSet& out) {
    const auto& mat_in = resolve_material(a.material_in, "material-in");
    const auto& mat_pump = resolve_material(a.material_pump, "material-pump");
    qpg::SpectralGrid gin(a.in_min, a.in_max, a.in_n, qpg::axis_unit::nanometre);
    qpg::SpectralGrid gpump(a.pump_min, a.pump_max, a.pump_n, qpg::axis_unit::nanometre);

    ConfigText cfg;
    cfg.add("subcommand", "gvm-map");
    cfg.add("material-in", a.material_in);
    cfg.add("material-pump", a.material_pump);
    for (double v : {a.in_min, a.in_max, double(a.in_n), a.pump_min, a.pump_max,
                     double(a.pump_n)})
        cfg.add("grid", v);
    for (double t : a.temperatures) cfg.add("temperature", t);
    for (double l : a.lambda_out) cfg.add("lambda-out", l);
    qpg::ExportMeta meta{cfg.hash(), 0};

    for (double T : a.temperatures) {
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "T%g", T);
        auto m = qpg::gvm_map(mat_in, mat_pump, gin, gpump, T);
        auto f = out.open(std::string("gvm_map_") + suffix + ".txt");
        qpg::write_real_map(f, gin, gpump, m, meta, "lambda_in_nm", "lambda_pump_nm",
                            "gvm_s_per_m");

        // zero contour: pump wavelength of the sign change on each input row
        std::vector<double> xs, ys;
        for (int i = 0; i < gin.n; ++i)
            for (int j = 0; j + 1 < gpump.n; ++j) {
                const double f0 = m(i, j), f1 = m(i, j + 1);
                if (f0 == 0.0 || f0 * f1 < 0) {
                    const double frac = f0 == f1 ? 0.0 : f0 / (f0 - f1);
                    xs.push_back(gin[i]);
                    ys.push_back(gpump[j] + frac * (gpump[j + 1] - gpump[j]));
                }
            }
        auto fz = out.open(std::string("gvm_zero_") + suffix + ".txt");
        qpg::write_profile(fz, xs, ys, meta, "lambda_in_nm", "lambda_pump_nm");
    }

    // energy-conservation constraint line per requested output wavelength
    for (double lo : a.lambda_out) {
        std::vector<double> xs, ys;
        for (int i = 0; i < gin.n; ++i) {
            const double inv = 1.0 / lo - 1.0 / gin[i];
            if (inv <= 0) continue;
            const double lp = 1.0 / inv;
            if (lp < gpump.lo || lp > gpump.hi) continue;
            xs.push_back(gin[i]);
            ys.push_back(lp);
        }
        char name[64];
        std::snprintf(name, sizeof name, "gvm_constraint_out%g.txt", lo);
        auto fc = out.open(name);
        qpg::write_profile(fc, xs, ys, meta, "lambda_in_nm", "lambda_pump_nm");
    }
}

// ---------------------------------------------------------- phasematching

struct PhasematchingArgs {
    std::string material_in, material_pump, material_out;
    double length_mm = 27, temperature = 190;
    double lambda_in = 1545, lambda_pump = 854;
    int qpm_order = 1;
    double in_span_nm = 20, pump_span_nm = 6;
    int n = 201;
};

qpg::ProcessSpec make_process(const PhasematchingArgs& a) {
    qpg::ProcessSpec spec;
    spec.material_in = resolve_material(a.material_in, "material-in");
    spec.material_pump = resolve_material(a.material_pump, "material-pump");
    spec.material_out = resolve_material(a.material_out, "material-out");
    spec.length_m = a.length_mm * 1e-3;
    spec.temperature_C = a.temperature;
    spec.lambda_in_nm = a.lambda_in;
    spec.lambda_pump_nm = a.lambda_pump;
    spec.qpm_order = a.qpm_order;
    spec.validate();
    return qpg::with_solved_poling_period(spec);
}

ConfigText phasematching_config(const PhasematchingArgs& a, const char* prefix = "") {
    ConfigText cfg;
    cfg.add(std::string(prefix) + "material-in", a.material_in);
    cfg.add(std::string(prefix) + "material-pump", a.material_pump);
    cfg.add(std::string(prefix) + "material-out", a.material_out);
    for (double v : {a.length_mm, a.temperature, a.lambda_in, a.lambda_pump,
                     double(a.qpm_order), a.in_span_nm, a.pump_span_nm, double(a.n)})
        cfg.add(std::string(prefix) + "param", v);
    return cfg;
}

void run_phasematching(const PhasematchingArgs& a, OutputSet& out) {
    auto spec = make_process(a);
    ConfigText cfg = phasematching_config(a);
    qpg::ExportMeta meta{cfg.hash(), 0};

    qpg::SpectralGrid gin(a.lambda_in - a.in_span_nm / 2, a.lambda_in + a.in_span_nm / 2, a.n,
                          qpg::axis_unit::nanometre);
    qpg::SpectralGrid gp(a.lambda_pump - a.pump_span_nm / 2, a.lambda_pump + a.pump_span_nm / 2,
                         a.n, qpg::axis_unit::nanometre);
    auto map = qpg::phasematching_map(spec, gin, gp);
    auto f = out.open("pm_map.txt");
    qpg::write_map(f, map, meta, "lambda_in_nm", "lambda_pump_nm");

    // central cut along the input axis at the nominal pump wavelength
    std::vector<double> xs = gin.points(), ys(a.n);
    for (int i = 0; i < a.n; ++i)
        ys[i] = std::norm(qpg::phasematching_value(spec, gin[i], a.lambda_pump));
    auto fp = out.open("pm_profile.txt");
    qpg::write_profile(fp, xs, ys, meta, "lambda_in_nm", "intensity");

    const double fwhm = qpg::phasematching_output_fwhm(spec);
    auto fs_ = out.open("pm_summary.txt");
    meta.write(fs_);
    fs_ << "poling_period_m = " << fmt(*spec.poling_period_m) << "\n";
    fs_ << "lambda_out_nm = " << fmt(spec.lambda_out_nm()) << "\n";
    fs_ << "output_fwhm_hz = " << fmt(fwhm) << "\n";
}

// ------------------------------------------------------------------- jsa

struct JsaArgs {
    std::string material_signal, material_idler, material_pump;
    double length_mm = 3.7, temperature = 25;
    double lambda_signal = 1545, lambda_pump = 772.5;
    double pump_fwhm_ghz = 1293, signal_fwhm_guess_ghz = 963;
    double span_mult = 3;
    int n = 128;
};

qpg::PdcSpec make_pdc(const JsaArgs& a, const char* prefix = "") {
    qpg::PdcSpec spec;
    spec.material_signal = resolve_material(a.material_signal, std::string(prefix) +
                                                                   "material-signal");
    spec.material_idler = resolve_material(a.material_idler, std::string(prefix) +
                                                                 "material-idler");
    spec.material_pump = resolve_material(a.material_pump, std::string(prefix) +
                                                               "material-pump");
    spec.length_m = a.length_mm * 1e-3;
    spec.temperature_C = a.temperature;
    spec.lambda_signal_nm = a.lambda_signal;
    spec.lambda_pump_nm = a.lambda_pump;
    spec.qpm_order = 1;
    return spec;
}

std::pair<qpg::SpectralGrid, qpg::SpectralGrid> pdc_grids(const qpg::PdcSpec& spec,
                                                          const JsaArgs& a) {
    const double nu_s0 = qpg::frequency_from_wavelength_nm(spec.lambda_signal_nm);
    const double nu_i0 = qpg::frequency_from_wavelength_nm(spec.lambda_idler_nm());
    const double half = a.span_mult * a.signal_fwhm_guess_ghz * 1e9;
    return {qpg::SpectralGrid(nu_s0 - half, nu_s0 + half, a.n, qpg::axis_unit::hertz),
            qpg::SpectralGrid(nu_i0 - half, nu_i0 + half, a.n, qpg::axis_unit::hertz)};
}

ConfigText jsa_config(const JsaArgs& a, const char* prefix = "") {
    ConfigText cfg;
    cfg.add(std::string(prefix) + "material-signal", a.material_signal);
    cfg.add(std::string(prefix) + "material-idler", a.material_idler);
    cfg.add(std::string(prefix) + "material-pump", a.material_pump);
    for (double v : {a.length_mm, a.temperature, a.lambda_signal, a.lambda_pump,
                     a.pump_fwhm_ghz, a.signal_fwhm_guess_ghz, a.span_mult, double(a.n)})
        cfg.add(std::string(prefix) + "param", v);
    return cfg;
}

void run_jsa(const JsaArgs& a, OutputSet& out) {
    auto spec = make_pdc(a);
    ConfigText cfg = jsa_config(a);
    cfg.add("subcommand", "jsa");
    qpg::ExportMeta meta{cfg.hash(), 0};

    auto [gs, gi] = pdc_grids(spec, a);
    auto pump = qpg::PumpEnvelope::gaussian(a.lambda_pump, a.pump_fwhm_ghz * 1e9);
    auto map = qpg::pdc_jsa(spec, pump, gs, gi);

    auto f = out.open("jsa_map.txt");
    qpg::write_map(f, map, meta, "nu_signal_hz", "nu_idler_hz");

    for (int axis : {0, 1}) {
        auto prof = map.marginal(axis);
        auto fm = out.open(axis == 0 ? "jsa_signal_marginal.txt" : "jsa_idler_marginal.txt");
        qpg::write_profile(fm, (axis == 0 ? gs : gi).points(), prof, meta, "nu_hz",
                           "intensity");
    }

    auto dec = qpg::schmidt(map);
    auto fsch = out.open("jsa_schmidt.txt");
    qpg::write_schmidt(fsch, dec, meta);
}

// ---------------------------------------------------------------- report

struct ReportArgs {
    PhasematchingArgs pm;
    JsaArgs pdc;
    double measured_input_fwhm_ghz = 963, measured_output_fwhm_ghz = 129;
    double eta_open = 0.049, eta_blocked = 0.20;
    double eta_c = 0.023858823529411764, eta_u = 0.20;
    double det_converted = 0.60, det_reference = 0.85;
    double coupling_converted = 0.50, coupling_reference = 0.80;
    double g2_mean_photons = 0.1539597691938483;
    int g2_schmidt_modes = 1;
    double g2_herald_efficiency = 0.68;
    double g2_transmission_before = 0.48;
    double g2_conversion_efficiency = 0.755;
    double g2_transmission_after = 0.30;
    std::uint64_t mc_trials_per_block = 4096;
    int mc_threads = 0;
    std::uint64_t seed = 20260826;
};

void run_report(const ReportArgs& a, OutputSet& out) {
    ConfigText cfg = phasematching_config(a.pm);
    ConfigText pdc_cfg = jsa_config(a.pdc, "pdc-");
    cfg.text += pdc_cfg.text;
    for (double v : {a.measured_input_fwhm_ghz, a.measured_output_fwhm_ghz, a.eta_open,
                     a.eta_blocked, a.eta_c, a.eta_u, a.det_converted, a.det_reference,
                     a.coupling_converted, a.coupling_reference, a.g2_mean_photons,
                     double(a.g2_schmidt_modes), a.g2_herald_efficiency,
                     a.g2_transmission_before, a.g2_conversion_efficiency,
                     a.g2_transmission_after, double(a.mc_trials_per_block)})
        cfg.add("param", v);
    qpg::ExportMeta meta{cfg.hash(), a.seed};

    // --- PDC input spectrum ---
    auto pdc = make_pdc(a.pdc, "pdc-");
    auto [gs, gi] = pdc_grids(pdc, a.pdc);
    auto pump_pdc = qpg::PumpEnvelope::gaussian(a.pdc.lambda_pump, a.pdc.pump_fwhm_ghz * 1e9);
    auto jsa = qpg::pdc_jsa(pdc, pump_pdc, gs, gi);
    const auto input_fwhm = qpg::marginal_fwhm(jsa, 0);
    const auto dec = qpg::schmidt(jsa);

    // --- conversion ---
    auto proc = make_process(a.pm);
    const double output_fwhm = qpg::phasematching_output_fwhm(proc);
    const double cf_sim = qpg::compression_factor(input_fwhm.value, output_fwhm);
    const double cf_meas = qpg::compression_factor(a.measured_input_fwhm_ghz * 1e9,
                                                   a.measured_output_fwhm_ghz * 1e9);
    const auto baseline = qpg::filter_baseline(a.measured_input_fwhm_ghz * 1e9,
                                               a.measured_output_fwhm_ghz * 1e9);

    // --- efficiency chain ---
    const auto eta_int = qpg::internal_efficiency(a.eta_open, a.eta_blocked);
    const double eta_ext =
        qpg::external_efficiency(a.eta_c, a.eta_u, a.det_converted, a.det_reference);
    const double eta_corr = qpg::coupling_corrected_efficiency(eta_ext, a.coupling_converted,
                                                               a.coupling_reference);

    // --- photon statistics ---
    qpg::SourceModel src(a.g2_mean_photons, a.g2_schmidt_modes);
    qpg::ChannelModel after(a.g2_herald_efficiency, a.g2_transmission_before,
                            a.g2_conversion_efficiency, a.g2_transmission_after);
    qpg::ChannelModel before = after.with_conversion(1.0);
    const double g2_before = qpg::heralded_g2_click(src, before);
    const double g2_after = qpg::heralded_g2_click(src, after);
    const auto mc = qpg::monte_carlo_click_statistics(src, after, a.mc_trials_per_block,
                                                      a.seed, a.mc_threads);

    auto f = out.open("report.txt");
    meta.write(f);
    auto kv = [&](const char* k, double v) { f << k << " = " << fmt(v) << "\n"; };
    kv("input_fwhm_hz", input_fwhm.value);
    kv("input_schmidt_number", dec.schmidt_number());
    kv("output_fwhm_hz", output_fwhm);
    kv("poling_period_m", *proc.poling_period_m);
    kv("lambda_out_nm", proc.lambda_out_nm());
    kv("compression_factor_simulated", cf_sim);
    kv("compression_factor_measured", cf_meas);
    kv("filter_baseline_ratio", baseline.ratio);
    kv("filter_baseline_gaussian", baseline.gaussian_integral);
    kv("eta_internal", eta_int.value);
    kv("eta_external", eta_ext);
    kv("eta_external_corrected", eta_corr);
    kv("g2_before", g2_before);
    kv("g2_after", g2_after);
    kv("g2_after_moment_estimator", qpg::heralded_g2_moment(src, after));
    kv("g2_after_monte_carlo", mc.g2.value);
    kv("g2_after_monte_carlo_stderr", mc.g2.stderror);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-conversion simulator: dispersion, phasematching, joint spectra,"
                 " efficiency accounting and photon statistics"};
    app.set_config("--config");
    std::string output_dir = ".";
    app.add_option("-o,--output-dir", output_dir, "Directory for emitted files")
        ->capture_default_str();

    GvmMapArgs gv;
    auto* cg = app.add_subcommand("gvm-map", "Group-velocity mismatch map, zero contour and"
                                             " energy-conservation constraint lines");
    cg->add_option("--material-in", gv.material_in, "Input material as name/axis")->required();
    cg->add_option("--material-pump", gv.material_pump, "Pump material as name/axis")
        ->required();
    cg->add_option("--in-min", gv.in_min, "Input axis lower bound, nm")->capture_default_str();
    cg->add_option("--in-max", gv.in_max, "Input axis upper bound, nm")->capture_default_str();
    cg->add_option("--in-n", gv.in_n, "Input axis points")->capture_default_str();
    cg->add_option("--pump-min", gv.pump_min, "Pump axis lower bound, nm")
        ->capture_default_str();
    cg->add_option("--pump-max", gv.pump_max, "Pump axis upper bound, nm")
        ->capture_default_str();
    cg->add_option("--pump-n", gv.pump_n, "Pump axis points")->capture_default_str();
    cg->add_option("--temperature", gv.temperatures, "Temperatures, Celsius (repeatable)")
        ->capture_default_str();
    cg->add_option("--lambda-out", gv.lambda_out,
                   "Output wavelengths for constraint lines, nm (repeatable)");

    PhasematchingArgs pm;
    auto* cp = app.add_subcommand("phasematching", "Quasi-phasematched SFG amplitude map,"
                                                   " profile and output bandwidth");
    auto add_pm = [](CLI::App* c, PhasematchingArgs& p, const char* prefix) {
        auto key = [&](const char* k) { return std::string("--") + prefix + k; };
        c->add_option(key("material-in"), p.material_in, "Input material as name/axis")
            ->required();
        c->add_option(key("material-pump"), p.material_pump, "Pump material as name/axis")
            ->required();
        c->add_option(key("material-out"), p.material_out, "Output material as name/axis")
            ->required();
        c->add_option(key("length-mm"), p.length_mm, "Interaction length, mm")
            ->capture_default_str();
        c->add_option(key("temperature"), p.temperature, "Temperature, Celsius")
            ->capture_default_str();
        c->add_option(key("lambda-in"), p.lambda_in, "Input centre wavelength, nm")
            ->capture_default_str();
        c->add_option(key("lambda-pump"), p.lambda_pump, "Pump centre wavelength, nm")
            ->capture_default_str();
        c->add_option(key("qpm-order"), p.qpm_order, "Grating order (odd)")
            ->capture_default_str();
    };
    add_pm(cp, pm, "");
    cp->add_option("--in-span-nm", pm.in_span_nm, "Input axis span, nm")
        ->capture_default_str();
    cp->add_option("--pump-span-nm", pm.pump_span_nm, "Pump axis span, nm")
        ->capture_default_str();
    cp->add_option("--n", pm.n, "Points per axis")->capture_default_str();

    JsaArgs js;
    auto* cj = app.add_subcommand("jsa", "Parametric down-conversion joint spectral"
                                         " amplitude, marginals and Schmidt table");
    auto add_jsa = [](CLI::App* c, JsaArgs& j, const char* prefix) {
        auto key = [&](const char* k) { return std::string("--") + prefix + k; };
        c->add_option(key("material-signal"), j.material_signal,
                      "Signal material as name/axis")
            ->required();
        c->add_option(key("material-idler"), j.material_idler, "Idler material as name/axis")
            ->required();
        c->add_option(key("material-pump"), j.material_pump, "Pump material as name/axis")
            ->required();
        c->add_option(key("length-mm"), j.length_mm, "Crystal length, mm")
            ->capture_default_str();
        c->add_option(key("temperature"), j.temperature, "Temperature, Celsius")
            ->capture_default_str();
        c->add_option(key("lambda-signal"), j.lambda_signal, "Signal centre wavelength, nm")
            ->capture_default_str();
        c->add_option(key("lambda-pump"), j.lambda_pump, "Pump centre wavelength, nm")
            ->capture_default_str();
        c->add_option(key("pump-fwhm-ghz"), j.pump_fwhm_ghz, "Pump intensity FWHM, GHz")
            ->capture_default_str();
        c->add_option(key("signal-fwhm-guess-ghz"), j.signal_fwhm_guess_ghz,
                      "Expected signal FWHM used to size the grid, GHz")
            ->capture_default_str();
        c->add_option(key("span-mult"), j.span_mult, "Grid half-span in FWHM-guess units")
            ->capture_default_str();
        c->add_option(key("n"), j.n, "Points per axis")->capture_default_str();
    };
    add_jsa(cj, js, "");

    ReportArgs rp;
    auto* cr = app.add_subcommand("report", "Full chain: PDC input, conversion, compression"
                                            " factor, efficiency budget and g2 check");
    add_pm(cr, rp.pm, "");
    add_jsa(cr, rp.pdc, "pdc-");
    cr->add_option("--measured-input-fwhm-ghz", rp.measured_input_fwhm_ghz,
                   "Measured input FWHM, GHz")
        ->capture_default_str();
    cr->add_option("--measured-output-fwhm-ghz", rp.measured_output_fwhm_ghz,
                   "Measured output FWHM, GHz")
        ->capture_default_str();
    cr->add_option("--eta-open", rp.eta_open, "Klyshko transmission, converter on")
        ->capture_default_str();
    cr->add_option("--eta-blocked", rp.eta_blocked, "Klyshko transmission, pump blocked")
        ->capture_default_str();
    cr->add_option("--eta-c", rp.eta_c, "Klyshko efficiency of the converted light")
        ->capture_default_str();
    cr->add_option("--eta-u", rp.eta_u, "Klyshko efficiency of the unconverted light")
        ->capture_default_str();
    cr->add_option("--det-converted", rp.det_converted, "Detector efficiency, converted arm")
        ->capture_default_str();
    cr->add_option("--det-reference", rp.det_reference, "Detector efficiency, reference arm")
        ->capture_default_str();
    cr->add_option("--coupling-converted", rp.coupling_converted,
                   "Fibre coupling of the converted mode")
        ->capture_default_str();
    cr->add_option("--coupling-reference", rp.coupling_reference,
                   "Fibre coupling of the reference mode")
        ->capture_default_str();
    cr->add_option("--g2-mean-photons", rp.g2_mean_photons, "Mean pair number per pulse")
        ->capture_default_str();
    cr->add_option("--g2-schmidt-modes", rp.g2_schmidt_modes, "Thermal mode count")
        ->capture_default_str();
    cr->add_option("--g2-herald-efficiency", rp.g2_herald_efficiency, "Herald efficiency")
        ->capture_default_str();
    cr->add_option("--g2-transmission-before", rp.g2_transmission_before,
                   "Signal-arm transmission before conversion")
        ->capture_default_str();
    cr->add_option("--g2-conversion-efficiency", rp.g2_conversion_efficiency,
                   "Thinning applied by the converter")
        ->capture_default_str();
    cr->add_option("--g2-transmission-after", rp.g2_transmission_after,
                   "Signal-arm transmission after conversion")
        ->capture_default_str();
    cr->add_option("--mc-trials-per-block", rp.mc_trials_per_block,
                   "Monte Carlo trials per block (256 blocks)")
        ->capture_default_str();
    cr->add_option("--mc-threads", rp.mc_threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    cr->add_option("--seed", rp.seed, "Monte Carlo master seed")->capture_default_str();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    OutputSet out;
    out.dir = output_dir;
    try {
        if (cg->parsed()) run_gvm_map(gv, out);
        if (cp->parsed()) run_phasematching(pm, out);
        if (cj->parsed()) run_jsa(js, out);
        if (cr->parsed()) run_report(rp, out);
    } catch (const qpg::config_error& e) {
        out.discard_all();
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const qpg::parse_error& e) {
        out.discard_all();
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        out.discard_all();
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
