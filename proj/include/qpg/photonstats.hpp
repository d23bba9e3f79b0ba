#pragma once
#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qpg/efficiency.hpp"
#include "qpg/errors.hpp"

namespace qpg {

/// Lossy two-mode squeezed vacuum source: herald and signal arm share a
/// per-mode pair number drawn from a thermal distribution with mean
/// mean_photon_pairs / schmidt_modes.  Per-mode sums are truncated at
/// `truncation` pairs; the constructor rejects truncations whose geometric
/// tail mass reaches 1e-8.
struct SourceModel {
    double mean_photon_pairs;
    int schmidt_modes;
    int truncation;

    SourceModel(double mu, int modes = 1, int n_max = 10)
        : mean_photon_pairs(mu), schmidt_modes(modes), truncation(n_max) {
        if (!(mu >= 0)) throw error("mean pair number must be >= 0");
        if (modes < 1) throw error("at least one Schmidt mode required");
        if (n_max < 1) throw error("truncation must be >= 1");
        if (std::pow(thermal_ratio(), truncation + 1) >= 1e-8)
            throw truncation_insufficient("thermal tail mass reaches 1e-8 at truncation " +
                                          std::to_string(truncation));
    }

    double mode_mean() const { return mean_photon_pairs / schmidt_modes; }
    double thermal_ratio() const {
        const double m = mode_mean();
        return m / (1.0 + m);
    }
    /// Per-mode thermal probability of n pairs.
    double pn(int n) const { return std::pow(thermal_ratio(), n) / (1.0 + mode_mean()); }

    // truncated per-mode generating sums: sum_n pn(n) x^n weighted by
    // 1, n and n(n-1) respectively
    double f0(double x) const {
        double s = 0;
        for (int n = 0; n <= truncation; ++n) s += pn(n) * std::pow(x, n);
        return s;
    }
    double f1(double x) const {
        double s = 0;
        for (int n = 1; n <= truncation; ++n) s += pn(n) * n * std::pow(x, n);
        return s;
    }
    double f2(double x) const {
        double s = 0;
        for (int n = 2; n <= truncation; ++n)
            s += pn(n) * double(n) * double(n - 1) * std::pow(x, n);
        return s;
    }
};

/// Detection chain: threshold herald on the idler arm; the signal arm passes
/// three sequential thinning stages (transport before the converter, the
/// converter itself, transport after it) and a balanced splitter feeding two
/// threshold detectors.
struct ChannelModel {
    double herald_transmission;
    double signal_transmission_before;
    double conversion_efficiency;
    double signal_transmission_after;

    ChannelModel(double herald, double before, double conversion = 1.0, double after = 1.0)
        : herald_transmission(herald), signal_transmission_before(before),
          conversion_efficiency(conversion), signal_transmission_after(after) {
        for (double v : {herald, before, conversion, after})
            if (!(v >= 0 && v <= 1)) throw error("channel transmissions must lie in [0, 1]");
    }

    /// Sequential thinnings compose multiplicatively (exactly).
    double total_signal_transmission() const {
        return signal_transmission_before * conversion_efficiency * signal_transmission_after;
    }
    ChannelModel with_conversion(double eta) const {
        return ChannelModel(herald_transmission, signal_transmission_before, eta,
                            signal_transmission_after);
    }
};

/// Probabilities of the eight click patterns; bit 0 = herald, bit 1 = arm 1,
/// bit 2 = arm 2.
struct OutcomeDistribution {
    std::array<double, 8> p{};
    double sum() const {
        double s = 0;
        for (double v : p) s += v;
        return s;
    }
};

enum class stats_method { fock_exact, monte_carlo };

struct G2Estimate {
    double value = 0;
    double stderror = 0; // zero for the exact method
};

namespace detail {

// probability that no detector in subset S (same bit layout) clicks
inline double no_click_probability(const SourceModel& src, const ChannelModel& ch, unsigned s) {
    const double eh = (s & 1u) ? ch.herald_transmission : 0.0;
    const int arms = int((s >> 1) & 1u) + int((s >> 2) & 1u);
    const double x = (1.0 - eh) * (1.0 - 0.5 * ch.total_signal_transmission() * arms);
    return std::pow(src.f0(x), src.schmidt_modes);
}

} // namespace detail

/// Exact joint distribution of the three threshold detectors.
inline OutcomeDistribution fock_outcome_distribution(const SourceModel& src,
                                                     const ChannelModel& ch) {
    std::array<double, 8> q{};
    for (unsigned s = 0; s < 8; ++s) q[s] = detail::no_click_probability(src, ch, s);
    OutcomeDistribution out;
    // P(exactly the detectors in w click): inclusion-exclusion over subsets
    // of the clicking set, with all non-clicking detectors held silent
    for (unsigned w = 0; w < 8; ++w) {
        const unsigned rest = 7u & ~w;
        double p = 0;
        for (unsigned s = w;; s = (s - 1) & w) {
            p += (std::popcount(s) % 2 ? -1.0 : 1.0) * q[s | rest];
            if (s == 0) break;
        }
        out.p[w] = p;
    }
    return out;
}

/// Exact click statistics in the CountStatistics layout (P_1, P_2 conditioned
/// on the herald; trials = 0 marks an analytic record).
inline CountStatistics fock_click_statistics(const SourceModel& src, const ChannelModel& ch) {
    auto q = [&](unsigned s) { return detail::no_click_probability(src, ch, s); };
    CountStatistics st;
    st.trials = 0;
    st.P_h = 1.0 - q(1);
    if (!(st.P_h > 0)) throw division_by_zero("herald never clicks for this source");
    st.P_cc = st.P_h - (q(6) - q(7)); // subtract P(H clicks, neither arm does)
    st.P_1 = (st.P_h - (q(2) - q(3))) / st.P_h;
    st.P_2 = (st.P_h - (q(4) - q(5))) / st.P_h;
    st.P_cc12 = 1.0 - q(1) - q(2) - q(4) + q(3) + q(5) + q(6) - q(7);
    return st;
}

/// Threshold-detector heralded autocorrelation,
/// g2 = P(1 and 2 | H) / (P(1 | H) * P(2 | H)).
inline double heralded_g2_click(const CountStatistics& st) {
    if (!(st.P_h > 0) || !(st.P_1 > 0) || !(st.P_2 > 0))
        throw division_by_zero("heralded_g2_click: zero click probability");
    return (st.P_cc12 / st.P_h) / (st.P_1 * st.P_2);
}

inline double heralded_g2_click(const SourceModel& src, const ChannelModel& ch) {
    return heralded_g2_click(fock_click_statistics(src, ch));
}

/// Factorial-moment heralded autocorrelation
/// g2 = <N(N-1) | H> / <N | H>^2 over the total signal-arm photon number.
/// Binomial thinning scales <N> by t and <N(N-1)> by t^2, so this estimator
/// is exactly independent of the signal transmission; the click estimator
/// above shares that property only in the low-brightness limit.
inline double heralded_g2_moment(const SourceModel& src, const ChannelModel& ch) {
    const double w = 1.0 - ch.herald_transmission;
    const double t = ch.total_signal_transmission();
    const int M = src.schmidt_modes;
    const double p_h = 1.0 - std::pow(src.f0(w), M);
    if (!(p_h > 0)) throw division_by_zero("heralded_g2_moment: herald never clicks");

    // E[X * 1{no herald click}] for X in {N, N(N-1)}, subtracted from the
    // unconditioned moments to condition on a herald click
    auto moments = [&](double y) {
        const double g0 = src.f0(y), g1 = t * src.f1(y), g2 = t * t * src.f2(y);
        const double e1 = M * g1 * std::pow(g0, M - 1);
        const double e2 = M * g2 * std::pow(g0, M - 1) +
                          double(M) * (M - 1) * g1 * g1 * std::pow(g0, std::max(M - 2, 0));
        return std::pair{e1, e2};
    };
    const auto [e1_all, e2_all] = moments(1.0);
    const auto [e1_no, e2_no] = moments(w);
    const double m1 = (e1_all - e1_no) / p_h;
    const double m2 = (e2_all - e2_no) / p_h;
    if (!(m1 > 0)) throw division_by_zero("heralded_g2_moment: zero conditional mean");
    return m2 / (m1 * m1);
}

// ------------------------------------------------------------- Monte Carlo

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct BlockCounts {
    std::uint64_t trials = 0, heralds = 0, cc = 0, a1 = 0, a2 = 0, cc12 = 0;
    // factorial moments of the signal-arm photon number (unconditioned)
    double n1 = 0, n2 = 0;
};

inline BlockCounts run_block(const SourceModel& src, const ChannelModel& ch,
                             std::uint64_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double r = src.thermal_ratio();
    const double log_r = r > 0 ? std::log(r) : 0.0;
    const double t = ch.total_signal_transmission();
    BlockCounts c;
    c.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        long n = 0; // total pair number across modes, inverse-CDF thermal
        if (r > 0)
            for (int m = 0; m < src.schmidt_modes; ++m)
                n += long(std::log(1.0 - uni(rng)) / log_r);
        bool herald = false;
        long k1 = 0, k2 = 0;
        for (long j = 0; j < n; ++j) {
            if (uni(rng) < ch.herald_transmission) herald = true;
            const double u = uni(rng);
            if (u < 0.5 * t)
                ++k1;
            else if (u < t)
                ++k2;
        }
        const long k = k1 + k2;
        c.n1 += double(k);
        c.n2 += double(k) * double(k - 1);
        if (!herald) continue;
        ++c.heralds;
        if (k1 > 0) ++c.a1;
        if (k2 > 0) ++c.a2;
        if (k1 > 0 || k2 > 0) ++c.cc;
        if (k1 > 0 && k2 > 0) ++c.cc12;
    }
    return c;
}

inline std::vector<BlockCounts> run_blocks(const SourceModel& src, const ChannelModel& ch,
                                           std::uint64_t trials_per_block, std::uint64_t seed,
                                           int blocks, int threads) {
    std::vector<std::uint64_t> seeds(blocks);
    std::uint64_t state = seed;
    for (auto& s : seeds) s = splitmix64(state);
    std::vector<BlockCounts> counts(blocks);
    if (threads <= 0) threads = int(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, blocks));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int b; (b = next.fetch_add(1)) < blocks;)
                counts[b] = run_block(src, ch, trials_per_block, seeds[b]);
        });
    for (auto& th : pool) th.join();
    return counts;
}

inline BlockCounts total_of(const std::vector<BlockCounts>& counts) {
    BlockCounts tot;
    for (auto& c : counts) {
        tot.trials += c.trials;
        tot.heralds += c.heralds;
        tot.cc += c.cc;
        tot.a1 += c.a1;
        tot.a2 += c.a2;
        tot.cc12 += c.cc12;
        tot.n1 += c.n1;
        tot.n2 += c.n2;
    }
    return tot;
}

inline CountStatistics stats_of(const BlockCounts& c) {
    CountStatistics s;
    s.trials = double(c.trials);
    s.P_h = double(c.heralds) / double(c.trials);
    s.P_cc = double(c.cc) / double(c.trials);
    s.P_1 = c.heralds ? double(c.a1) / double(c.heralds) : 0.0;
    s.P_2 = c.heralds ? double(c.a2) / double(c.heralds) : 0.0;
    s.P_cc12 = double(c.cc12) / double(c.trials);
    return s;
}

// leave-one-block-out jackknife standard error of a statistic over blocks
template <class F>
double jackknife_stderr(const std::vector<BlockCounts>& counts, const BlockCounts& tot,
                        double full_value, F&& statistic) {
    const int blocks = int(counts.size());
    std::vector<double> loo(blocks);
    for (int b = 0; b < blocks; ++b) {
        BlockCounts d = tot;
        d.trials -= counts[b].trials;
        d.heralds -= counts[b].heralds;
        d.cc -= counts[b].cc;
        d.a1 -= counts[b].a1;
        d.a2 -= counts[b].a2;
        d.cc12 -= counts[b].cc12;
        d.n1 -= counts[b].n1;
        d.n2 -= counts[b].n2;
        try {
            loo[b] = statistic(d);
        } catch (const error&) {
            loo[b] = full_value; // degenerate leave-one-out sample
        }
    }
    double mean = 0;
    for (double v : loo) mean += v;
    mean /= blocks;
    double var = 0;
    for (double v : loo) var += (v - mean) * (v - mean);
    return std::sqrt(var * double(blocks - 1) / double(blocks));
}

} // namespace detail

inline constexpr int monte_carlo_blocks = 256;

/// Monte Carlo click statistics with jackknife standard errors.  Block seeds
/// derive from `seed` via splitmix64, so results are identical for any
/// thread count.
struct MonteCarloResult {
    CountStatistics stats;
    G2Estimate g2;
    Estimate eta_klyshko;
    std::uint64_t herald_samples = 0;
};

inline MonteCarloResult monte_carlo_click_statistics(const SourceModel& src,
                                                     const ChannelModel& ch,
                                                     std::uint64_t trials_per_block,
                                                     std::uint64_t seed, int threads = 0) {
    if (trials_per_block == 0) throw error("monte carlo needs trials_per_block > 0");
    const auto counts =
        detail::run_blocks(src, ch, trials_per_block, seed, monte_carlo_blocks, threads);
    const auto tot = detail::total_of(counts);
    if (tot.heralds < 100)
        throw monte_carlo_underflow("only " + std::to_string(tot.heralds) +
                                    " herald samples; need at least 100");
    MonteCarloResult res;
    res.stats = detail::stats_of(tot);
    res.herald_samples = tot.heralds;
    res.g2.value = heralded_g2_click(res.stats);
    res.g2.stderror = detail::jackknife_stderr(
        counts, tot, res.g2.value,
        [](const detail::BlockCounts& d) { return heralded_g2_click(detail::stats_of(d)); });
    res.eta_klyshko = klyshko(res.stats);
    return res;
}

/// Unheralded factorial-moment g2 of the signal arm, <N(N-1)>/<N>^2,
/// estimated by the same blocked Monte Carlo (thermal light gives 2).
inline G2Estimate monte_carlo_unheralded_g2(const SourceModel& src, const ChannelModel& ch,
                                            std::uint64_t trials_per_block, std::uint64_t seed,
                                            int threads = 0) {
    const auto counts =
        detail::run_blocks(src, ch, trials_per_block, seed, monte_carlo_blocks, threads);
    const auto tot = detail::total_of(counts);
    auto stat = [](const detail::BlockCounts& d) {
        const double m1 = d.n1 / double(d.trials);
        if (!(m1 > 0)) throw division_by_zero("unheralded g2: zero mean photon number");
        return (d.n2 / double(d.trials)) / (m1 * m1);
    };
    G2Estimate g;
    g.value = stat(tot);
    g.stderror = detail::jackknife_stderr(counts, tot, g.value, stat);
    return g;
}

/// Heralded g2 by either engine (exact enumeration or seeded Monte Carlo).
inline G2Estimate heralded_g2(const SourceModel& src, const ChannelModel& ch,
                              stats_method method, std::uint64_t trials_per_block = 4096,
                              std::uint64_t seed = 1, int threads = 0) {
    if (method == stats_method::fock_exact) return {heralded_g2_click(src, ch), 0.0};
    return monte_carlo_click_statistics(src, ch, trials_per_block, seed, threads).g2;
}

/// Full probability record by either engine; feeds the efficiency module
/// with synthetic data.
inline CountStatistics click_probabilities(const SourceModel& src, const ChannelModel& ch,
                                           stats_method method,
                                           std::uint64_t trials_per_block = 4096,
                                           std::uint64_t seed = 1, int threads = 0) {
    if (method == stats_method::fock_exact) return fock_click_statistics(src, ch);
    return monte_carlo_click_statistics(src, ch, trials_per_block, seed, threads).stats;
}

/// Sweeps the conversion efficiency and reports the spread of both g2
/// estimators.  The moment estimator is exactly invariant; the click
/// estimator drifts at the 1e-3 level through threshold-detector saturation.
struct G2InvarianceReport {
    std::vector<double> conversion_etas;
    std::vector<double> g2_click;
    std::vector<double> g2_moment;
    double click_spread = 0;
    double moment_spread = 0;
};

inline G2InvarianceReport g2_conversion_invariance(const SourceModel& src,
                                                   const ChannelModel& channel,
                                                   const std::vector<double>& conversion_etas) {
    if (conversion_etas.empty()) throw error("g2_conversion_invariance: empty sweep");
    G2InvarianceReport r;
    r.conversion_etas = conversion_etas;
    for (double eta : conversion_etas) {
        if (!(eta > 0 && eta <= 1))
            throw error("conversion efficiencies must lie in (0, 1]");
        const auto ch = channel.with_conversion(eta);
        r.g2_click.push_back(heralded_g2_click(src, ch));
        r.g2_moment.push_back(heralded_g2_moment(src, ch));
    }
    auto spread = [](const std::vector<double>& v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    r.click_spread = spread(r.g2_click);
    r.moment_spread = spread(r.g2_moment);
    return r;
}

} // namespace qpg
