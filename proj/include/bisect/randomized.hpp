/*
 * Randomized D-secting constructions.
 *
 * chernoff_family: draw t fair-coin subsets; accept when every member A of
 * the input family has a draw within imbalance sqrt(3|A| ln(2m) / t).  On
 * rejection restart with the next derived stream key.  For t at most
 * (1/2)log2(m) a single draw fails with probability at most 1/(2 sqrt 2),
 * so a couple of iterations is the norm.
 *
 * lll_bisecting: Moser-Tardos resampling over t*n fair bits, t chosen as
 * ceil(sqrt(k)/0.67 * (ln(d+1)+1)) from the family's dependency d.  The bad
 * event for member A is "no draw bisects A" (imbalance 0 for even |A|, +-1
 * for odd); while one holds, the first violated member's element bits are
 * redrawn across all t candidates.
 *
 * lll_uniform_half_bisecting: same loop, but the draws are uniform subsets
 * of cardinality exactly n/2, the implicit family is all k-subsets of [n],
 * and a resample redraws every candidate meeting the violated set.
 *
 * All randomness flows through the counter RNG in rng.hpp: identical seeds
 * and parameters reproduce runs bit for bit.
 */
#ifndef BISECT_RANDOMIZED_HPP
#define BISECT_RANDOMIZED_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bisect/core.hpp"
#include "bisect/mask.hpp"
#include "bisect/rng.hpp"

namespace bisect {

struct DependencyStat {
    int d;                        // max over members
    std::vector<int> per_member;  // count of other members sharing a point
};

template <typename Block>
DependencyStat dependency(const BasicFamily<Block>& f) {
    std::size_t m = f.members.size();
    DependencyStat stat{0, std::vector<int>(m, 0)};
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (f.members[a].intersection_size(f.members[b]) >= 1) {
                ++stat.per_member[a];
                ++stat.per_member[b];
            }
    for (int c : stat.per_member) stat.d = std::max(stat.d, c);
    return stat;
}

// --- closed forms shared with the bounds report -----------------------------

inline double chernoff_threshold(int n, std::size_t m, int t) {
    if (m < 1 || t < 1) throw contract_error("chernoff_threshold needs m >= 1, t >= 1");
    return std::sqrt(3.0 * n * std::log(2.0 * static_cast<double>(m)) / t);
}

// Theorem hypothesis for the expected-two-iterations claim.
inline bool chernoff_t_in_range(std::size_t m, int t) {
    return m >= 1 && t <= 0.5 * std::log2(static_cast<double>(m));
}

inline int lll_size(int k, long long d) {
    if (k < 1 || d < 0) throw contract_error("lll_size needs k >= 1, d >= 0");
    return static_cast<int>(
        std::ceil(std::sqrt(static_cast<double>(k)) / 0.67 *
                  (std::log(static_cast<double>(d) + 1.0) + 1.0)));
}

inline int lll_uniform_half_size(int n, int k, long long d) {
    if (n < 2 || k < 1 || k > n || d < 0) throw contract_error("bad lll_uniform_half_size args");
    return static_cast<int>(
        std::ceil(1.0 / 0.53 *
                  std::sqrt(static_cast<double>(k) * (n - k) / n) *
                  (std::log(static_cast<double>(d) + 1.0) + 1.0)));
}

// Probability that one fair-coin draw bisects a fixed k-set: the central
// binomial term for even k, the central two for odd k.
inline double bisect_probability(int k) {
    if (k < 1) throw contract_error("bisect_probability needs k >= 1");
    double logp;
    if (k % 2 == 0) {
        logp = std::lgamma(k + 1.0) - 2.0 * std::lgamma(k / 2 + 1.0) - k * std::log(2.0);
    } else {
        logp = std::lgamma(k + 1.0) - std::lgamma((k - 1) / 2 + 1.0) -
               std::lgamma((k + 1) / 2 + 1.0) - (k - 1) * std::log(2.0);
    }
    return std::exp(logp);
}

// The symmetric local-lemma condition e * Pr[bad event] * (d+1) <= 1 for the
// fair-coin scheme with t draws.
inline bool lll_condition_holds(int k, int t, long long d) {
    double bad = std::pow(1.0 - bisect_probability(k), t);
    return std::exp(1.0) * bad * (static_cast<double>(d) + 1.0) <= 1.0;
}

// --- runs -------------------------------------------------------------------

template <typename Block = std::uint64_t>
struct BasicRandomRun {
    std::uint64_t seed;
    int t;
    std::uint64_t iterations;  // full restart attempts (chernoff), 1 otherwise
    std::uint64_t resamples;   // Moser-Tardos resampling steps, 0 for chernoff
    BasicFamily<Block> family;
    bool verified;
};

using RandomRun = BasicRandomRun<std::uint64_t>;

inline constexpr std::uint64_t default_restart_budget = 64;

template <typename Block>
BasicRandomRun<Block> chernoff_family(const BasicFamily<Block>& f, int t, std::uint64_t seed,
                                      std::uint64_t restarts = default_restart_budget) {
    if (t < 1) throw contract_error("chernoff_family needs t >= 1");
    int n = f.ground.n;
    std::size_t m = f.members.size();
    std::vector<double> threshold(m);
    for (std::size_t a = 0; a < m; ++a)
        threshold[a] = std::sqrt(3.0 * f.members[a].cardinality() *
                                 std::log(2.0 * static_cast<double>(m)) / t);
    std::optional<std::size_t> last_bad;
    for (std::uint64_t it = 1; it <= restarts; ++it) {
        RngStream stream(rng::child(seed, it));
        BasicFamily<Block> draw((GroundSet(n)));
        for (int j = 0; j < t; ++j) draw.push_back(stream.template random_subset<Block>(n));
        bool ok = true;
        for (std::size_t a = 0; a < m && ok; ++a) {
            bool hit = false;
            for (const auto& b : draw.members)
                if (std::abs(imbalance(f.members[a], b)) <= threshold[a]) {
                    hit = true;
                    break;
                }
            if (!hit) {
                ok = false;
                last_bad = a;
            }
        }
        if (ok) return {seed, t, it, 0, std::move(draw), true};
    }
    std::string which = last_bad ? " (last uncovered member index " + std::to_string(*last_bad) + ")"
                                 : "";
    throw resource_error("chernoff_family: no acceptance within " + std::to_string(restarts) +
                         " restarts" + which);
}

namespace detail {

template <typename Block>
std::optional<std::size_t> first_violated(const BasicFamily<Block>& f,
                                          const std::vector<BasicSubsetMask<Block>>& draws,
                                          DSpec d) {
    for (std::size_t a = 0; a < f.members.size(); ++a) {
        bool hit = false;
        for (const auto& b : draws)
            if (dsects(f.members[a], b, d)) {
                hit = true;
                break;
            }
        if (!hit) return a;
    }
    return std::nullopt;
}

}  // namespace detail

template <typename Block>
BasicRandomRun<Block> lll_bisecting(const BasicFamily<Block>& f, std::uint64_t seed,
                                    std::optional<int> t_override = std::nullopt,
                                    std::uint64_t resample_budget = 0) {
    std::size_t m = f.members.size();
    if (m == 0) throw contract_error("lll_bisecting needs a nonempty family");
    int k = f.members[0].cardinality();
    if (k < 1) throw contract_error("lll_bisecting needs member cardinality >= 1");
    for (const auto& a : f.members)
        if (a.cardinality() != k)
            throw contract_error("lll_bisecting needs a k-uniform family");
    int n = f.ground.n;
    DependencyStat dep = dependency(f);
    int t = t_override ? *t_override : lll_size(k, dep.d);
    if (t < 1) throw contract_error("t must be >= 1");
    if (resample_budget == 0) resample_budget = 1000 * static_cast<std::uint64_t>(m);
    DSpec target = (k % 2 == 0) ? DSpec::singleton(0) : DSpec::interval(1);

    RngStream stream(rng::child(seed, 1));
    std::vector<BasicSubsetMask<Block>> draws;
    draws.reserve(static_cast<std::size_t>(t));
    for (int j = 0; j < t; ++j) draws.push_back(stream.template random_subset<Block>(n));

    std::uint64_t resamples = 0;
    while (auto bad = detail::first_violated(f, draws, target)) {
        if (++resamples > resample_budget)
            throw resource_error(
                "lll_bisecting: resample budget " + std::to_string(resample_budget) +
                " exhausted; the local-lemma condition e*p*(d+1) <= 1 likely fails here (k=" +
                std::to_string(k) + ", t=" + std::to_string(t) + ", d=" + std::to_string(dep.d) +
                ")");
        auto elems = f.members[*bad].elements();
        for (auto& b : draws)
            for (int e : elems) {
                if (stream.next_bit())
                    b.add(e);
                else
                    b.remove(e);
            }
    }

    BasicFamily<Block> fam((GroundSet(n)));
    fam.members = draws;
    bool verified = verify_dsecting(f, fam, target).ok;
    return {seed, t, 1, resamples, std::move(fam), verified};
}

template <typename Block = std::uint64_t>
BasicRandomRun<Block> lll_uniform_half_bisecting(int n, int k, std::uint64_t seed,
                                                 std::optional<int> t_override = std::nullopt,
                                                 std::uint64_t resample_budget = 0,
                                                 std::uint64_t enum_budget = default_enum_budget()) {
    if (n < 2 || n % 2 != 0) throw contract_error("n must be even and >= 2");
    if (k < 2 || k % 2 != 0 || k > n) throw contract_error("k must be even with 2 <= k <= n");
    BasicFamily<Block> f = generate_family<Block>(n, FamilyKind::all_k(k), enum_budget);
    std::size_t m = f.members.size();
    // All k-sets meet A except those inside the complement, and A itself.
    auto binom = detail::binomial_row(n);
    auto binom_rest = detail::binomial_row(n - k);
    std::uint64_t total = binom[static_cast<std::size_t>(k)];
    std::uint64_t disjoint = k <= n - k ? binom_rest[static_cast<std::size_t>(k)] : 0;
    long long d = static_cast<long long>(std::min<std::uint64_t>(
        total - disjoint - 1, static_cast<std::uint64_t>(std::numeric_limits<long long>::max())));
    int t = t_override ? *t_override : lll_uniform_half_size(n, k, d);
    if (t < 1) throw contract_error("t must be >= 1");
    if (resample_budget == 0) resample_budget = 1000 * static_cast<std::uint64_t>(m);

    RngStream stream(rng::child(seed, 1));
    std::vector<BasicSubsetMask<Block>> draws;
    draws.reserve(static_cast<std::size_t>(t));
    for (int j = 0; j < t; ++j) draws.push_back(stream.template random_exact_subset<Block>(n, n / 2));

    DSpec target = DSpec::singleton(0);
    std::uint64_t resamples = 0;
    while (auto bad = detail::first_violated(f, draws, target)) {
        if (++resamples > resample_budget)
            throw resource_error("lll_uniform_half_bisecting: resample budget " +
                                 std::to_string(resample_budget) + " exhausted (n=" +
                                 std::to_string(n) + ", k=" + std::to_string(k) + ", t=" +
                                 std::to_string(t) + ")");
        const auto& a = f.members[*bad];
        bool touched = false;
        for (auto& b : draws)
            if (a.intersection_size(b) >= 1) {
                b = stream.template random_exact_subset<Block>(n, n / 2);
                touched = true;
            }
        // A draw family entirely disjoint from the violated set gives the
        // event nothing to resample; redraw everything rather than spin.
        if (!touched)
            for (auto& b : draws) b = stream.template random_exact_subset<Block>(n, n / 2);
    }

    BasicFamily<Block> fam((GroundSet(n)));
    fam.members = draws;
    bool verified = verify_dsecting(f, fam, target).ok;
    return {seed, t, 1, resamples, std::move(fam), verified};
}

}  // namespace bisect

#endif
