/*
 * Exact minimum D-secting families via branch-and-bound set cover.
 *
 * beta_D(F) is a minimum set cover: candidate subsets B of [n] cover the
 * members of F they D-sect.  The candidate pool is every subset of [n],
 * packed into one machine word each (the solver budget keeps n <= 24).
 * When D is closed under negation, complementing B negates all imbalances,
 * so only one candidate per complement pair is kept: the empty set plus
 * every subset containing element 1.
 *
 * The search is iterative deepening on the cover size, branching on the
 * uncovered member with the fewest covering candidates, candidates tried in
 * ascending mask order, pruned by ceil(uncovered / best-cover-size).  A
 * completed depth certifies that no cover of that size exists, which is the
 * optimality proof.
 *
 * Families made of complete cardinality levels (all k-subsets, all odd
 * subsets, ...) are invariant under every permutation of the ground set, so
 * candidates that agree up to a permutation fixing all earlier choices give
 * isomorphic subproblems.  For such families the search runs over orbit
 * representatives instead: it keeps an ordered partition of [n] into cells
 * (refined by each chosen set), and tries one candidate per intersection
 * pattern, the union of per-cell prefixes.  This collapses the branching
 * factor from 2^n to a product of cell sizes and is what makes the
 * singleton-D optima provable at n around 10.
 */
#ifndef BISECT_SOLVER_HPP
#define BISECT_SOLVER_HPP

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "bisect/core.hpp"
#include "bisect/mask.hpp"

namespace bisect {

inline int default_solve_max_n() {
    if (const char* env = std::getenv("BISECT_SOLVE_MAX_N")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 32) return static_cast<int>(v);
    }
    return 24;
}

struct CoverageMatrix {
    int n = 0;
    DSpec d = DSpec::interval(0);
    bool canonical = false;          // one candidate per complement pair
    std::size_t member_count = 0;
    std::size_t row_words = 0;       // words per packed coverage row
    std::vector<std::uint64_t> candidate_words;
    std::vector<std::uint64_t> cover_bits;  // candidate c -> [c*row_words, ...)

    SubsetMask candidate(std::size_t c) const {
        return SubsetMask::from_bits(n, candidate_words[c]);
    }
    bool covers(std::size_t c, std::size_t member) const {
        return (cover_bits[c * row_words + member / 64] >> (member % 64)) & 1u;
    }
};

inline CoverageMatrix coverage_matrix(const Family& f, DSpec d,
                                      int max_n = default_solve_max_n()) {
    int n = f.ground.n;
    if (n > max_n) {
        std::size_t cands = (std::size_t{1} << std::min(n, 62)) + 1;
        std::size_t words = (f.members.size() + 63) / 64;
        throw resource_error("coverage matrix for n=" + std::to_string(n) + " needs about " +
                             std::to_string(cands * (words + 1) * 8) + " bytes; raise " +
                             "BISECT_SOLVE_MAX_N (currently " + std::to_string(max_n) +
                             ") to allow it");
    }
    CoverageMatrix mx;
    mx.n = n;
    mx.d = d;
    mx.canonical = d.symmetric();
    mx.member_count = f.members.size();
    mx.row_words = (f.members.size() + 63) / 64;

    if (mx.canonical) {
        // Ascending mask order: the empty set, then every mask with bit 0 set.
        mx.candidate_words.reserve((std::size_t{1} << (n - 1)) + 1);
        mx.candidate_words.push_back(0);
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << (n - 1)); ++w)
            mx.candidate_words.push_back((w << 1) | 1u);
    } else {
        mx.candidate_words.reserve(std::size_t{1} << n);
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w)
            mx.candidate_words.push_back(w);
    }

    std::vector<std::uint64_t> member_words(f.members.size());
    std::vector<int> member_card(f.members.size());
    for (std::size_t a = 0; a < f.members.size(); ++a) {
        std::uint64_t w = 0;
        for (int e : f.members[a].elements()) w |= std::uint64_t{1} << (e - 1);
        member_words[a] = w;
        member_card[a] = f.members[a].cardinality();
    }

    mx.cover_bits.assign(mx.candidate_words.size() * mx.row_words, 0);
    for (std::size_t c = 0; c < mx.candidate_words.size(); ++c) {
        std::uint64_t cand = mx.candidate_words[c];
        std::uint64_t* row = &mx.cover_bits[c * mx.row_words];
        for (std::size_t a = 0; a < member_words.size(); ++a) {
            int imb = 2 * std::popcount(member_words[a] & cand) - member_card[a];
            if (d.contains(imb)) row[a / 64] |= std::uint64_t{1} << (a % 64);
        }
    }
    return mx;
}

struct SolveLimits {
    std::uint64_t node_limit = 0;  // 0 = unlimited
    double time_limit_s = 0;       // 0 = unlimited
};

struct SolveOptions {
    bool complement_reduction = true;      // ignored for asymmetric D (always off there)
    bool symmetry_reduction = true;        // orbit search for cardinality-complete families
    std::size_t dominance_cap = 4096;      // skip dominance pruning above this many candidates
    int max_n = default_solve_max_n();
};

struct BetaResult {
    int value = 0;
    Family witness{GroundSet(1)};
    std::uint64_t nodes = 0;
    bool proven_optimal = true;
};

namespace detail {

// True when membership depends only on cardinality: the family is a union of
// complete levels {all c-subsets}.  Duplicated members disqualify (counts
// would lie), as do ground sets too large for exact binomial counts.
inline bool level_complete(const Family& f) {
    int n = f.ground.n;
    if (f.members.empty() || n > 62) return false;
    std::vector<std::uint64_t> words;
    words.reserve(f.members.size());
    for (const auto& a : f.members) {
        std::uint64_t w = 0;
        for (int e : a.elements()) w |= std::uint64_t{1} << (e - 1);
        words.push_back(w);
    }
    std::sort(words.begin(), words.end());
    if (std::adjacent_find(words.begin(), words.end()) != words.end()) return false;
    std::vector<std::uint64_t> have(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint64_t w : words) ++have[static_cast<std::size_t>(std::popcount(w))];
    auto binom = binomial_row(n);
    for (std::size_t c = 0; c <= static_cast<std::size_t>(n); ++c)
        if (have[c] != 0 && have[c] != binom[c]) return false;
    return true;
}

// Branch-and-bound over orbit representatives for permutation-invariant
// families.  A node carries an ordered partition of [n] into cells; every
// candidate tried is a union of per-cell prefixes (lowest elements first),
// one per intersection pattern.  Choosing a candidate splits each cell into
// the part inside and the part outside, so later representatives stay
// prefix-shaped relative to all earlier choices; permutations respecting the
// cells fix the family, the chosen sets, and hence the uncovered set, which
// is what makes one representative per pattern exhaustive.
struct OrbitSearch {
    int n = 0;
    DSpec d = DSpec::interval(0);
    std::size_t m = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> member_words;
    std::vector<int> member_card;
    int max_cover = 1;
    std::size_t rep_cap = std::size_t{1} << 22;
    std::uint64_t nodes = 0;
    std::uint64_t node_limit = 0;
    std::chrono::steady_clock::time_point deadline{};
    bool has_deadline = false;
    bool aborted = false;
    std::vector<std::uint64_t> chosen;

    bool out_of_budget() {
        if (node_limit && nodes > node_limit) return true;
        if (has_deadline && (nodes & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline)
            return true;
        return false;
    }

    bool covers(std::uint64_t r, std::size_t a) const {
        return d.contains(2 * std::popcount(member_words[a] & r) - member_card[a]);
    }

    // row = the uncovered members r covers; returns how many.
    std::size_t cover_row(std::uint64_t r, const std::vector<std::uint64_t>& unc,
                          std::vector<std::uint64_t>& row) const {
        row.assign(words, 0);
        std::size_t cnt = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = unc[w];
            while (bits) {
                std::size_t a = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                if (covers(r, a)) {
                    row[w] |= std::uint64_t{1} << (a % 64);
                    ++cnt;
                }
            }
        }
        return cnt;
    }

    // One candidate per per-cell prefix length assignment, ascending mask.
    std::vector<std::uint64_t> reps(const std::vector<std::uint64_t>& cells) const {
        std::vector<std::uint64_t> out{0};
        for (std::uint64_t cell : cells) {
            std::vector<std::uint64_t> prefixes;
            prefixes.push_back(0);
            std::uint64_t p = 0, rest = cell;
            while (rest) {
                p |= rest & (~rest + 1);
                rest &= rest - 1;
                prefixes.push_back(p);
            }
            if (out.size() * prefixes.size() > rep_cap)
                throw resource_error(
                    "orbit search width exceeds " + std::to_string(rep_cap) +
                    " representatives; rerun with symmetry reduction disabled or add limits");
            std::vector<std::uint64_t> next;
            next.reserve(out.size() * prefixes.size());
            for (std::uint64_t base : out)
                for (std::uint64_t pf : prefixes) next.push_back(base | pf);
            out = std::move(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    static std::vector<std::uint64_t> refine(const std::vector<std::uint64_t>& cells,
                                             std::uint64_t r) {
        std::vector<std::uint64_t> next;
        next.reserve(cells.size() + 4);
        for (std::uint64_t cell : cells) {
            std::uint64_t in = cell & r;
            if (in && in != cell) {
                next.push_back(in);
                next.push_back(cell & ~r);
            } else {
                next.push_back(cell);
            }
        }
        return next;
    }

    std::vector<int> profile(std::size_t a, const std::vector<std::uint64_t>& cells) const {
        std::vector<int> p;
        p.reserve(cells.size());
        for (std::uint64_t cell : cells) p.push_back(std::popcount(member_words[a] & cell));
        return p;
    }

    bool dfs(const std::vector<std::uint64_t>& unc, std::size_t remaining, int depth_left,
             const std::vector<std::uint64_t>& cells) {
        ++nodes;
        if (aborted || out_of_budget()) {
            aborted = true;
            return false;
        }
        if (remaining == 0) return true;
        if (depth_left <= 0) return false;
        if ((remaining + static_cast<std::size_t>(max_cover) - 1) /
                static_cast<std::size_t>(max_cover) >
            static_cast<std::size_t>(depth_left))
            return false;

        // Evaluate every representative once.  The best gain over the current
        // uncovered set bounds the gain of every subset (coverage counts are
        // orbit-invariant), so it yields a per-node quotient prune that is
        // much tighter than the root constant.
        struct Child {
            std::uint64_t r;
            std::size_t newly;
            std::vector<std::uint64_t> row;
            std::vector<std::uint64_t> orbit_hits;
        };
        std::vector<Child> kids;
        std::vector<std::uint64_t> row;
        std::size_t best_gain = 0;
        for (std::uint64_t r : reps(cells)) {
            std::size_t newly = cover_row(r, unc, row);
            if (newly == 0) continue;
            best_gain = std::max(best_gain, newly);
            if (depth_left == 1) {
                if (newly == remaining) {
                    chosen.push_back(r);
                    return true;
                }
                continue;
            }
            kids.push_back({r, newly, row, {}});
        }
        if (depth_left == 1) return false;
        if ((remaining + best_gain - 1) / std::max<std::size_t>(best_gain, 1) >
            static_cast<std::size_t>(depth_left))
            return false;

        // Group the uncovered members into orbits (equal profile over the
        // cells).  A subset covers members of two orbits together only if
        // some representative does, so orbits with disjoint representative
        // hit-sets need distinct cover sets: greedy packing over orbits is a
        // valid lower bound, and an orbit no representative hits is a dead
        // end outright.
        std::map<std::vector<int>, std::size_t> orbit_ids;
        std::vector<std::vector<std::uint64_t>> orbit_masks;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = unc[w];
            while (bits) {
                std::size_t a = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                auto [it, fresh] = orbit_ids.emplace(profile(a, cells), orbit_masks.size());
                if (fresh) orbit_masks.emplace_back(words, 0);
                orbit_masks[it->second][w] |= std::uint64_t{1} << (a % 64);
            }
        }
        std::size_t n_orbits = orbit_masks.size();
        std::size_t orb_words = (n_orbits + 63) / 64;
        std::vector<std::size_t> orbit_degree(n_orbits, 0);
        for (Child& kid : kids) {
            kid.orbit_hits.assign(orb_words, 0);
            for (std::size_t o = 0; o < n_orbits; ++o)
                for (std::size_t w = 0; w < words; ++w)
                    if (kid.row[w] & orbit_masks[o][w]) {
                        kid.orbit_hits[o / 64] |= std::uint64_t{1} << (o % 64);
                        ++orbit_degree[o];
                        break;
                    }
        }

        std::size_t branch_orbit = n_orbits;
        {
            std::vector<std::uint64_t> blocked(orb_words, 0);
            std::size_t packing = 0;
            for (;;) {
                std::size_t pick = n_orbits;
                for (std::size_t o = 0; o < n_orbits; ++o)
                    if (!((blocked[o / 64] >> (o % 64)) & 1u) &&
                        (pick == n_orbits || orbit_degree[o] < orbit_degree[pick]))
                        pick = o;
                if (pick == n_orbits) break;
                if (orbit_degree[pick] == 0) return false;
                if (packing == 0) branch_orbit = pick;
                ++packing;
                if (packing > static_cast<std::size_t>(depth_left)) return false;
                for (const Child& kid : kids)
                    if ((kid.orbit_hits[pick / 64] >> (pick % 64)) & 1u)
                        for (std::size_t w = 0; w < orb_words; ++w) blocked[w] |= kid.orbit_hits[w];
                blocked[pick / 64] |= std::uint64_t{1} << (pick % 64);
            }
        }

        for (const Child& kid : kids) {
            if (!((kid.orbit_hits[branch_orbit / 64] >> (branch_orbit % 64)) & 1u)) continue;
            if (remaining - kid.newly >
                best_gain * (static_cast<std::size_t>(depth_left) - 1))
                continue;
            std::vector<std::uint64_t> next(words);
            for (std::size_t w = 0; w < words; ++w) next[w] = unc[w] & ~kid.row[w];
            chosen.push_back(kid.r);
            if (dfs(next, remaining - kid.newly, depth_left - 1, refine(cells, kid.r)))
                return true;
            chosen.pop_back();
            if (aborted) return false;
        }
        return false;
    }
};

struct CoverSearch {
    std::size_t row_words;
    std::size_t member_count;
    const std::vector<std::uint64_t>* rows;         // candidate covers, packed
    const std::vector<std::vector<std::uint32_t>>* by_member;  // covering candidates
    int max_cover = 1;
    std::uint64_t nodes = 0;
    std::uint64_t node_limit = 0;
    std::chrono::steady_clock::time_point deadline{};
    bool has_deadline = false;
    bool aborted = false;
    std::vector<std::uint32_t> chosen;

    bool out_of_budget() {
        if (node_limit && nodes > node_limit) return true;
        if (has_deadline && (nodes & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline)
            return true;
        return false;
    }

    std::size_t uncovered_count(const std::vector<std::uint64_t>& unc) const {
        std::size_t c = 0;
        for (std::uint64_t w : unc) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool row_superset(std::size_t c, const std::vector<std::uint64_t>& unc) const {
        const std::uint64_t* row = rows->data() + c * row_words;
        for (std::size_t w = 0; w < row_words; ++w)
            if (unc[w] & ~row[w]) return false;
        return true;
    }

    // Uncovered member with the fewest covering candidates, family order as
    // tie-break (lower index wins on equal degree by scan order).
    std::size_t pick_member(const std::vector<std::uint64_t>& unc) const {
        std::size_t best = member_count;
        std::size_t best_deg = ~std::size_t{0};
        for (std::size_t a = 0; a < member_count; ++a)
            if ((unc[a / 64] >> (a % 64)) & 1u) {
                std::size_t deg = (*by_member)[a].size();
                if (deg < best_deg) {
                    best_deg = deg;
                    best = a;
                }
            }
        return best;
    }

    bool dfs(std::vector<std::uint64_t>& unc, int depth_left) {
        ++nodes;
        if (aborted || out_of_budget()) {
            aborted = true;
            return false;
        }
        std::size_t remaining = uncovered_count(unc);
        if (remaining == 0) return true;
        if (depth_left <= 0) return false;
        if ((remaining + static_cast<std::size_t>(max_cover) - 1) /
                static_cast<std::size_t>(max_cover) >
            static_cast<std::size_t>(depth_left))
            return false;
        std::size_t a = pick_member(unc);
        const auto& cands = (*by_member)[a];
        if (depth_left == 1) {
            for (std::uint32_t c : cands)
                if (row_superset(c, unc)) {
                    ++nodes;
                    chosen.push_back(c);
                    return true;
                }
            return false;
        }
        for (std::uint32_t c : cands) {
            std::vector<std::uint64_t> next(unc);
            const std::uint64_t* row = rows->data() + c * row_words;
            for (std::size_t w = 0; w < row_words; ++w) next[w] &= ~row[w];
            chosen.push_back(c);
            if (dfs(next, depth_left - 1)) return true;
            chosen.pop_back();
            if (aborted) return false;
        }
        return false;
    }
};

inline BetaResult solve_levels(const Family& f, DSpec d, SolveLimits limits) {
    int n = f.ground.n;
    OrbitSearch search;
    search.n = n;
    search.d = d;
    search.m = f.members.size();
    search.words = (search.m + 63) / 64;
    search.node_limit = limits.node_limit;
    if (limits.time_limit_s > 0) {
        search.has_deadline = true;
        search.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(limits.time_limit_s));
    }
    search.member_words.resize(search.m);
    search.member_card.resize(search.m);
    for (std::size_t a = 0; a < search.m; ++a) {
        std::uint64_t w = 0;
        for (int e : f.members[a].elements()) w |= std::uint64_t{1} << (e - 1);
        search.member_words[a] = w;
        search.member_card[a] = f.members[a].cardinality();
    }

    // Parity-impossible members: no intersection size can land in D.
    for (std::size_t a = 0; a < search.m; ++a) {
        bool coverable = false;
        for (int s = 0; s <= search.member_card[a] && !coverable; ++s)
            coverable = d.contains(2 * s - search.member_card[a]);
        if (!coverable) {
            std::string str;
            for (int e : f.members[a].elements())
                str += (str.empty() ? "" : ",") + std::to_string(e);
            throw infeasible_error("no subset of [" + std::to_string(n) + "] " + d.str() +
                                   "-sects member " + std::to_string(a) + " = {" + str + "}");
        }
    }

    std::vector<std::uint64_t> all(search.words, 0);
    for (std::size_t a = 0; a < search.m; ++a) all[a / 64] |= std::uint64_t{1} << (a % 64);
    std::vector<std::uint64_t> root_cells{n == 64 ? ~std::uint64_t{0}
                                                  : (std::uint64_t{1} << n) - 1};

    // By symmetry the best single-set coverage is attained at a root
    // representative, so the quotient prune constant is exact.
    std::vector<std::uint64_t> row;
    for (std::uint64_t r : search.reps(root_cells))
        search.max_cover =
            std::max(search.max_cover, static_cast<int>(search.cover_row(r, all, row)));

    // Greedy cover over representatives: valid upper bound, and cell
    // refinement keeps it deterministic.
    std::vector<std::uint64_t> greedy;
    {
        std::vector<std::uint64_t> unc = all;
        std::vector<std::uint64_t> cells = root_cells;
        std::size_t left = search.m;
        while (left > 0) {
            std::uint64_t best_rep = 0;
            std::size_t best_gain = 0;
            std::vector<std::uint64_t> best_row;
            for (std::uint64_t r : search.reps(cells)) {
                std::size_t gain = search.cover_row(r, unc, row);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_rep = r;
                    best_row = row;
                }
            }
            for (std::size_t w = 0; w < search.words; ++w) unc[w] &= ~best_row[w];
            left -= best_gain;
            greedy.push_back(best_rep);
            cells = OrbitSearch::refine(cells, best_rep);
        }
    }

    auto build_witness = [&](const std::vector<std::uint64_t>& picks) {
        Family wit(f.ground);
        for (std::uint64_t r : picks) wit.push_back(SubsetMask::from_bits(n, r));
        return wit;
    };

    std::size_t lb = (search.m + static_cast<std::size_t>(search.max_cover) - 1) /
                     static_cast<std::size_t>(search.max_cover);
    for (std::size_t target = std::max<std::size_t>(lb, 1); target < greedy.size(); ++target) {
        search.chosen.clear();
        if (search.dfs(all, search.m, static_cast<int>(target), root_cells))
            return {static_cast<int>(target), build_witness(search.chosen), search.nodes, true};
        if (search.aborted)
            return {static_cast<int>(greedy.size()), build_witness(greedy), search.nodes, false};
    }
    return {static_cast<int>(greedy.size()), build_witness(greedy), search.nodes, true};
}

}  // namespace detail

inline BetaResult exact_beta(const Family& f, DSpec d, SolveLimits limits = {},
                             SolveOptions options = {}) {
    int n = f.ground.n;
    if (f.members.empty()) return {0, Family(f.ground), 0, true};

    if (options.symmetry_reduction && n <= options.max_n && detail::level_complete(f))
        return detail::solve_levels(f, d, limits);

    CoverageMatrix mx = coverage_matrix(f, d, options.max_n);
    if (!options.complement_reduction && mx.canonical) {
        // Differential-testing hook: rebuild over all 2^n candidates even
        // though D is symmetric.
        mx.canonical = false;
        mx.candidate_words.clear();
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w)
            mx.candidate_words.push_back(w);
        mx.cover_bits.assign(mx.candidate_words.size() * mx.row_words, 0);
        for (std::size_t c = 0; c < mx.candidate_words.size(); ++c) {
            std::uint64_t* row = &mx.cover_bits[c * mx.row_words];
            for (std::size_t a = 0; a < f.members.size(); ++a) {
                std::uint64_t w = 0;
                for (int e : f.members[a].elements()) w |= std::uint64_t{1} << (e - 1);
                int imb = 2 * std::popcount(w & mx.candidate_words[c]) -
                          f.members[a].cardinality();
                if (d.contains(imb)) row[a / 64] |= std::uint64_t{1} << (a % 64);
            }
        }
    }

    std::size_t m = mx.member_count;
    std::size_t w_cnt = mx.row_words;

    // Infeasible members first: nothing covers them under this D.
    {
        std::vector<std::uint64_t> any(w_cnt, 0);
        for (std::size_t c = 0; c < mx.candidate_words.size(); ++c)
            for (std::size_t w = 0; w < w_cnt; ++w) any[w] |= mx.cover_bits[c * w_cnt + w];
        for (std::size_t a = 0; a < m; ++a)
            if (!((any[a / 64] >> (a % 64)) & 1u)) {
                auto elems = f.members[a].elements();
                std::string s;
                for (int e : elems) s += (s.empty() ? "" : ",") + std::to_string(e);
                throw infeasible_error("no subset of [" + std::to_string(n) + "] " + d.str() +
                                       "-sects member " + std::to_string(a) + " = {" + s + "}");
            }
    }

    // Candidate reduction: drop exact-duplicate coverage rows (keeping the
    // lowest mask), then strictly dominated rows.  Neither changes the
    // optimum, both are deterministic.
    std::vector<std::uint32_t> keep;
    {
        std::map<std::vector<std::uint64_t>, std::uint32_t> seen;
        for (std::uint32_t c = 0; c < mx.candidate_words.size(); ++c) {
            std::vector<std::uint64_t> row(mx.cover_bits.begin() + c * w_cnt,
                                           mx.cover_bits.begin() + (c + 1) * w_cnt);
            bool empty_row = std::all_of(row.begin(), row.end(),
                                         [](std::uint64_t x) { return x == 0; });
            if (empty_row) continue;
            if (seen.emplace(std::move(row), c).second) keep.push_back(c);
        }
    }
    if (keep.size() <= options.dominance_cap) {
        auto subset_of = [&](std::uint32_t c1, std::uint32_t c2) {
            for (std::size_t w = 0; w < w_cnt; ++w)
                if (mx.cover_bits[c1 * w_cnt + w] & ~mx.cover_bits[c2 * w_cnt + w]) return false;
            return true;
        };
        std::vector<std::uint32_t> kept;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < keep.size() && !dominated; ++j)
                if (i != j && subset_of(keep[i], keep[j]) &&
                    (!subset_of(keep[j], keep[i]) || j < i))
                    dominated = true;
            if (!dominated) kept.push_back(keep[i]);
        }
        keep = std::move(kept);
    }

    // Compact the kept rows and build per-member candidate lists (ascending
    // mask order is inherited from the candidate enumeration order).
    std::vector<std::uint64_t> rows(keep.size() * w_cnt);
    std::vector<std::uint64_t> kept_masks(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        kept_masks[i] = mx.candidate_words[keep[i]];
        std::copy(mx.cover_bits.begin() + keep[i] * w_cnt,
                  mx.cover_bits.begin() + (keep[i] + 1) * w_cnt, rows.begin() + i * w_cnt);
    }
    std::vector<std::vector<std::uint32_t>> by_member(m);
    int max_cover = 1;
    for (std::size_t c = 0; c < keep.size(); ++c) {
        int pc = 0;
        for (std::size_t w = 0; w < w_cnt; ++w) pc += std::popcount(rows[c * w_cnt + w]);
        max_cover = std::max(max_cover, pc);
        for (std::size_t a = 0; a < m; ++a)
            if ((rows[c * w_cnt + a / 64] >> (a % 64)) & 1u)
                by_member[a].push_back(static_cast<std::uint32_t>(c));
    }

    // Greedy cover for the initial upper bound (largest new coverage first,
    // lowest mask on ties).
    std::vector<std::uint32_t> greedy;
    {
        std::vector<std::uint64_t> unc(w_cnt, 0);
        for (std::size_t a = 0; a < m; ++a) unc[a / 64] |= std::uint64_t{1} << (a % 64);
        auto unc_count = [&]() {
            std::size_t t = 0;
            for (auto w : unc) t += static_cast<std::size_t>(std::popcount(w));
            return t;
        };
        while (unc_count() > 0) {
            std::size_t best = keep.size();
            int best_gain = -1;
            for (std::size_t c = 0; c < keep.size(); ++c) {
                int gain = 0;
                for (std::size_t w = 0; w < w_cnt; ++w)
                    gain += std::popcount(unc[w] & rows[c * w_cnt + w]);
                if (gain > best_gain) {
                    best_gain = gain;
                    best = c;
                }
            }
            for (std::size_t w = 0; w < w_cnt; ++w) unc[w] &= ~rows[best * w_cnt + w];
            greedy.push_back(static_cast<std::uint32_t>(best));
        }
    }

    detail::CoverSearch search;
    search.row_words = w_cnt;
    search.member_count = m;
    search.rows = &rows;
    search.by_member = &by_member;
    search.max_cover = max_cover;
    search.node_limit = limits.node_limit;
    if (limits.time_limit_s > 0) {
        search.has_deadline = true;
        search.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(limits.time_limit_s));
    }

    auto build_witness = [&](const std::vector<std::uint32_t>& picks) {
        Family wit(f.ground);
        for (std::uint32_t c : picks) wit.push_back(SubsetMask::from_bits(n, kept_masks[c]));
        return wit;
    };

    std::size_t lb = (m + static_cast<std::size_t>(max_cover) - 1) /
                     static_cast<std::size_t>(max_cover);
    for (std::size_t target = std::max<std::size_t>(lb, 1); target < greedy.size(); ++target) {
        std::vector<std::uint64_t> unc(w_cnt, 0);
        for (std::size_t a = 0; a < m; ++a) unc[a / 64] |= std::uint64_t{1} << (a % 64);
        search.chosen.clear();
        if (search.dfs(unc, static_cast<int>(target)))
            return {static_cast<int>(target), build_witness(search.chosen), search.nodes, true};
        if (search.aborted)
            return {static_cast<int>(greedy.size()), build_witness(greedy), search.nodes, false};
    }
    return {static_cast<int>(greedy.size()), build_witness(greedy), search.nodes, true};
}

struct DiscResult {
    int value = 0;
    SubsetMask witness{1};
};

// Minimum over bicolorings (one per complement pair) of the largest absolute
// imbalance over the family: the least i with beta over Interval(i) equal 1.
inline DiscResult exact_discrepancy(const Family& f, int max_n = default_solve_max_n()) {
    int n = f.ground.n;
    if (n > max_n)
        throw resource_error("discrepancy enumerates 2^(n-1) colorings; n=" + std::to_string(n) +
                             " exceeds budget BISECT_SOLVE_MAX_N=" + std::to_string(max_n));
    std::vector<std::uint64_t> member_words(f.members.size());
    std::vector<int> member_card(f.members.size());
    for (std::size_t a = 0; a < f.members.size(); ++a) {
        std::uint64_t w = 0;
        for (int e : f.members[a].elements()) w |= std::uint64_t{1} << (e - 1);
        member_words[a] = w;
        member_card[a] = f.members[a].cardinality();
    }
    auto worst = [&](std::uint64_t coloring) {
        int mx = 0;
        for (std::size_t a = 0; a < member_words.size(); ++a) {
            int imb = 2 * std::popcount(member_words[a] & coloring) - member_card[a];
            mx = std::max(mx, std::abs(imb));
        }
        return mx;
    };
    std::uint64_t best_mask = 0;
    int best = worst(0);
    std::uint64_t half = n == 1 ? 1 : (std::uint64_t{1} << (n - 1));
    for (std::uint64_t w = 0; w < half && best > 0; ++w) {
        std::uint64_t coloring = (w << 1) | 1u;
        int v = worst(coloring);
        if (v < best) {
            best = v;
            best_mask = coloring;
        }
    }
    return {best, SubsetMask::from_bits(n, best_mask)};
}

template <typename Block>
BasicFamily<Block> induced_family(const BasicFamily<Block>& f, const BasicSubsetMask<Block>& s) {
    if (s.ground_size() != f.ground.n) throw contract_error("inducing set over wrong ground set");
    BasicFamily<Block> out(f.ground);
    out.members.reserve(f.members.size());
    for (const auto& a : f.members) out.push_back(a & s);
    return out;
}

}  // namespace bisect

#endif
