/*
 * Deterministic D-secting constructions.
 *
 * Each construction returns its family together with what it claims about
 * it: the intended size, the imbalance target D, and the family of sets it
 * D-sects.  The claims are cheap bookkeeping; the tests re-verify them
 * exhaustively, and that verification is the actual contract.
 *
 *   interval_swap_family(n, i)   ceil(n/2i) members, Interval(i)-sects every
 *                                nonempty subset of [n]
 *   singleton_one_family(n)     ceil(n/2) members, every odd-size subset hits
 *                                imbalance exactly +1
 *   chain_family(n, i)          n-i+1 nested members, Singleton(i)-sects all
 *                                A with |A| >= i, |A| == i (mod 2)
 *   upper_tail_family(n, k)     n-k+1 members, Interval(1)-sects all |A| >= k
 *   binary_code_family(n)       ceil(log2 n) members splitting every pair
 *   bipartite_cover(edges)      ceil(log2 C) bipartitions splitting every
 *                                edge of a C-colorable graph
 *   hadamard_system(k)          the 2^k-row Hadamard family plus its two
 *                                Interval(1)-secting sets
 */
#ifndef BISECT_CONSTRUCTIONS_HPP
#define BISECT_CONSTRUCTIONS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bisect/core.hpp"
#include "bisect/mask.hpp"

namespace bisect {

template <typename Block = std::uint64_t>
struct BasicConstructionTrace {
    std::string name;
    int n;
    int param;  // i or k, 0 when the construction takes none
    BasicFamily<Block> family;
    std::size_t claimed_size;
    DSpec claimed_D;
    FamilyKind claimed_target;
};

using ConstructionTrace = BasicConstructionTrace<std::uint64_t>;

// One member per 2i-step: start from the low half and repeatedly swap the i
// highest retained elements for the i lowest not-yet-used ones.  Consecutive
// members differ in exactly 2i positions.
template <typename Block = std::uint64_t>
BasicConstructionTrace<Block> interval_swap_family(int n, int i) {
    if (n < 1) throw contract_error("n must be >= 1");
    if (i < 1 || i > n) throw contract_error("need 1 <= i <= n, got i=" + std::to_string(i));
    int h = (n + 1) / 2;
    int t = (n + 2 * i - 1) / (2 * i);
    BasicFamily<Block> fam((GroundSet(n)));
    auto b = BasicSubsetMask<Block>::range(n, 1, h);
    fam.push_back(b);
    int next_removed = h, next_added = h + 1;
    for (int j = 1; j < t; ++j) {
        for (int s = 0; s < i; ++s) {
            b.remove(next_removed--);
            b.add(next_added++);
        }
        fam.push_back(b);
    }
    return {"interval-swap", n, i, std::move(fam), static_cast<std::size_t>(t),
            DSpec::interval(i), FamilyKind::all_nonempty()};
}

// Start from {1..ceil(n/2)+1} and walk one element at a time: drop the top
// of the low block, pick up the next unused high element.  For odd n the
// high elements run out one step early and the last member only drops.
template <typename Block = std::uint64_t>
BasicConstructionTrace<Block> singleton_one_family(int n) {
    if (n < 1) throw contract_error("n must be >= 1");
    BasicFamily<Block> fam((GroundSet(n)));
    if (n <= 2) {
        fam.push_back(BasicSubsetMask<Block>::range(n, 1, n));
    } else {
        int base = (n + 1) / 2;
        int t = (n + 1) / 2;
        auto b = BasicSubsetMask<Block>::range(n, 1, base + 1);
        fam.push_back(b);
        for (int j = 1; j < t; ++j) {
            b.remove(base - j + 2);
            if (base + j + 1 <= n) b.add(base + j + 1);
            fam.push_back(b);
        }
    }
    return {"singleton-one", n, 0, std::move(fam),
            static_cast<std::size_t>((n + 1) / 2), DSpec::singleton(1), FamilyKind::odd()};
}

template <typename Block = std::uint64_t>
BasicConstructionTrace<Block> chain_family(int n, int i) {
    if (n < 1) throw contract_error("n must be >= 1");
    if (i < 1 || i > n) throw contract_error("need 1 <= i <= n, got i=" + std::to_string(i));
    BasicFamily<Block> fam((GroundSet(n)));
    auto b = BasicSubsetMask<Block>::range(n, 1, i);
    fam.push_back(b);
    for (int j = i + 1; j <= n; ++j) {
        b.add(j);
        fam.push_back(b);
    }
    return {"chain", n, i, std::move(fam), static_cast<std::size_t>(n - i + 1),
            DSpec::singleton(i), FamilyKind::parity(i)};
}

// The half-prefix {1..ceil(k/2)} already splits every k-set drawn from
// [k]; growing it by the elements k+1, k+2, ... keeps some member within
// imbalance 1 of every larger set.
template <typename Block = std::uint64_t>
BasicConstructionTrace<Block> upper_tail_family(int n, int k) {
    if (n < 1) throw contract_error("n must be >= 1");
    if (k < 1 || k > n) throw contract_error("need 1 <= k <= n, got k=" + std::to_string(k));
    BasicFamily<Block> fam((GroundSet(n)));
    auto s = BasicSubsetMask<Block>::range(n, 1, (k + 1) / 2);
    fam.push_back(s);
    for (int j = k + 1; j <= n; ++j) {
        s.add(j);
        fam.push_back(s);
    }
    return {"uppertail", n, k, std::move(fam), static_cast<std::size_t>(n - k + 1),
            DSpec::interval(1), FamilyKind::upper_tail(k)};
}

// Member l holds the points whose (zero-based) index has bit l set, so any
// two distinct points are split by the member of their lowest differing bit.
template <typename Block = std::uint64_t>
BasicConstructionTrace<Block> binary_code_family(int n) {
    if (n < 2) throw contract_error("n must be >= 2");
    int levels = std::bit_width(static_cast<unsigned>(n - 1));
    BasicFamily<Block> fam((GroundSet(n)));
    for (int l = 0; l < levels; ++l) {
        BasicSubsetMask<Block> m(n);
        for (int j = 1; j <= n; ++j)
            if ((static_cast<unsigned>(j - 1) >> l) & 1u) m.add(j);
        fam.push_back(std::move(m));
    }
    return {"binary-code", n, 0, std::move(fam), static_cast<std::size_t>(levels),
            DSpec::singleton(0), FamilyKind::pairs()};
}

// Greedy proper coloring: vertices in ascending order, smallest color not
// already on a neighbour.
template <typename Block>
std::vector<int> greedy_coloring(const BasicFamily<Block>& edges) {
    int n = edges.ground.n;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& e : edges.members) {
        auto ends = e.elements();
        if (ends.size() != 2)
            throw contract_error("edge with " + std::to_string(ends.size()) +
                                 " endpoints; bipartite_cover needs pairs");
        adj[static_cast<std::size_t>(ends[0])].push_back(ends[1]);
        adj[static_cast<std::size_t>(ends[1])].push_back(ends[0]);
    }
    std::vector<int> color(static_cast<std::size_t>(n) + 1, -1);
    for (int v = 1; v <= n; ++v) {
        std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
        for (int u : adj[static_cast<std::size_t>(v)])
            if (color[static_cast<std::size_t>(u)] >= 0)
                used[static_cast<std::size_t>(color[static_cast<std::size_t>(u)])] = true;
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        color[static_cast<std::size_t>(v)] = c;
    }
    color.erase(color.begin());  // drop the unused slot for vertex 0
    return color;
}

// Bipartitions covering every edge: give each color a dense binary code and
// emit, per code bit, the set of vertices whose code has that bit set.  Two
// endpoints of an edge get different colors, hence different codes, hence
// some bipartition has exactly one of them on its 1-side (imbalance 0).
template <typename Block = std::uint64_t>
std::vector<BasicSubsetMask<Block>> bipartite_cover(
    const BasicFamily<Block>& edges, const std::vector<int>* coloring = nullptr) {
    int n = edges.ground.n;
    std::vector<int> color;
    if (coloring) {
        if (static_cast<int>(coloring->size()) != n)
            throw contract_error("coloring has " + std::to_string(coloring->size()) +
                                 " entries for n=" + std::to_string(n));
        color = *coloring;
        for (std::size_t j = 0; j < edges.members.size(); ++j) {
            auto ends = edges.members[j].elements();
            if (ends.size() != 2)
                throw contract_error("edge with " + std::to_string(ends.size()) +
                                     " endpoints; bipartite_cover needs pairs");
            if (color[static_cast<std::size_t>(ends[0] - 1)] ==
                color[static_cast<std::size_t>(ends[1] - 1)])
                throw contract_error("coloring is not proper: edge {" +
                                     std::to_string(ends[0]) + "," + std::to_string(ends[1]) +
                                     "} is monochromatic");
        }
    } else {
        color = greedy_coloring(edges);
    }
    // Dense code per color, in ascending color order.
    std::map<int, int> code;
    for (int c : color) code.emplace(c, 0);
    int next = 0;
    for (auto& [c, id] : code) id = next++;
    int levels = next <= 1 ? 0 : std::bit_width(static_cast<unsigned>(next - 1));
    std::vector<BasicSubsetMask<Block>> out;
    for (int l = 0; l < levels; ++l) {
        BasicSubsetMask<Block> m(n);
        for (int v = 1; v <= n; ++v)
            if ((static_cast<unsigned>(code[color[static_cast<std::size_t>(v - 1)]]) >> l) & 1u)
                m.add(v);
        out.push_back(std::move(m));
    }
    return out;
}

// Rows of (H(k)+J)/2 for the 2^k x 2^k all-ones-bordered Hadamard matrix,
// doubling as H(k) = [[H, H], [H, -H]]; column j maps to element j.  The
// first row is all of [2^k], every other row has exactly half the points.
// A pair of prefixes Interval(1)-sects the whole system.
template <typename Block = std::uint64_t>
std::pair<BasicFamily<Block>, BasicFamily<Block>> hadamard_system(int k) {
    if (k < 1) throw contract_error("k must be >= 1");
    if (k > 13) throw resource_error("hadamard_system materializes 4^k sign entries; k=" +
                                     std::to_string(k) + " is too large");
    int size = 1 << k;
    std::vector<std::vector<char>> h(1, std::vector<char>(1, 1));  // +1 entries
    for (int step = 0; step < k; ++step) {
        int half = 1 << step;
        std::vector<std::vector<char>> next(static_cast<std::size_t>(2 * half),
                                            std::vector<char>(static_cast<std::size_t>(2 * half)));
        for (int r = 0; r < half; ++r)
            for (int c = 0; c < half; ++c) {
                char v = h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                next[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
                next[static_cast<std::size_t>(r)][static_cast<std::size_t>(c + half)] = v;
                next[static_cast<std::size_t>(r + half)][static_cast<std::size_t>(c)] = v;
                next[static_cast<std::size_t>(r + half)][static_cast<std::size_t>(c + half)] =
                    static_cast<char>(-v);
            }
        h = std::move(next);
    }
    BasicFamily<Block> hf((GroundSet(size)));
    for (int r = 0; r < size; ++r) {
        BasicSubsetMask<Block> m(size);
        for (int c = 0; c < size; ++c)
            if (h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] > 0) m.add(c + 1);
        hf.push_back(std::move(m));
    }
    BasicFamily<Block> bisectors((GroundSet(size)));
    bisectors.push_back(BasicSubsetMask<Block>::range(size, 1, 1 << (k - 1)));
    if (k > 1) bisectors.push_back(BasicSubsetMask<Block>::range(size, 1, 1 << (k - 2)));
    return {std::move(hf), std::move(bisectors)};
}

}  // namespace bisect

#endif
