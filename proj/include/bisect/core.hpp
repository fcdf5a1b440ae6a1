/*
 * Imbalance functional, D-secting verification, and family generators.
 *
 * For A, B subsets of [n] the imbalance is
 *     imbalance(A, B) = |A & B| - |A & ~B| = 2|A & B| - |A|,
 * the dot product of A's 0/1 incidence vector with B's +-1 incidence vector.
 * B D-sects A when imbalance(A, B) lands in D.  A family Fp D-sects a family
 * F when every member of F is D-sected by some member of Fp.
 *
 * Useful facts, all tested: imbalance(A, B) == |A| (mod 2); complementing B
 * negates the imbalance; |imbalance(A, B)| <= |A|.
 */
#ifndef BISECT_CORE_HPP
#define BISECT_CORE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "bisect/mask.hpp"

namespace bisect {

template <typename Block>
int imbalance(const BasicSubsetMask<Block>& a, const BasicSubsetMask<Block>& b) {
    a.require_same_ground(b);
    return 2 * a.intersection_size(b) - a.cardinality();
}

template <typename Block>
bool dsects(const BasicSubsetMask<Block>& a, const BasicSubsetMask<Block>& b, DSpec d) {
    return d.contains(imbalance(a, b));
}

template <typename Block>
struct BasicVerifyResult {
    bool ok;
    // First member of F (in family order) that no member of Fp D-sects.
    std::optional<std::size_t> witness_index;
    std::optional<BasicSubsetMask<Block>> witness;
};

using VerifyResult = BasicVerifyResult<std::uint64_t>;

template <typename Block>
BasicVerifyResult<Block> verify_dsecting(const BasicFamily<Block>& f,
                                         const BasicFamily<Block>& fp, DSpec d) {
    if (f.ground != fp.ground && !f.members.empty() && !fp.members.empty())
        throw contract_error("families over different ground sets");
    for (std::size_t j = 0; j < f.members.size(); ++j) {
        const auto& a = f.members[j];
        bool hit = false;
        for (const auto& b : fp.members)
            if (dsects(a, b, d)) {
                hit = true;
                break;
            }
        if (!hit) return {false, j, a};
    }
    return {true, std::nullopt, std::nullopt};
}

// Complement member j of fp wherever flips[j] is set.  For symmetric D this
// preserves the D-secting property, since complementing B negates every
// imbalance against it.
template <typename Block>
BasicFamily<Block> complement_members(const BasicFamily<Block>& fp,
                                      const std::vector<bool>& flips) {
    if (flips.size() != fp.members.size())
        throw contract_error("flip vector length " + std::to_string(flips.size()) +
                             " != family size " + std::to_string(fp.members.size()));
    BasicFamily<Block> out(fp.ground);
    out.members.reserve(fp.members.size());
    for (std::size_t j = 0; j < fp.members.size(); ++j)
        out.members.push_back(flips[j] ? fp.members[j].complement() : fp.members[j]);
    return out;
}

// ---------------------------------------------------------------------------
// Family generators.  Members are emitted in increasing numeric mask order,
// which is colexicographic order on subsets.
// ---------------------------------------------------------------------------

struct FamilyKind {
    enum class Tag { all_nonempty, all_k_subsets, odd_subsets, parity_subsets, upper_tail, pairs };
    Tag tag;
    int param = 0;  // k for all_k_subsets/upper_tail, i for parity_subsets

    static FamilyKind all_nonempty() { return {Tag::all_nonempty, 0}; }
    static FamilyKind all_k(int k) { return {Tag::all_k_subsets, k}; }
    static FamilyKind odd() { return {Tag::odd_subsets, 0}; }
    static FamilyKind parity(int i) { return {Tag::parity_subsets, i}; }
    static FamilyKind upper_tail(int k) { return {Tag::upper_tail, k}; }
    static FamilyKind pairs() { return {Tag::pairs, 0}; }

    // Does a set of this cardinality belong to the generated family?
    bool admits(int card) const {
        switch (tag) {
            case Tag::all_nonempty: return card >= 1;
            case Tag::all_k_subsets: return card == param;
            case Tag::odd_subsets: return card % 2 == 1;
            case Tag::parity_subsets: return card >= param && card % 2 == param % 2;
            case Tag::upper_tail: return card >= param;
            case Tag::pairs: return card == 2;
        }
        return false;
    }

    std::string str() const {
        switch (tag) {
            case Tag::all_nonempty: return "all-nonempty";
            case Tag::all_k_subsets: return "all:" + std::to_string(param);
            case Tag::odd_subsets: return "odd";
            case Tag::parity_subsets: return "parity:" + std::to_string(param);
            case Tag::upper_tail: return "uppertail:" + std::to_string(param);
            case Tag::pairs: return "pairs";
        }
        return "?";
    }
};

inline std::uint64_t default_enum_budget() {
    if (const char* env = std::getenv("BISECT_ENUM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return std::uint64_t{1} << 22;
}

namespace detail {

// Row n of Pascal's triangle, saturating at 2^63 (plenty: only compared
// against enumeration budgets).
inline std::vector<std::uint64_t> binomial_row(int n) {
    constexpr std::uint64_t cap = std::uint64_t{1} << 63;
    std::vector<std::uint64_t> row{1};
    for (int r = 1; r <= n; ++r) {
        std::vector<std::uint64_t> next(static_cast<std::size_t>(r) + 1, 1);
        for (int c = 1; c < r; ++c) {
            std::uint64_t s = row[c - 1] + row[c];
            if (s < row[c] || s > cap) s = cap;
            next[c] = s;
        }
        row = std::move(next);
    }
    return row;
}

// All c-subsets of [n] as word masks, numerically ascending (Gosper's hack).
inline void append_c_subsets(int n, int c, std::vector<std::uint64_t>& out) {
    if (c == 0) {
        out.push_back(0);
        return;
    }
    std::uint64_t limit = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::uint64_t v = (c == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << c) - 1;
    while (true) {
        out.push_back(v);
        if (c == n) break;
        std::uint64_t t = v | (v - 1);
        if (t == ~std::uint64_t{0}) break;  // v occupies the top bits: last c-subset
        std::uint64_t next = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
        if (next > limit) break;
        v = next;
    }
}

}  // namespace detail

template <typename Block = std::uint64_t>
BasicFamily<Block> generate_family(int n, FamilyKind kind,
                                   std::uint64_t budget = default_enum_budget()) {
    if (n < 1) throw contract_error("ground set size must be >= 1");
    if (n > 64) throw resource_error("family generation supports n <= 64");
    if (kind.param < 0 || kind.param > n)
        throw contract_error("family-kind parameter " + std::to_string(kind.param) +
                             " outside [0.." + std::to_string(n) + "]");
    auto binom = detail::binomial_row(n);
    std::uint64_t count = 0;
    for (int c = 0; c <= n; ++c)
        if (kind.admits(c)) count += binom[static_cast<std::size_t>(c)];
    if (count > budget)
        throw resource_error("generated family would have " + std::to_string(count) +
                             " members, budget is " + std::to_string(budget));
    std::vector<std::uint64_t> words;
    words.reserve(count);
    for (int c = 0; c <= n; ++c)
        if (kind.admits(c)) detail::append_c_subsets(n, c, words);
    std::sort(words.begin(), words.end());
    BasicFamily<Block> fam((GroundSet(n)));
    fam.members.reserve(words.size());
    for (std::uint64_t w : words) {
        BasicSubsetMask<Block> mask(n);
        for (int e = 1; e <= n; ++e)
            if ((w >> (e - 1)) & 1u) mask.add(e);
        fam.members.push_back(std::move(mask));
    }
    return fam;
}

}  // namespace bisect

#endif
