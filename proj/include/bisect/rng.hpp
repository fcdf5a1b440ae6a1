/*
 * Counter-based splittable random generator.
 *
 * The whole scheme is three one-liners over the splitmix64 finalizer
 *     mix(z): z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
 *             z ^= z >> 27; z *= 0x94d049bb133111eb; z ^= z >> 31;
 * with GOLDEN = 0x9e3779b97f4a7c15 and SALT = 0x6a09e667f3bcc909:
 *
 *     value(key, counter) = mix(key + counter * GOLDEN)
 *     child(key, index)   = mix((key ^ SALT) + index * GOLDEN)
 *
 * A stream holds (key, counter) and hands out value(key, 1), value(key, 2),
 * ... in order.  Restart r of a randomized run uses key child(seed, r), so
 * runs are reproducible from the seed alone, in any implementation of the
 * formulas above.  Known answers (checked in the tests):
 *
 *     value(0, 1)  = 0xe220a8397b1dcdaf     (splitmix64 from seed 0)
 *     value(42, 1) = 0xbdd732262feb6e95
 *     value(42, 2) = 0x28efe333b266f103
 *     child(42, 0) = 0x5d4520bed6c96db9
 *     child(42, 1) = 0xd86e1008eac15bc5
 *
 * Bounded draws use rejection sampling, never modulo bias and never any
 * standard-library distribution (those differ across platforms).
 */
#ifndef BISECT_RNG_HPP
#define BISECT_RNG_HPP

#include <cstdint>
#include <numeric>
#include <vector>

#include "bisect/mask.hpp"

namespace bisect {

namespace rng {

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t salt = 0x6a09e667f3bcc909ull;

constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t value(std::uint64_t key, std::uint64_t counter) {
    return mix(key + counter * golden);
}

constexpr std::uint64_t child(std::uint64_t key, std::uint64_t index) {
    return mix((key ^ salt) + index * golden);
}

}  // namespace rng

class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key), counter_(0) {}

    std::uint64_t next_u64() { return rng::value(key_, ++counter_); }

    bool next_bit() { return next_u64() & 1u; }

    // Uniform in [0, bound), bound >= 1, by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw contract_error("next_below(0)");
        std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    // Each element of [n] tossed in with an independent fair coin.
    template <typename Block = std::uint64_t>
    BasicSubsetMask<Block> random_subset(int n) {
        BasicSubsetMask<Block> m(n);
        for (int e = 1; e <= n; ++e)
            if (next_bit()) m.add(e);
        return m;
    }

    // Uniform among the subsets of [n] of cardinality exactly h
    // (partial Fisher-Yates over 1..n, keep the first h slots).
    template <typename Block = std::uint64_t>
    BasicSubsetMask<Block> random_exact_subset(int n, int h) {
        if (h < 0 || h > n) throw contract_error("random_exact_subset: bad cardinality");
        std::vector<int> pool(static_cast<std::size_t>(n));
        std::iota(pool.begin(), pool.end(), 1);
        BasicSubsetMask<Block> m(n);
        for (int i = 0; i < h; ++i) {
            std::uint64_t j = static_cast<std::uint64_t>(i) +
                              next_below(static_cast<std::uint64_t>(n - i));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            m.add(pool[static_cast<std::size_t>(i)]);
        }
        return m;
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace bisect

#endif
