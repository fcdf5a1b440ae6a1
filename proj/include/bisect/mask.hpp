/*
 * Ground sets, subset bitmasks, families, and imbalance targets.
 *
 * Elements of the ground set [n] are numbered 1..n externally and stored as
 * bit positions 0..n-1 internally.  Masks over n <= 64 live in a single
 * machine word; larger ground sets fall back to a block vector with the same
 * observable behaviour.  The block width is a template parameter so tests can
 * force the multi-word path at small n.
 */
#ifndef BISECT_MASK_HPP
#define BISECT_MASK_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace bisect {

struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};
struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

struct GroundSet {
    int n;
    explicit GroundSet(int n_) : n(n_) {
        if (n < 1) throw contract_error("ground set size must be >= 1, got " + std::to_string(n));
    }
    friend bool operator==(GroundSet a, GroundSet b) { return a.n == b.n; }
    friend bool operator!=(GroundSet a, GroundSet b) { return a.n != b.n; }
};

template <typename Block = std::uint64_t>
class BasicSubsetMask {
    static_assert(std::is_unsigned_v<Block>, "mask blocks must be unsigned integers");

public:
    static constexpr int block_bits = static_cast<int>(8 * sizeof(Block));

    BasicSubsetMask() : n_(0) {}

    explicit BasicSubsetMask(int n) : n_(check_n(n)), words_((n + block_bits - 1) / block_bits, 0) {}

    static BasicSubsetMask empty(int n) { return BasicSubsetMask(n); }

    static BasicSubsetMask full(int n) {
        BasicSubsetMask m(n);
        for (int e = 1; e <= n; ++e) m.add(e);
        return m;
    }

    static BasicSubsetMask of(int n, std::initializer_list<int> elems) {
        BasicSubsetMask m(n);
        for (int e : elems) m.add(e);
        return m;
    }

    static BasicSubsetMask of(int n, const std::vector<int>& elems) {
        BasicSubsetMask m(n);
        for (int e : elems) m.add(e);
        return m;
    }

    // Contiguous run {lo..hi}, 1-based inclusive; empty when hi < lo.
    static BasicSubsetMask range(int n, int lo, int hi) {
        BasicSubsetMask m(n);
        for (int e = lo; e <= hi; ++e) m.add(e);
        return m;
    }

    // Low n bits of a word value; only valid for n <= 64.
    static BasicSubsetMask from_bits(int n, std::uint64_t bits) {
        if (n > 64) throw contract_error("from_bits requires n <= 64");
        BasicSubsetMask m(n);
        for (int e = 1; e <= n; ++e)
            if ((bits >> (e - 1)) & 1u) m.add(e);
        return m;
    }

    int ground_size() const { return n_; }
    int word_count() const { return static_cast<int>(words_.size()); }
    Block word(int w) const { return words_[static_cast<std::size_t>(w)]; }

    bool contains(int elem) const {
        check_elem(elem);
        int b = elem - 1;
        return (words_[static_cast<std::size_t>(b / block_bits)] >> (b % block_bits)) & Block{1};
    }

    void add(int elem) {
        check_elem(elem);
        int b = elem - 1;
        words_[static_cast<std::size_t>(b / block_bits)] |= Block{1} << (b % block_bits);
    }

    void remove(int elem) {
        check_elem(elem);
        int b = elem - 1;
        words_[static_cast<std::size_t>(b / block_bits)] &= ~(Block{1} << (b % block_bits));
    }

    int cardinality() const {
        if (words_.size() == 1) return std::popcount(words_[0]);
        int c = 0;
        for (Block w : words_) c += std::popcount(w);
        return c;
    }

    bool is_empty() const {
        for (Block w : words_)
            if (w) return false;
        return true;
    }

    int intersection_size(const BasicSubsetMask& other) const {
        require_same_ground(other);
        if (words_.size() == 1) return std::popcount(static_cast<Block>(words_[0] & other.words_[0]));
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += std::popcount(static_cast<Block>(words_[i] & other.words_[i]));
        return c;
    }

    BasicSubsetMask complement() const {
        BasicSubsetMask m(*this);
        for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] = ~m.words_[i];
        m.clear_tail();
        return m;
    }

    BasicSubsetMask operator&(const BasicSubsetMask& other) const {
        require_same_ground(other);
        BasicSubsetMask m(*this);
        for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] &= other.words_[i];
        return m;
    }

    BasicSubsetMask operator|(const BasicSubsetMask& other) const {
        require_same_ground(other);
        BasicSubsetMask m(*this);
        for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] |= other.words_[i];
        return m;
    }

    BasicSubsetMask operator^(const BasicSubsetMask& other) const {
        require_same_ground(other);
        BasicSubsetMask m(*this);
        for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] ^= other.words_[i];
        return m;
    }

    bool operator==(const BasicSubsetMask& other) const {
        return n_ == other.n_ && words_ == other.words_;
    }
    bool operator!=(const BasicSubsetMask& other) const { return !(*this == other); }

    // Numeric order of the bit string; equals colexicographic order on sets.
    bool operator<(const BasicSubsetMask& other) const {
        require_same_ground(other);
        for (std::size_t i = words_.size(); i-- > 0;)
            if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
        return false;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(cardinality()));
        for (std::size_t i = 0; i < words_.size(); ++i) {
            Block w = words_[i];
            while (w) {
                int b = std::countr_zero(w);
                out.push_back(static_cast<int>(i) * block_bits + b + 1);
                w &= w - 1;
            }
        }
        return out;
    }

    void require_same_ground(const BasicSubsetMask& other) const {
        if (n_ != other.n_)
            throw contract_error("masks over different ground sets: n=" + std::to_string(n_) +
                                 " vs n=" + std::to_string(other.n_));
    }

private:
    static int check_n(int n) {
        if (n < 1) throw contract_error("ground set size must be >= 1, got " + std::to_string(n));
        return n;
    }
    void check_elem(int elem) const {
        if (elem < 1 || elem > n_)
            throw contract_error("element " + std::to_string(elem) + " outside [1.." +
                                 std::to_string(n_) + "]");
    }
    void clear_tail() {
        int used = n_ % block_bits;
        if (used) words_.back() &= (Block{1} << used) - Block{1};
    }

    int n_;
    std::vector<Block> words_;
};

template <typename Block = std::uint64_t>
struct BasicFamily {
    GroundSet ground;
    std::vector<BasicSubsetMask<Block>> members;
    bool dedup = false;  // true when duplicate members were dropped at load time

    explicit BasicFamily(GroundSet g) : ground(g) {}
    BasicFamily(GroundSet g, std::vector<BasicSubsetMask<Block>> ms)
        : ground(g), members(std::move(ms)) {
        for (const auto& m : members)
            if (m.ground_size() != ground.n)
                throw contract_error("family member over wrong ground set");
    }

    std::size_t size() const { return members.size(); }
    const BasicSubsetMask<Block>& operator[](std::size_t j) const { return members[j]; }

    void push_back(BasicSubsetMask<Block> m) {
        if (m.ground_size() != ground.n) throw contract_error("family member over wrong ground set");
        members.push_back(std::move(m));
    }
};

// The allowed-imbalance set D: Interval(i) = {-i..+i} or Singleton(i) = {i}.
struct DSpec {
    enum class Kind { interval, singleton };
    Kind kind;
    int i;

    static DSpec interval(int i) {
        if (i < 0) throw contract_error("interval offset must be >= 0");
        return DSpec{Kind::interval, i};
    }
    static DSpec singleton(int i) {
        if (i < 0) throw contract_error("singleton value must be >= 0");
        return DSpec{Kind::singleton, i};
    }

    bool contains(int v) const {
        return kind == Kind::interval ? (v >= -i && v <= i) : v == i;
    }

    // Closed under negation: Interval(i) always, Singleton only at 0.
    bool symmetric() const { return kind == Kind::interval || i == 0; }

    std::string str() const {
        return (kind == Kind::interval ? "interval:" : "singleton:") + std::to_string(i);
    }

    static DSpec parse(const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw parse_error("bad D spec '" + s + "', want kind:i");
        std::string kind = s.substr(0, colon);
        int i;
        try {
            std::size_t used;
            i = std::stoi(s.substr(colon + 1), &used);
            if (used != s.size() - colon - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw parse_error("bad offset in D spec '" + s + "'");
        }
        if (i < 0) throw parse_error("negative offset in D spec '" + s + "'");
        if (kind == "interval") return interval(i);
        if (kind == "singleton") return singleton(i);
        throw parse_error("unknown D kind '" + kind + "', want interval or singleton");
    }

    friend bool operator==(DSpec a, DSpec b) { return a.kind == b.kind && a.i == b.i; }
};

using SubsetMask = BasicSubsetMask<std::uint64_t>;
using Family = BasicFamily<std::uint64_t>;

}  // namespace bisect

#endif
