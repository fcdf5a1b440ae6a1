/*
 * Exact minimum-cover solver.
 *
 * Pinned values come from three directions: hand-checkable instances (the
 * all-4-subsets-of-[6] family), closed forms proved elsewhere and evaluated
 * only on parameters where the solver is independent of them, and
 * differential runs of the solver against its own alternate search paths
 * (canonical candidates on/off, orbit search on/off, dominance on/off).
 */
#include <catch2/catch_amalgamated.hpp>

#include <bisect/constructions.hpp>
#include <bisect/core.hpp>
#include <bisect/rng.hpp>
#include <bisect/solver.hpp>

#include <cstdlib>
#include <set>
#include <vector>

using namespace bisect;

namespace {

Family family_of(int n, std::vector<std::vector<int>> sets) {
    Family f{GroundSet(n)};
    for (const auto& s : sets) f.push_back(SubsetMask::of(n, s));
    return f;
}

int beta(const Family& f, DSpec d, SolveOptions opt = {}) {
    auto r = exact_beta(f, d, {}, opt);
    REQUIRE(r.proven_optimal);
    REQUIRE(r.witness.size() == static_cast<std::size_t>(r.value));
    REQUIRE(verify_dsecting(f, r.witness, d).ok);
    return r.value;
}

}  // namespace

TEST_CASE("candidate enumeration keeps one set per complement pair") {
    auto f = generate_family(4, FamilyKind::pairs());
    auto mx = coverage_matrix(f, DSpec::interval(1));
    REQUIRE(mx.canonical);
    CHECK(mx.candidate_words.size() == 9);  // 2^(4-1) + 1
    CHECK(mx.candidate_words[0] == 0);
    for (std::size_t c = 1; c < mx.candidate_words.size(); ++c)
        CHECK((mx.candidate_words[c] & 1u) == 1u);  // element 1 everywhere else

    // Asymmetric targets must keep the full powerset.
    auto mx2 = coverage_matrix(f, DSpec::singleton(2));
    REQUIRE_FALSE(mx2.canonical);
    CHECK(mx2.candidate_words.size() == 16);
}

TEST_CASE("coverage rows match the imbalance definition") {
    auto f = generate_family(6, FamilyKind::all_k(4));
    auto mx = coverage_matrix(f, DSpec::singleton(0));
    auto probe = SubsetMask::of(6, {1, 2, 3});
    std::size_t c = 0;
    bool found = false;
    for (; c < mx.candidate_words.size(); ++c)
        if (mx.candidate(c) == probe) {
            found = true;
            break;
        }
    REQUIRE(found);
    int covered = 0;
    for (std::size_t a = 0; a < f.size(); ++a) {
        bool bit = mx.covers(c, a);
        REQUIRE(bit == (imbalance(f[a], probe) == 0));
        covered += bit;
    }
    CHECK(covered == 9);  // the 4-sets meeting {1,2,3} in exactly two points
}

TEST_CASE("worked instance: all 4-subsets of a 6-point ground set") {
    auto f = generate_family(6, FamilyKind::all_k(4));
    auto known = family_of(6, {{1, 2, 3}, {1, 2, 4}, {1, 3, 5}});
    REQUIRE(verify_dsecting(f, known, DSpec::singleton(0)).ok);

    auto r = exact_beta(f, DSpec::singleton(0));
    CHECK(r.value == 3);
    CHECK(r.proven_optimal);
    REQUIRE(verify_dsecting(f, r.witness, DSpec::singleton(0)).ok);

    // No two subsets suffice, so every 2-element candidate family fails.
    CHECK(beta(f, DSpec::interval(1)) == 3);
}

TEST_CASE("interval targets on the full powerset match the closed form") {
    CHECK(beta(generate_family(7, FamilyKind::all_nonempty()), DSpec::interval(2)) == 2);
    CHECK(beta(generate_family(10, FamilyKind::all_nonempty()), DSpec::interval(1)) == 5);
    CHECK(beta(generate_family(9, FamilyKind::all_nonempty()), DSpec::interval(3)) == 2);
    CHECK(beta(generate_family(8, FamilyKind::all_nonempty()), DSpec::interval(4)) == 1);
}

TEST_CASE("odd subsets need ceil(n/2) sets at imbalance exactly one") {
    CHECK(beta(generate_family(5, FamilyKind::odd()), DSpec::singleton(1)) == 3);
    CHECK(beta(generate_family(7, FamilyKind::odd()), DSpec::singleton(1)) == 4);
    CHECK(beta(generate_family(8, FamilyKind::odd()), DSpec::singleton(1)) == 4);
}

TEST_CASE("pairs need a binary code's worth of splitters") {
    CHECK(beta(generate_family(4, FamilyKind::pairs()), DSpec::interval(1)) == 2);
    CHECK(beta(generate_family(8, FamilyKind::pairs()), DSpec::interval(1)) == 3);
    CHECK(beta(generate_family(9, FamilyKind::pairs()), DSpec::interval(1)) == 4);
}

TEST_CASE("hadamard rows are covered by two prefixes and no single set") {
    for (int k = 2; k <= 3; ++k) {
        auto [hf, bis] = hadamard_system(k);
        CAPTURE(k);
        REQUIRE(verify_dsecting(hf, bis, DSpec::interval(1)).ok);
        CHECK(beta(hf, DSpec::interval(1)) == 2);
    }
}

TEST_CASE("covering stays cheap on members but not on induced members") {
    auto f = family_of(5, {{1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}});
    CHECK(beta(f, DSpec::interval(1)) == 1);
    auto induced = induced_family(f, SubsetMask::of(5, {1, 2, 3}));
    REQUIRE(induced.size() == 3);
    CHECK(induced[0].elements() == std::vector<int>{1, 2});
    CHECK(beta(induced, DSpec::interval(1)) == 2);

    // Inducing on the full ground set changes nothing.
    auto same = induced_family(f, SubsetMask::full(5));
    for (std::size_t j = 0; j < f.size(); ++j) REQUIRE(same[j] == f[j]);
    CHECK_THROWS_AS(induced_family(f, SubsetMask::full(4)), contract_error);
}

TEST_CASE("alternate search paths agree on the minimum") {
    RngStream seq(31);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 4 + static_cast<int>(seq.next_below(3));  // 4..6
        // Random families with a parity-safe target: mixed cardinalities get
        // interval(1); pure even or odd cardinalities get a singleton.
        Family f{GroundSet(n)};
        std::set<std::vector<int>> seen;
        DSpec d = DSpec::interval(1);
        if (trial % 3) {
            int par = trial % 3 == 1 ? 0 : 1;
            d = DSpec::singleton(par);
            while (f.size() < 6) {
                int card = par ? 1 + 2 * static_cast<int>(seq.next_below(2))
                               : 2 * (1 + static_cast<int>(seq.next_below(2)));
                auto s = seq.random_exact_subset(n, card);
                if (seen.insert(s.elements()).second) f.push_back(s);
            }
        } else {
            while (f.size() < 6) {
                auto s = seq.random_subset(n);
                if (s.cardinality() >= 1 && seen.insert(s.elements()).second) f.push_back(s);
            }
        }

        CAPTURE(n, d.str(), trial);
        SolveOptions plain;
        plain.complement_reduction = false;
        plain.dominance_cap = 0;
        REQUIRE(beta(f, d, plain) == beta(f, d));
    }

    // Level-complete inputs additionally exercise the orbit search.
    for (auto [n, kind, d] :
         {std::tuple{5, FamilyKind::all_k(2), DSpec::interval(1)},
          std::tuple{6, FamilyKind::odd(), DSpec::interval(1)},
          std::tuple{6, FamilyKind::all_nonempty(), DSpec::interval(2)},
          std::tuple{7, FamilyKind::parity(2), DSpec::singleton(2)},
          std::tuple{6, FamilyKind::upper_tail(4), DSpec::interval(1)}}) {
        auto f = generate_family(n, kind);
        CAPTURE(n, kind.str(), d.str());
        SolveOptions no_orbit;
        no_orbit.symmetry_reduction = false;
        REQUIRE(beta(f, d) == beta(f, d, no_orbit));
    }
}

TEST_CASE("adding members never shrinks the cover") {
    RngStream seq(47);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 5 + static_cast<int>(seq.next_below(2));
        Family small{GroundSet(n)};
        Family big{GroundSet(n)};
        for (int j = 0; j < 10; ++j) {
            auto s = seq.random_exact_subset(n, 2 + 2 * static_cast<int>(seq.next_below(2)));
            big.push_back(s);
            if (j < 5) small.push_back(s);
        }
        auto d = DSpec::interval(1);
        REQUIRE(beta(small, d) <= beta(big, d));
    }
}

TEST_CASE("discrepancy equals the least interval width covered by one set") {
    auto k2 = generate_family(2, FamilyKind::pairs());
    CHECK(exact_discrepancy(k2).value == 0);
    auto k5 = generate_family(5, FamilyKind::pairs());
    CHECK(exact_discrepancy(k5).value == 2);
    for (int k = 2; k <= 4; ++k) {
        auto [hf, bis] = hadamard_system(k);
        CAPTURE(k);
        CHECK(exact_discrepancy(hf).value == 2);
    }

    RngStream seq(59);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(seq.next_below(4));  // 3..6
        Family f{GroundSet(n)};
        for (int j = 0; j < 6; ++j) f.push_back(seq.random_subset(n));
        auto disc = exact_discrepancy(f);
        // The witness coloring achieves the reported width...
        int worst = 0;
        for (const auto& a : f.members)
            worst = std::max(worst, std::abs(imbalance(a, disc.witness)));
        REQUIRE(worst == disc.value);
        // ...and it is the least i whose interval admits a single-set cover.
        // Width 0 can be infeasible outright when odd cardinalities appear.
        int direct = -1;
        for (int i = 0; i <= n && direct < 0; ++i) {
            try {
                if (exact_beta(f, DSpec::interval(i)).value <= 1) direct = i;
            } catch (const infeasible_error&) {
            }
        }
        REQUIRE(disc.value == direct);
    }
}

TEST_CASE("parity mismatches are reported as infeasible") {
    auto f = generate_family(4, FamilyKind::all_k(3));
    CHECK_THROWS_AS(exact_beta(f, DSpec::interval(0)), infeasible_error);
    CHECK_THROWS_AS(exact_beta(f, DSpec::singleton(2)), infeasible_error);
    auto mixed = family_of(4, {{1, 2}, {1, 2, 3}});
    CHECK_THROWS_AS(exact_beta(mixed, DSpec::singleton(0)), infeasible_error);
    // The orbit path reports the same condition on level-complete input.
    SolveOptions no_orbit;
    no_orbit.symmetry_reduction = false;
    CHECK_THROWS_AS(exact_beta(f, DSpec::interval(0), {}, no_orbit), infeasible_error);
}

TEST_CASE("resource limits degrade to unproven upper bounds or refuse to start") {
    auto f = generate_family(7, FamilyKind::odd());
    SolveLimits tight;
    tight.node_limit = 1;
    auto r = exact_beta(f, DSpec::singleton(1), tight);
    CHECK_FALSE(r.proven_optimal);
    CHECK(r.value >= 4);  // the greedy fallback is still a genuine cover
    REQUIRE(verify_dsecting(f, r.witness, DSpec::singleton(1)).ok);

    SolveOptions small;
    small.max_n = 6;
    CHECK_THROWS_AS(exact_beta(f, DSpec::singleton(1), {}, small), resource_error);
    CHECK_THROWS_AS(coverage_matrix(f, DSpec::singleton(1), 6), resource_error);
    CHECK_THROWS_AS(exact_discrepancy(f, 6), resource_error);
}

TEST_CASE("empty families are covered by the empty cover") {
    Family f{GroundSet(4)};
    auto r = exact_beta(f, DSpec::interval(1));
    CHECK(r.value == 0);
    CHECK(r.proven_optimal);
    CHECK(r.witness.size() == 0);
}
