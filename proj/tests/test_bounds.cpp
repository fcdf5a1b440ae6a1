/*
 * Closed-form bound evaluators and the anchored report rows.
 *
 * Rationals are kept exact (big integers, reduced form) so that bounds like
 * 231/200 survive without rounding; every emitted row carries the anchor
 * string registered for its label, and anchors stay comma-free so the CSV
 * writer never needs quoting.
 */
#include <catch2/catch_amalgamated.hpp>

#include <bisect/bounds.hpp>

#include <string>

using namespace bisect;
using Catch::Matchers::WithinAbs;

TEST_CASE("exact rational arithmetic") {
    CHECK(Rational(bigint(15), bigint(18)).str() == "5/6");
    CHECK(Rational(bigint(8), bigint(2)).str() == "4");
    CHECK(Rational(bigint(-3), bigint(2)).str() == "-3/2");
    CHECK(Rational(bigint(3), bigint(-2)).str() == "-3/2");
    CHECK(Rational(bigint(5), bigint(6)).ceil() == 1);
    CHECK(Rational(bigint(12), bigint(6)).ceil() == 2);
    CHECK(Rational(bigint(-3), bigint(2)).ceil() == -1);
    CHECK_THAT(Rational(bigint(231), bigint(200)).to_double(), WithinAbs(1.155, 1e-12));
    CHECK_THROWS_AS(Rational(bigint(1), bigint(0)), contract_error);
}

TEST_CASE("big binomials do not overflow") {
    CHECK(big_binomial(6, 4) == 15);
    CHECK(big_binomial(12, 6) == 924);
    CHECK(big_binomial(64, 32) == bigint("1832624140942590534"));
    CHECK(big_binomial(100, 50) == bigint("100891344545564193334812497256"));
    CHECK(big_binomial(5, 7) == 0);
    CHECK(big_binomial(5, -1) == 0);
}

TEST_CASE("closed forms at pinned parameters") {
    CHECK(interval_exact(6, 1) == 3);
    CHECK(interval_exact(7, 2) == 2);
    CHECK(interval_exact(12, 5) == 2);
    CHECK(interval_exact(2, 1) == 1);
    CHECK_THROWS_AS(interval_exact(4, 0), contract_error);
    CHECK_THROWS_AS(interval_exact(4, 5), contract_error);

    auto [lo, hi] = singleton_bracket(9, 2);
    CHECK(lo.str() == "4");
    CHECK(hi == 8);
    auto [lo2, hi2] = singleton_bracket(6, 1);
    CHECK(lo2.str() == "3");
    CHECK(hi2 == 6);
    CHECK_THROWS_AS(singleton_bracket(4, 5), contract_error);

    CHECK(counting_lower(6, 4).str() == "5/6");
    CHECK(counting_lower(12, 6).str() == "231/200");
    CHECK(counting_lower(12, 6).ceil() == 2);

    auto ent = entropy_lower(10, 6);
    CHECK(ent.special_applies);  // k even with odd half
    CHECK_THAT(ent.special, WithinAbs(2.5849625, 1e-6));
    CHECK(ent.always == 2);
    auto ent2 = entropy_lower(10, 4);
    CHECK_FALSE(ent2.special_applies);  // half is even
    CHECK(ent2.always == 3);            // ceil(log2(ceil(10/2)))
    CHECK_THROWS_AS(entropy_lower(10, 1), contract_error);
}

TEST_CASE("report rows carry registered anchors without commas") {
    for (int n : {4, 6, 9, 12})
        for (auto d : {DSpec::interval(1), DSpec::interval(2), DSpec::singleton(0),
                       DSpec::singleton(1), DSpec::singleton(3)}) {
            ReportInputs in;
            in.chernoff_mt = {{924, 4}};
            for (auto k : std::vector<std::optional<int>>{std::nullopt, 2, 4, n - 2}) {
                auto rep = bound_rows(n, k, d, in);
                CAPTURE(n, d.str(), k ? *k : -1);
                for (const auto& row : rep.rows) {
                    REQUIRE(bound_anchor_registry().count(row.label) == 1);
                    REQUIRE(row.anchor == bound_anchor_registry().at(row.label));
                    REQUIRE(row.anchor.find(',') == std::string::npos);
                    REQUIRE_FALSE(row.anchor.empty());
                    REQUIRE_FALSE(row.value_str().empty());
                }
                REQUIRE(report_consistent(rep));
            }
        }
}

TEST_CASE("report contents for a powerset interval query") {
    auto rep = bound_rows(7, std::nullopt, DSpec::interval(2));
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].label == "interval_exact");
    CHECK(rep.rows[0].kind == BoundRow::Kind::exact);
    CHECK(rep.rows[0].value_str() == "2");
    CHECK(rep.rows[0].kind_str() == "exact");
}

TEST_CASE("report contents for a uniform bisection query") {
    auto rep = bound_rows(12, 6, DSpec::interval(1));
    bool saw_counting = false, saw_entropy = false, saw_lll = false;
    for (const auto& row : rep.rows) {
        if (row.label == "counting_lower") {
            saw_counting = true;
            CHECK(row.value_str() == "231/200");
        }
        if (row.label == "entropy_special_lower") saw_entropy = true;
        if (row.label == "lll_upper") {
            saw_lll = true;
            CHECK(row.kind == BoundRow::Kind::upper);
        }
    }
    CHECK(saw_counting);
    CHECK(saw_entropy);
    CHECK(saw_lll);
    CHECK(report_consistent(rep));

    // The even-n family of all (n-2)-subsets pins the exact value 3.
    auto rep2 = bound_rows(8, 6, DSpec::interval(1));
    bool saw3 = false;
    for (const auto& row : rep2.rows)
        if (row.label == "nminus2_exact") {
            saw3 = true;
            CHECK(row.value_str() == "3");
        }
    CHECK(saw3);
    CHECK(report_consistent(rep2));

    auto rep3 = bound_rows(8, 2, DSpec::interval(1));
    bool sawsep = false;
    for (const auto& row : rep3.rows)
        if (row.label == "separating_exact") {
            sawsep = true;
            CHECK(row.value_str() == "3");
        }
    CHECK(sawsep);
}

TEST_CASE("singleton reports bracket the solver value") {
    auto rep = bound_rows(9, std::nullopt, DSpec::singleton(2));
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].label == "singleton_lower");
    CHECK(rep.rows[0].value_str() == "4");
    CHECK(rep.rows[1].label == "singleton_upper");
    CHECK(rep.rows[1].value_str() == "8");

    // Merging in a solver value inside the bracket keeps the report
    // consistent; a value below the lower bound must trip the check.
    auto ok = rep;
    ok.rows.push_back(make_row("solver_exact", BoundRow::Kind::exact, 7LL));
    CHECK(report_consistent(ok));
    auto bad = rep;
    bad.rows.push_back(make_row("solver_exact", BoundRow::Kind::exact, 3LL));
    CHECK_FALSE(report_consistent(bad));

    // Out-of-range parameters yield no singleton rows rather than throwing.
    CHECK(bound_rows(3, std::nullopt, DSpec::singleton(4)).rows.empty());
}

TEST_CASE("optional flag rows") {
    ReportInputs in;
    in.linear_c = 0.3;
    auto rep = bound_rows(10, 3, DSpec::interval(1), in);
    bool saw = false;
    for (const auto& row : rep.rows)
        if (row.label == "linear_k_lower") {
            saw = true;
            CHECK(row.kind == BoundRow::Kind::info);
            CHECK(row.value_str() == "unquantified Omega(n)");
        }
    CHECK(saw);
    in.linear_c = 0.6;
    CHECK_THROWS_AS(bound_rows(10, 3, DSpec::interval(1), in), contract_error);

    ReportInputs ch;
    ch.chernoff_mt = {{924, 4}};
    auto rep2 = bound_rows(12, std::nullopt, DSpec::interval(1), ch);
    bool saw_thr = false, saw_size = false;
    for (const auto& row : rep2.rows) {
        if (row.label == "chernoff_threshold") {
            saw_thr = true;
            CHECK_THAT(std::stod(row.value_str()), WithinAbs(8.2278, 1e-3));
        }
        if (row.label == "chernoff_size") {
            saw_size = true;
            CHECK(row.applicable);  // 4 <= log2(924)/2
        }
    }
    CHECK(saw_thr);
    CHECK(saw_size);

    ch.chernoff_mt = {{924, 6}};
    auto rep3 = bound_rows(12, std::nullopt, DSpec::interval(1), ch);
    for (const auto& row : rep3.rows)
        if (row.label == "chernoff_size") CHECK_FALSE(row.applicable);
}

TEST_CASE("unknown row labels are rejected") {
    CHECK_THROWS_AS(make_row("mystery_bound", BoundRow::Kind::lower, 1LL), contract_error);
    CHECK(bound_anchor_registry().count("solver_exact") == 1);
    CHECK(bound_anchor_registry().count("construction_size") == 1);
}
