/*
 * Closed-form bound evaluators and the report that lines them up against
 * construction sizes and exact solver values.
 *
 * Every numeric row is exact where the formula is exact: binomials run
 * through arbitrary-precision integers and quotients stay rational until
 * rendering.  Logarithms and square roots are double precision with the
 * symbolic form kept in the row's anchor string.
 */
#ifndef BISECT_BOUNDS_HPP
#define BISECT_BOUNDS_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bisect/mask.hpp"
#include "bisect/randomized.hpp"

namespace bisect {

using bigint = boost::multiprecision::cpp_int;

struct Rational {
    bigint num;
    bigint den;

    Rational(bigint n, bigint d) : num(std::move(n)), den(std::move(d)) {
        if (den == 0) throw contract_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        bigint g = boost::multiprecision::gcd(num < 0 ? bigint(-num) : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    explicit Rational(long long v) : num(v), den(1) {}

    bigint ceil() const {
        if (num >= 0) return (num + den - 1) / den;
        return -((-num) / den);
    }
    double to_double() const {
        return num.convert_to<double>() / den.convert_to<double>();
    }
    std::string str() const {
        return den == 1 ? num.str() : num.str() + "/" + den.str();
    }
};

inline bigint big_binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    bigint r = 1;
    for (int j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

// --- individual evaluators ---------------------------------------------------

// Exact value of beta over Interval(i) for all nonempty subsets of [n].
inline int interval_exact(int n, int i) {
    if (i < 1 || i > n) throw contract_error("interval_exact needs 1 <= i <= n");
    return (n + 2 * i - 1) / (2 * i);
}

// Bracket for beta over Singleton(i): [(n-i+1)/2, n-i+1].
inline std::pair<Rational, int> singleton_bracket(int n, int i) {
    if (i < 1 || i > n) throw contract_error("singleton_bracket needs 1 <= i <= n");
    return {Rational(bigint(n - i + 1), bigint(2)), n - i + 1};
}

// Counting lower bound for k-uniform bisection: C(n,k) over twice the
// largest single-set coverage, exact.
inline Rational counting_lower(int n, int k) {
    if (k < 1 || k > n) throw contract_error("counting_lower needs 1 <= k <= n");
    bigint den = 2 * big_binomial((n + 1) / 2, (k + 1) / 2) * big_binomial(n / 2, k / 2);
    return Rational(big_binomial(n, k), den);
}

struct EntropyLower {
    double special = 0;       // log2(n-k+2), only meaningful when special_applies
    bool special_applies = false;  // k even and k/2 odd
    int always = 0;           // ceil(log2(ceil(n / ceil(k/2))))
};

inline EntropyLower entropy_lower(int n, int k) {
    if (k < 2 || k > n) throw contract_error("entropy_lower needs 2 <= k <= n");
    EntropyLower r;
    r.special_applies = (k % 2 == 0) && ((k / 2) % 2 == 1);
    if (r.special_applies) r.special = std::log2(static_cast<double>(n - k + 2));
    int blocks = (n + (k + 1) / 2 - 1) / ((k + 1) / 2);
    r.always = blocks <= 1 ? 0 : std::bit_width(static_cast<unsigned>(blocks - 1));
    return r;
}

// --- report assembly ---------------------------------------------------------

struct BoundRow {
    std::string label;
    enum class Kind { lower, upper, exact, info } kind;
    std::variant<Rational, double, long long, std::string> value;
    std::string anchor;
    bool applicable = true;

    std::string value_str() const {
        if (std::holds_alternative<Rational>(value)) return std::get<Rational>(value).str();
        if (std::holds_alternative<long long>(value))
            return std::to_string(std::get<long long>(value));
        if (std::holds_alternative<double>(value)) {
            std::ostringstream os;
            os.precision(15);
            os << std::get<double>(value);
            return os.str();
        }
        return std::get<std::string>(value);
    }

    // Numeric view for the lower <= exact <= upper consistency check;
    // nullopt for non-numeric informational rows.
    std::optional<double> numeric() const {
        if (std::holds_alternative<Rational>(value)) return std::get<Rational>(value).to_double();
        if (std::holds_alternative<long long>(value))
            return static_cast<double>(std::get<long long>(value));
        if (std::holds_alternative<double>(value)) return std::get<double>(value);
        return std::nullopt;
    }

    std::string kind_str() const {
        switch (kind) {
            case Kind::lower: return "lower";
            case Kind::upper: return "upper";
            case Kind::exact: return "exact";
            case Kind::info: return "info";
        }
        return "?";
    }
};

struct BoundReport {
    int n;
    std::optional<int> k;
    DSpec d;
    std::vector<BoundRow> rows;
};

// Registry of formula anchors; every emitted row's anchor comes from here.
// Anchor text stays comma-free so CSV output never needs quoting.
inline const std::map<std::string, std::string>& bound_anchor_registry() {
    static const std::map<std::string, std::string> reg = {
        {"interval_exact", "ceil(n/(2i))"},
        {"singleton_lower", "(n-i+1)/2"},
        {"singleton_upper", "n-i+1"},
        {"singleton_one_exact", "ceil(n/2) at i=1"},
        {"counting_lower", "C(n;k)/(2*C(ceil(n/2);ceil(k/2))*C(floor(n/2);floor(k/2)))"},
        {"entropy_special_lower", "log2(n-k+2) when k even and k/2 odd"},
        {"entropy_lower", "ceil(log2(ceil(n/ceil(k/2))))"},
        {"separating_exact", "ceil(log2(n)) at k=2"},
        {"nminus2_exact", "3 at k=n-2 with n even >= 6"},
        {"linear_k_lower", "delta(c)*n for one of k..k-3 with delta unquantified"},
        {"chernoff_threshold", "sqrt(3n*ln(2m)/t)"},
        {"chernoff_size", "t draws suffice when t <= (1/2)log2(m)"},
        {"lll_upper", "ceil(sqrt(k)/0.67*(ln(d+1)+1)) with d=C(n;k)-C(n-k;k)-1"},
        {"solver_exact", "certified minimum cover from the exact solver"},
        {"construction_size", "members emitted by the matching construction"},
    };
    return reg;
}

inline BoundRow make_row(const std::string& label, BoundRow::Kind kind,
                         std::variant<Rational, double, long long, std::string> value,
                         bool applicable = true) {
    auto it = bound_anchor_registry().find(label);
    if (it == bound_anchor_registry().end())
        throw contract_error("bound row label '" + label + "' not in registry");
    return {label, kind, std::move(value), it->second, applicable};
}

struct ReportInputs {
    std::optional<double> linear_c;            // Omega(n) flag row, needs 0 < c < 1/2
    std::optional<std::pair<std::size_t, int>> chernoff_mt;  // (m, t) for threshold rows
};

// Formula rows for one (n, k, D) cell.  Exact solver values and construction
// sizes are merged in by the caller, which has the solver at hand.
inline BoundReport bound_rows(int n, std::optional<int> k, DSpec d, ReportInputs in = {}) {
    BoundReport rep{n, k, d, {}};
    if (d.kind == DSpec::Kind::interval && d.i >= 1 && !k)
        rep.rows.push_back(make_row("interval_exact", BoundRow::Kind::exact,
                                    static_cast<long long>(interval_exact(n, d.i))));
    if (d.kind == DSpec::Kind::singleton && d.i >= 1 && d.i <= n && !k) {
        auto [lo, hi] = singleton_bracket(n, d.i);
        rep.rows.push_back(make_row("singleton_lower", BoundRow::Kind::lower, lo));
        rep.rows.push_back(make_row("singleton_upper", BoundRow::Kind::upper,
                                    static_cast<long long>(hi)));
        if (d.i == 1)
            rep.rows.push_back(make_row("singleton_one_exact", BoundRow::Kind::exact,
                                        static_cast<long long>((n + 1) / 2)));
    }
    if (k && d.symmetric() && d.i <= 1) {
        if (*k >= 1) rep.rows.push_back(make_row("counting_lower", BoundRow::Kind::lower,
                                                 counting_lower(n, *k)));
        if (*k >= 2) {
            auto ent = entropy_lower(n, *k);
            if (ent.special_applies)
                rep.rows.push_back(
                    make_row("entropy_special_lower", BoundRow::Kind::lower, ent.special));
            rep.rows.push_back(make_row("entropy_lower", BoundRow::Kind::lower,
                                        static_cast<long long>(ent.always)));
        }
        if (*k == 2)
            rep.rows.push_back(make_row("separating_exact", BoundRow::Kind::exact,
                                        static_cast<long long>(
                                            n <= 1 ? 0 : std::bit_width(
                                                             static_cast<unsigned>(n - 1)))));
        if (n % 2 == 0 && n >= 6 && *k == n - 2)
            rep.rows.push_back(make_row("nminus2_exact", BoundRow::Kind::exact,
                                        static_cast<long long>(3)));
        if (*k >= 1) {
            bigint dep = big_binomial(n, *k) - big_binomial(n - *k, *k) - 1;
            double depd = dep.convert_to<double>();
            long long dl = depd > 9.0e18 ? 9000000000000000000LL : dep.convert_to<long long>();
            rep.rows.push_back(make_row("lll_upper", BoundRow::Kind::upper,
                                        static_cast<long long>(lll_size(*k, dl))));
        }
    }
    if (in.linear_c) {
        double c = *in.linear_c;
        if (!(c > 0 && c < 0.5)) throw contract_error("linear-k flag needs 0 < c < 1/2");
        rep.rows.push_back(make_row("linear_k_lower", BoundRow::Kind::info,
                                    std::string("unquantified Omega(n)")));
    }
    if (in.chernoff_mt) {
        auto [m, t] = *in.chernoff_mt;
        double thr = chernoff_threshold(n, m, t);
        rep.rows.push_back(make_row("chernoff_threshold", BoundRow::Kind::info, thr));
        rep.rows.push_back(make_row("chernoff_size", BoundRow::Kind::info,
                                    static_cast<long long>(t), chernoff_t_in_range(m, t)));
    }
    return rep;
}

// lower <= exact <= upper over the numeric rows; info rows do not take part.
inline bool report_consistent(const BoundReport& rep) {
    std::optional<double> exact;
    for (const auto& row : rep.rows)
        if (row.kind == BoundRow::Kind::exact && row.applicable)
            if (auto v = row.numeric()) exact = v;
    if (!exact) return true;
    for (const auto& row : rep.rows) {
        if (!row.applicable) continue;
        auto v = row.numeric();
        if (!v) continue;
        if (row.kind == BoundRow::Kind::lower && *v > *exact + 1e-9) return false;
        if (row.kind == BoundRow::Kind::upper && *v < *exact - 1e-9) return false;
    }
    return true;
}

}  // namespace bisect

#endif
