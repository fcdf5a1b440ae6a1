/*
 * Command-line front end: construct / verify / solve / disc / random /
 * bounds / table.
 *
 * Families on the command line are file paths, "-" for stdin, or generator
 * shorthands (all-nonempty, all:k, odd, parity:i, pairs, uppertail:k,
 * hadamard:k).  Shorthands need a ground-set size, taken from --n or from
 * whichever other family argument came from a file.
 *
 * Exit codes: 0 success, 1 verification failure or infeasible instance,
 * 2 usage or input error, 3 resource-limit stop.  Primary output (JSON or
 * CSV) goes to stdout and is bit-reproducible for fixed arguments; notes and
 * diagnostics go to stderr.  --manifest FILE additionally records the
 * command line, input digests, seeds, and an output digest.
 */
#ifndef BISECT_CLI_HPP
#define BISECT_CLI_HPP

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bisect/bounds.hpp"
#include "bisect/constructions.hpp"
#include "bisect/core.hpp"
#include "bisect/io.hpp"
#include "bisect/randomized.hpp"
#include "bisect/solver.hpp"

namespace bisect {

inline constexpr const char* cli_version = "0.1.0";

namespace cli_detail {

inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

struct RunContext {
    std::ostringstream out;  // primary output, flushed once at the end
    std::ostream& err;
    std::istream& in;
    std::string manifest_path;
    std::vector<std::pair<std::string, std::string>> input_digests;
    std::vector<std::uint64_t> seeds;
    std::string command_line;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    explicit RunContext(std::ostream& e, std::istream& i) : err(e), in(i) {}
};

inline nlohmann::json family_json(const Family& fam) {
    nlohmann::json j;
    j["n"] = fam.ground.n;
    auto sets = nlohmann::json::array();
    for (const auto& m : fam.members) sets.push_back(m.elements());
    j["sets"] = std::move(sets);
    return j;
}

inline bool is_shorthand(const std::string& spec) {
    return spec == "all-nonempty" || spec == "odd" || spec == "pairs" ||
           spec.rfind("all:", 0) == 0 || spec.rfind("parity:", 0) == 0 ||
           spec.rfind("uppertail:", 0) == 0 || spec.rfind("hadamard:", 0) == 0;
}

inline int shorthand_param(const std::string& spec) {
    auto colon = spec.find(':');
    try {
        std::size_t used;
        int v = std::stoi(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw parse_error("bad parameter in family shorthand '" + spec + "'");
    }
}

inline Family family_from_shorthand(const std::string& spec, std::optional<int> n) {
    if (spec.rfind("hadamard:", 0) == 0) return hadamard_system(shorthand_param(spec)).first;
    if (!n)
        throw parse_error("family shorthand '" + spec +
                          "' needs a ground-set size; pass --n or give a file-based family");
    if (spec == "all-nonempty") return generate_family(*n, FamilyKind::all_nonempty());
    if (spec == "odd") return generate_family(*n, FamilyKind::odd());
    if (spec == "pairs") return generate_family(*n, FamilyKind::pairs());
    if (spec.rfind("all:", 0) == 0)
        return generate_family(*n, FamilyKind::all_k(shorthand_param(spec)));
    if (spec.rfind("parity:", 0) == 0)
        return generate_family(*n, FamilyKind::parity(shorthand_param(spec)));
    if (spec.rfind("uppertail:", 0) == 0)
        return generate_family(*n, FamilyKind::upper_tail(shorthand_param(spec)));
    throw parse_error("unknown family shorthand '" + spec + "'");
}

inline Family load_family(RunContext& ctx, const std::string& spec, std::optional<int> n) {
    if (spec == "-") {
        std::ostringstream buf;
        buf << ctx.in.rdbuf();
        std::string text = buf.str();
        ctx.input_digests.emplace_back("<stdin>", hex64(fnv1a(text)));
        Family fam = read_family_string(text);
        if (fam.dedup) ctx.err << "note: dropped duplicate members from stdin family\n";
        return fam;
    }
    if (is_shorthand(spec)) return family_from_shorthand(spec, n);
    std::ifstream is(spec, std::ios::binary);
    if (!is) throw parse_error("cannot open family file '" + spec + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    std::string text = buf.str();
    ctx.input_digests.emplace_back(spec, hex64(fnv1a(text)));
    Family fam = read_family_string(text);
    if (fam.dedup) ctx.err << "note: dropped duplicate members from '" << spec << "'\n";
    return fam;
}

// Two family arguments where shorthands borrow n from the file-based one.
inline std::pair<Family, Family> load_family_pair(RunContext& ctx, const std::string& a,
                                                  const std::string& b, std::optional<int> n) {
    std::optional<Family> fa, fb;
    if (!is_shorthand(a)) fa = load_family(ctx, a, n);
    if (!is_shorthand(b)) fb = load_family(ctx, b, n);
    std::optional<int> known = n;
    if (!known && fa) known = fa->ground.n;
    if (!known && fb) known = fb->ground.n;
    if (!fa) fa = load_family(ctx, a, known);
    if (!known) known = fa->ground.n;
    if (!fb) fb = load_family(ctx, b, known);
    return {std::move(*fa), std::move(*fb)};
}

inline void write_manifest(RunContext& ctx) {
    if (ctx.manifest_path.empty()) return;
    nlohmann::json j;
    j["command_line"] = ctx.command_line;
    j["version"] = cli_version;
    j["seeds"] = ctx.seeds;
    nlohmann::json digests = nlohmann::json::object();
    for (const auto& [path, digest] : ctx.input_digests) digests[path] = digest;
    j["input_digests"] = std::move(digests);
    j["wall_clock_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - ctx.started)
                             .count();
    j["output_digest"] = hex64(fnv1a(ctx.out.str()));
    std::ofstream os(ctx.manifest_path);
    if (!os) throw parse_error("cannot write manifest '" + ctx.manifest_path + "'");
    os << j.dump(2) << "\n";
}

// --- construct ---------------------------------------------------------------

struct ConstructArgs {
    std::string name;
    int n = 0, i = 0, k = 0;
    bool has_n = false, has_i = false, has_k = false;
    std::string format = "json";
    bool no_verify = false;
    std::string edges_spec;
    std::string coloring_path;
};

inline int run_construct(RunContext& ctx, const ConstructArgs& a) {
    auto need = [&](bool have, const std::string& flag) {
        if (!have)
            throw parse_error("construct " + a.name + " requires " + flag);
    };
    std::optional<ConstructionTrace> trace;
    std::optional<Family> emitted;
    std::string header;

    if (a.name == "interval-swap") {
        need(a.has_n, "--n");
        need(a.has_i, "--i");
        trace = interval_swap_family(a.n, a.i);
    } else if (a.name == "singleton-one") {
        need(a.has_n, "--n");
        trace = singleton_one_family(a.n);
    } else if (a.name == "chain") {
        need(a.has_n, "--n");
        need(a.has_i, "--i");
        trace = chain_family(a.n, a.i);
    } else if (a.name == "uppertail") {
        need(a.has_n, "--n");
        need(a.has_k, "--k");
        trace = upper_tail_family(a.n, a.k);
    } else if (a.name == "binary-code") {
        need(a.has_n, "--n");
        trace = binary_code_family(a.n);
    } else if (a.name == "bipartite") {
        if (a.edges_spec.empty())
            throw parse_error("construct bipartite requires --family (the edge family)");
        Family edges = load_family(ctx, a.edges_spec,
                                   a.has_n ? std::optional<int>(a.n) : std::nullopt);
        std::optional<std::vector<int>> coloring;
        if (!a.coloring_path.empty()) {
            std::ifstream is(a.coloring_path);
            if (!is) throw parse_error("cannot open coloring '" + a.coloring_path + "'");
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(is);
            } catch (const nlohmann::json::parse_error& e) {
                throw parse_error(std::string("coloring JSON: ") + e.what());
            }
            if (!j.is_array()) throw parse_error("coloring must be a JSON array of integers");
            coloring = std::vector<int>();
            for (const auto& c : j) coloring->push_back(c.get<int>());
        }
        auto parts = bipartite_cover(edges, coloring ? &*coloring : nullptr);
        Family fam(edges.ground);
        for (auto& p : parts) fam.push_back(std::move(p));
        if (!a.no_verify) {
            auto res = verify_dsecting(edges, fam, DSpec::singleton(0));
            if (!res.ok) {
                ctx.err << "error: bipartite cover failed to split edge index "
                        << *res.witness_index << "\n";
                return 1;
            }
            ctx.err << "verified: " << fam.size() << " bipartitions split all "
                    << edges.size() << " edges\n";
        }
        header = "bipartite n=" + std::to_string(edges.ground.n) +
                 " size=" + std::to_string(fam.size());
        emitted = std::move(fam);
    } else if (a.name == "hadamard") {
        need(a.has_k, "--k");
        auto [hf, bisectors] = hadamard_system(a.k);
        if (!a.no_verify) {
            auto res = verify_dsecting(hf, bisectors, DSpec::interval(1));
            if (!res.ok) {
                ctx.err << "error: bisectors failed on system row " << *res.witness_index << "\n";
                return 1;
            }
            ctx.err << "verified: 2 sets interval:1-sect all " << hf.size()
                    << " system rows (use family shorthand hadamard:" << a.k
                    << " for the system itself)\n";
        }
        header = "hadamard k=" + std::to_string(a.k) +
                 " size=" + std::to_string(bisectors.size());
        emitted = std::move(bisectors);
    } else {
        throw parse_error("unknown construction '" + a.name +
                          "'; have interval-swap, singleton-one, chain, uppertail, "
                          "binary-code, bipartite, hadamard");
    }

    if (trace) {
        if (!a.no_verify) {
            try {
                Family target = generate_family(trace->n, trace->claimed_target);
                auto res = verify_dsecting(target, trace->family, trace->claimed_D);
                if (!res.ok) {
                    ctx.err << "error: construction failed verification at target member "
                            << *res.witness_index << "\n";
                    return 1;
                }
                ctx.err << "verified: " << trace->family.size() << " members "
                        << trace->claimed_D.str() << "-sect " << target.size() << " "
                        << trace->claimed_target.str() << " sets over [n]=" << trace->n << "\n";
            } catch (const resource_error&) {
                ctx.err << "note: verification skipped, target family exceeds the "
                           "enumeration budget (BISECT_ENUM_BUDGET)\n";
            }
        }
        header = trace->name + " n=" + std::to_string(trace->n) +
                 (trace->param ? " param=" + std::to_string(trace->param) : "") +
                 " size=" + std::to_string(trace->claimed_size) + " D=" + trace->claimed_D.str() +
                 " target=" + trace->claimed_target.str();
        emitted = std::move(trace->family);
    }

    write_family(*emitted, ctx.out,
                 a.format == "compact" ? FamilyFormat::compact : FamilyFormat::json, header);
    return 0;
}

// --- bounds / table ----------------------------------------------------------

struct CellValues {
    std::optional<double> lower;
    std::string lower_str;
    std::optional<double> upper;
    std::string upper_str;
    std::optional<int> construction;
    std::optional<int> exact;
    bool proven = true;
    bool budget_hit = false;
};

inline FamilyKind cell_family_kind(std::optional<int> k, DSpec d) {
    if (k) return FamilyKind::all_k(*k);
    if (d.kind == DSpec::Kind::singleton) return FamilyKind::parity(d.i);
    return FamilyKind::all_nonempty();
}

inline std::optional<int> cell_construction_size(int n, std::optional<int> k, DSpec d) {
    if (!k && d.kind == DSpec::Kind::interval && d.i >= 1)
        return interval_swap_family(n, d.i).family.size();
    if (!k && d.kind == DSpec::Kind::singleton && d.i >= 1 && d.i <= n)
        return chain_family(n, d.i).family.size();
    if (k && *k == 2 && d.contains(0) && n >= 2)
        return binary_code_family(n).family.size();
    return std::nullopt;
}

inline CellValues table_cell(int n, std::optional<int> k, DSpec d, bool with_exact,
                             bool with_constructions) {
    CellValues cell;
    BoundReport rep = bound_rows(n, k, d);
    for (const auto& row : rep.rows) {
        if (!row.applicable) continue;
        auto v = row.numeric();
        if (!v) continue;
        if ((row.kind == BoundRow::Kind::lower || row.kind == BoundRow::Kind::exact) &&
            (!cell.lower || *v > *cell.lower)) {
            cell.lower = *v;
            cell.lower_str = row.value_str();
        }
        if ((row.kind == BoundRow::Kind::upper || row.kind == BoundRow::Kind::exact) &&
            (!cell.upper || *v < *cell.upper)) {
            cell.upper = *v;
            cell.upper_str = row.value_str();
        }
    }
    if (with_constructions)
        if (auto c = cell_construction_size(n, k, d)) cell.construction = *c;
    if (with_exact) {
        // Singleton imbalance i over [n] with i > n targets an empty family.
        if (!k && d.kind == DSpec::Kind::singleton && d.i > n) {
            cell.exact = 0;
            return cell;
        }
        try {
            Family fam = generate_family(n, cell_family_kind(k, d));
            BetaResult res = exact_beta(fam, d);
            cell.exact = res.value;
            cell.proven = res.proven_optimal;
        } catch (const resource_error&) {
            cell.budget_hit = true;
        }
    }
    return cell;
}

struct BoundsArgs {
    int n = 0;
    std::optional<int> k;
    std::string d_spec;
    std::optional<double> linear_c;
    std::optional<std::size_t> chern_m;
    std::optional<int> chern_t;
    bool with_exact = false;
    bool with_constructions = false;
    std::string format = "csv";
};

inline int run_bounds(RunContext& ctx, const BoundsArgs& a) {
    DSpec d = DSpec::parse(a.d_spec);
    ReportInputs inputs;
    inputs.linear_c = a.linear_c;
    if (a.chern_m && a.chern_t) inputs.chernoff_mt = {{*a.chern_m, *a.chern_t}};
    BoundReport rep = bound_rows(a.n, a.k, d, inputs);
    if (a.with_constructions)
        if (auto c = cell_construction_size(a.n, a.k, d))
            rep.rows.push_back(make_row("construction_size", BoundRow::Kind::upper,
                                        static_cast<long long>(*c)));
    bool budget_hit = false;
    if (a.with_exact) {
        try {
            Family fam = generate_family(a.n, cell_family_kind(a.k, d));
            BetaResult res = exact_beta(fam, d);
            rep.rows.push_back(make_row("solver_exact",
                                        res.proven_optimal ? BoundRow::Kind::exact
                                                           : BoundRow::Kind::upper,
                                        static_cast<long long>(res.value)));
        } catch (const resource_error& e) {
            ctx.err << "note: exact value skipped: " << e.what() << "\n";
            budget_hit = true;
        }
    }
    if (!report_consistent(rep))
        ctx.err << "warning: bound rows are mutually inconsistent; please report this\n";
    if (a.format == "json") {
        nlohmann::json j;
        j["n"] = rep.n;
        if (rep.k) j["k"] = *rep.k;
        j["D"] = rep.d.str();
        auto rows = nlohmann::json::array();
        for (const auto& row : rep.rows)
            rows.push_back({{"label", row.label},
                            {"kind", row.kind_str()},
                            {"value", row.value_str()},
                            {"anchor", row.anchor},
                            {"applicable", row.applicable}});
        j["rows"] = std::move(rows);
        ctx.out << j.dump() << "\n";
    } else {
        ctx.out << "label,kind,value,anchor\n";
        for (const auto& row : rep.rows)
            ctx.out << row.label << (row.applicable ? "" : " (n/a)") << "," << row.kind_str()
                    << "," << row.value_str() << "," << row.anchor << "\n";
    }
    return budget_hit ? 3 : 0;
}

struct TableArgs {
    std::string n_range;
    std::string k_spec;
    std::string d_spec;
    bool with_exact = false;
    bool with_constructions = false;
};

inline std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            std::size_t used;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return {v, v};
        }
        std::size_t ua, ub;
        int a = std::stoi(s.substr(0, dots), &ua);
        int b = std::stoi(s.substr(dots + 2), &ub);
        if (ua != dots || ub != s.size() - dots - 2) throw std::invalid_argument("");
        return {a, b};
    } catch (const std::exception&) {
        throw parse_error("bad range '" + s + "', want INT or A..B");
    }
}

inline int run_table(RunContext& ctx, const TableArgs& a) {
    DSpec d = DSpec::parse(a.d_spec);
    auto [n_lo, n_hi] = parse_range(a.n_range);
    if (n_lo < 1 || n_hi < n_lo) throw parse_error("bad n range");
    bool any_budget_hit = false;
    ctx.out << "n,k,D,lower,upper,construction,exact,proven,gap\n";
    for (int n = n_lo; n <= n_hi; ++n) {
        std::vector<std::optional<int>> ks;
        if (a.k_spec.empty()) {
            ks.push_back(std::nullopt);
        } else if (a.k_spec.rfind("n-", 0) == 0) {
            int delta;
            try {
                std::size_t used;
                delta = std::stoi(a.k_spec.substr(2), &used);
                if (used != a.k_spec.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw parse_error("bad --k spec '" + a.k_spec + "'");
            }
            if (n - delta < 1) continue;
            ks.push_back(n - delta);
        } else {
            auto [k_lo, k_hi] = parse_range(a.k_spec);
            for (int k = k_lo; k <= std::min(k_hi, n); ++k) ks.push_back(k);
        }
        for (auto k : ks) {
            CellValues cell = table_cell(n, k, d, a.with_exact, a.with_constructions);
            any_budget_hit |= cell.budget_hit;
            ctx.out << n << "," << (k ? std::to_string(*k) : "") << "," << d.str() << ","
                    << cell.lower_str << "," << cell.upper_str << ","
                    << (cell.construction ? std::to_string(*cell.construction) : "") << ",";
            if (cell.budget_hit)
                ctx.out << "?";
            else if (cell.exact)
                ctx.out << *cell.exact;
            ctx.out << "," << (cell.proven ? "yes" : "no") << ",";
            if (cell.exact && cell.upper)
                ctx.out << static_cast<long long>(*cell.upper + 1e-9) - *cell.exact;
            ctx.out << "\n";
        }
    }
    return any_budget_hit ? 3 : 0;
}

}  // namespace cli_detail

// args excludes the program name.  Primary output goes to out; in stands in
// for stdin so tests can drive pipelines.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   std::istream& in = std::cin) {
    using namespace cli_detail;
    RunContext ctx(err, in);
    {
        std::ostringstream cmd;
        cmd << "bisect";
        for (const auto& a : args) cmd << " " << a;
        ctx.command_line = cmd.str();
    }

    CLI::App app{"D-secting families: constructions, verification, exact covers"};
    app.set_version_flag("--version", cli_version);
    app.require_subcommand(1);
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write a reproducibility manifest (JSON)");

    // construct
    ConstructArgs ca;
    auto* c_construct = app.add_subcommand("construct", "emit a deterministic construction");
    c_construct->add_option("name", ca.name, "construction name")->required();
    auto* opt_n = c_construct->add_option("--n", ca.n, "ground-set size");
    auto* opt_i = c_construct->add_option("--i", ca.i, "imbalance parameter i");
    auto* opt_k = c_construct->add_option("--k", ca.k, "cardinality parameter k");
    c_construct->add_option("--format", ca.format, "json or compact")
        ->check(CLI::IsMember({"json", "compact"}));
    c_construct->add_flag("--no-verify", ca.no_verify, "skip output verification");
    c_construct->add_option("--family", ca.edges_spec, "edge family (bipartite only)");
    c_construct->add_option("--coloring", ca.coloring_path, "proper coloring JSON (bipartite)");

    // verify
    std::string v_family, v_secting = "-", v_d;
    std::optional<int> v_n;
    auto* c_verify = app.add_subcommand("verify", "check that one family D-sects another");
    c_verify->add_option("--family", v_family, "the family to be D-sected")->required();
    c_verify->add_option("--secting", v_secting, "the candidate D-secting family (default stdin)");
    c_verify->add_option("--D", v_d, "imbalance set, interval:i or singleton:i")->required();
    c_verify->add_option("--n", v_n, "ground-set size for shorthands");

    // solve
    std::string s_family, s_d;
    std::optional<int> s_n;
    std::uint64_t s_nodes = 0;
    double s_time = 0;
    bool s_full = false, s_nodom = false, s_nosym = false;
    auto* c_solve = app.add_subcommand("solve", "exact minimum D-secting family");
    c_solve->add_option("--family", s_family, "family (file, -, or shorthand)")->required();
    c_solve->add_option("--D", s_d, "imbalance set")->required();
    c_solve->add_option("--n", s_n, "ground-set size for shorthands");
    c_solve->add_option("--node-limit", s_nodes, "stop after this many search nodes");
    c_solve->add_option("--time-limit", s_time, "stop after this many seconds");
    c_solve->add_flag("--full-candidates", s_full, "disable complement reduction");
    c_solve->add_flag("--no-dominance", s_nodom, "disable dominated-candidate pruning");
    c_solve->add_flag("--no-symmetry", s_nosym, "disable orbit search for level-complete families");

    // disc
    std::string di_family;
    std::optional<int> di_n;
    auto* c_disc = app.add_subcommand("disc", "exact discrepancy of a family");
    c_disc->add_option("--family", di_family, "family (file, -, or shorthand)")->required();
    c_disc->add_option("--n", di_n, "ground-set size for shorthands");

    // random
    auto* c_random = app.add_subcommand("random", "seeded randomized constructions");
    c_random->require_subcommand(1);
    std::string r_family;
    std::optional<int> r_n;
    std::uint64_t r_seed = 0;
    int r_t = 0;
    std::uint64_t r_restarts = default_restart_budget;
    auto* c_chern = c_random->add_subcommand("chernoff", "threshold-accepted coin-flip draws");
    c_chern->add_option("--family", r_family, "family to D-sect")->required();
    c_chern->add_option("--n", r_n, "ground-set size for shorthands");
    c_chern->add_option("--t", r_t, "number of draws")->required();
    auto* chern_seed = c_chern->add_option("--seed", r_seed, "run seed")->required();
    c_chern->add_option("--restarts", r_restarts, "restart budget");

    std::string l_family;
    std::optional<int> l_n, l_t;
    std::uint64_t l_seed = 0, l_resamples = 0;
    auto* c_lll = c_random->add_subcommand("lll", "local-lemma resampling bisection");
    c_lll->add_option("--family", l_family, "k-uniform family to bisect")->required();
    c_lll->add_option("--n", l_n, "ground-set size for shorthands");
    c_lll->add_option("--t", l_t, "override the derived draw count");
    auto* lll_seed = c_lll->add_option("--seed", l_seed, "run seed")->required();
    c_lll->add_option("--resamples", l_resamples, "resample budget (default 1000*m)");

    int h_n = 0, h_k = 0;
    std::optional<int> h_t;
    std::uint64_t h_seed = 0, h_resamples = 0;
    auto* c_half = c_random->add_subcommand("lllhalf", "resampling with exact-half draws");
    c_half->add_option("--n", h_n, "even ground-set size")->required();
    c_half->add_option("--k", h_k, "even member cardinality")->required();
    c_half->add_option("--t", h_t, "override the derived draw count");
    auto* half_seed = c_half->add_option("--seed", h_seed, "run seed")->required();
    c_half->add_option("--resamples", h_resamples, "resample budget (default 1000*m)");

    // bounds
    BoundsArgs ba;
    auto* c_bounds = app.add_subcommand("bounds", "closed-form bound report for one cell");
    c_bounds->add_option("--n", ba.n, "ground-set size")->required();
    c_bounds->add_option("--k", ba.k, "member cardinality");
    c_bounds->add_option("--D", ba.d_spec, "imbalance set")->required();
    c_bounds->add_option("--c", ba.linear_c, "linear-k constant in (0, 1/2), adds the flag row");
    c_bounds->add_option("--m", ba.chern_m, "family size for the threshold rows");
    c_bounds->add_option("--t", ba.chern_t, "draw count for the threshold rows");
    c_bounds->add_flag("--with-exact", ba.with_exact, "solve the matching family exactly");
    c_bounds->add_flag("--with-constructions", ba.with_constructions,
                       "add matching construction sizes");
    c_bounds->add_option("--format", ba.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // table
    TableArgs ta;
    auto* c_table = app.add_subcommand("table", "sweep a grid of cells to CSV");
    c_table->add_option("--n", ta.n_range, "ground-set sizes, INT or A..B")->required();
    c_table->add_option("--k", ta.k_spec, "cardinalities: INT, A..B, or n-INT");
    c_table->add_option("--D", ta.d_spec, "imbalance set")->required();
    c_table->add_flag("--with-exact", ta.with_exact, "solve each cell exactly");
    c_table->add_flag("--with-constructions", ta.with_constructions,
                      "add matching construction sizes");

    int code = 0;
    try {
        std::vector<std::string> argv_like(args.rbegin(), args.rend());
        try {
            app.parse(argv_like);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForVersion&) {
            out << cli_version << "\n";
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << "\n";
            return 2;
        }
        ctx.manifest_path = manifest_path;

        if (*c_construct) {
            ca.has_n = opt_n->count() > 0;
            ca.has_i = opt_i->count() > 0;
            ca.has_k = opt_k->count() > 0;
            code = run_construct(ctx, ca);
        } else if (*c_verify) {
            auto [fam, secting] = load_family_pair(ctx, v_family, v_secting, v_n);
            auto res = verify_dsecting(fam, secting, DSpec::parse(v_d));
            nlohmann::json j;
            j["ok"] = res.ok;
            if (!res.ok) {
                j["witness_index"] = *res.witness_index;
                j["witness"] = res.witness->elements();
            }
            ctx.out << j.dump() << "\n";
            code = res.ok ? 0 : 1;
        } else if (*c_solve) {
            Family fam = load_family(ctx, s_family, s_n);
            SolveLimits limits{s_nodes, s_time};
            SolveOptions options;
            options.complement_reduction = !s_full;
            options.symmetry_reduction = !s_nosym;
            if (s_nodom) options.dominance_cap = 0;
            BetaResult res = exact_beta(fam, DSpec::parse(s_d), limits, options);
            nlohmann::json j;
            j["value"] = res.value;
            j["witness"] = family_json(res.witness);
            j["nodes"] = res.nodes;
            j["proven_optimal"] = res.proven_optimal;
            ctx.out << j.dump() << "\n";
            code = res.proven_optimal ? 0 : 3;
        } else if (*c_disc) {
            Family fam = load_family(ctx, di_family, di_n);
            DiscResult res = exact_discrepancy(fam);
            nlohmann::json j;
            j["value"] = res.value;
            j["witness"] = {{"n", fam.ground.n}, {"set", res.witness.elements()}};
            ctx.out << j.dump() << "\n";
            code = 0;
        } else if (*c_random) {
            auto emit_run = [&](const RandomRun& run) {
                nlohmann::json j;
                j["seed"] = run.seed;
                j["t"] = run.t;
                j["iterations"] = run.iterations;
                j["resamples"] = run.resamples;
                j["family"] = family_json(run.family);
                j["verified"] = run.verified;
                ctx.out << j.dump() << "\n";
            };
            if (*c_chern) {
                (void)chern_seed;
                ctx.seeds.push_back(r_seed);
                Family fam = load_family(ctx, r_family, r_n);
                RandomRun run = chernoff_family(fam, r_t, r_seed, r_restarts);
                ctx.err << "accepted after " << run.iterations << " iteration(s)\n";
                emit_run(run);
            } else if (*c_lll) {
                (void)lll_seed;
                ctx.seeds.push_back(l_seed);
                Family fam = load_family(ctx, l_family, l_n);
                RandomRun run = lll_bisecting(fam, l_seed, l_t, l_resamples);
                ctx.err << "t=" << run.t << ", resamples=" << run.resamples << "\n";
                emit_run(run);
            } else {
                (void)half_seed;
                ctx.seeds.push_back(h_seed);
                RandomRun run = lll_uniform_half_bisecting(h_n, h_k, h_seed, h_t, h_resamples);
                ctx.err << "t=" << run.t << ", resamples=" << run.resamples << "\n";
                emit_run(run);
            }
            code = 0;
        } else if (*c_bounds) {
            code = run_bounds(ctx, ba);
        } else if (*c_table) {
            code = run_table(ctx, ta);
        }
    } catch (const infeasible_error& e) {
        err << "infeasible: " << e.what() << "\n";
        code = 1;
    } catch (const resource_error& e) {
        err << "resource limit: " << e.what() << "\n";
        code = 3;
    } catch (const parse_error& e) {
        err << "input error: " << e.what() << "\n";
        code = 2;
    } catch (const contract_error& e) {
        err << "parameter error: " << e.what() << "\n";
        code = 2;
    }

    out << ctx.out.str();
    out.flush();
    write_manifest(ctx);
    return code;
}

}  // namespace bisect

#endif
