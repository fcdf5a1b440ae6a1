/*
 * Family serialization.
 *
 * JSON form:    {"n": 6, "sets": [[1,2,3],[1,2,4]]}
 * Compact form: first line "n=6", then one lowercase hex mask per line; the
 *               least-significant (rightmost) hex digit holds elements 1-4.
 *               Lines starting with '#' are comments.
 *
 * read_family sniffs the format from the first non-space byte.  Duplicate
 * members are dropped on read (the family's dedup flag records that this
 * happened); duplicate elements inside one set are a parse error.
 */
#ifndef BISECT_IO_HPP
#define BISECT_IO_HPP

#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bisect/mask.hpp"

namespace bisect {

enum class FamilyFormat { json, compact };

template <typename Block>
std::string mask_hex(const BasicSubsetMask<Block>& m) {
    int n = m.ground_size();
    int digits = (n + 3) / 4;
    std::string out(static_cast<std::size_t>(digits), '0');
    for (int g = 0; g < digits; ++g) {
        int nib = 0;
        for (int b = 0; b < 4; ++b) {
            int e = 4 * g + b + 1;
            if (e <= n && m.contains(e)) nib |= 1 << b;
        }
        out[static_cast<std::size_t>(digits - 1 - g)] = "0123456789abcdef"[nib];
    }
    return out;
}

template <typename Block = std::uint64_t>
BasicSubsetMask<Block> mask_from_hex(int n, const std::string& hex, int line_no) {
    BasicSubsetMask<Block> m(n);
    int digits = static_cast<int>(hex.size());
    for (int pos = 0; pos < digits; ++pos) {
        char c = hex[static_cast<std::size_t>(pos)];
        int nib;
        if (c >= '0' && c <= '9') nib = c - '0';
        else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
        else
            throw parse_error("line " + std::to_string(line_no) + ": bad hex digit '" +
                              std::string(1, c) + "'");
        int g = digits - 1 - pos;
        for (int b = 0; b < 4; ++b)
            if (nib & (1 << b)) {
                int e = 4 * g + b + 1;
                if (e > n)
                    throw parse_error("line " + std::to_string(line_no) + ": element " +
                                      std::to_string(e) + " outside [1.." + std::to_string(n) + "]");
                m.add(e);
            }
    }
    return m;
}

template <typename Block>
void write_family(const BasicFamily<Block>& fam, std::ostream& os,
                  FamilyFormat fmt = FamilyFormat::json, const std::string& header = "") {
    if (fmt == FamilyFormat::json) {
        nlohmann::json j;
        j["n"] = fam.ground.n;
        auto sets = nlohmann::json::array();
        for (const auto& m : fam.members) sets.push_back(m.elements());
        j["sets"] = std::move(sets);
        os << j.dump() << "\n";
    } else {
        if (!header.empty()) os << "# " << header << "\n";
        os << "n=" << fam.ground.n << "\n";
        for (const auto& m : fam.members) os << mask_hex(m) << "\n";
    }
}

namespace detail {

template <typename Block>
BasicFamily<Block> family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("sets"))
        throw parse_error("family JSON must be an object with \"n\" and \"sets\"");
    if (!j["n"].is_number_integer()) throw parse_error("\"n\" must be an integer");
    int n = j["n"].get<int>();
    if (n < 1) throw parse_error("\"n\" must be >= 1, got " + std::to_string(n));
    if (!j["sets"].is_array()) throw parse_error("\"sets\" must be an array of arrays");
    BasicFamily<Block> fam((GroundSet(n)));
    std::set<std::vector<int>> seen;
    std::size_t idx = 0;
    for (const auto& js : j["sets"]) {
        if (!js.is_array())
            throw parse_error("set " + std::to_string(idx) + " is not an array");
        BasicSubsetMask<Block> m(n);
        std::vector<int> elems;
        for (const auto& je : js) {
            if (!je.is_number_integer())
                throw parse_error("set " + std::to_string(idx) + " has a non-integer element");
            long long e = je.get<long long>();
            if (e < 1 || e > n)
                throw parse_error("set " + std::to_string(idx) + ": element " + std::to_string(e) +
                                  " outside [1.." + std::to_string(n) + "]");
            if (m.contains(static_cast<int>(e)))
                throw parse_error("set " + std::to_string(idx) + ": duplicate element " +
                                  std::to_string(e));
            m.add(static_cast<int>(e));
        }
        if (seen.insert(m.elements()).second)
            fam.members.push_back(std::move(m));
        else
            fam.dedup = true;
        ++idx;
    }
    return fam;
}

template <typename Block>
BasicFamily<Block> family_from_compact(std::istream& is) {
    std::string line;
    int line_no = 0;
    int n = -1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("n=", 0) != 0)
            throw parse_error("line " + std::to_string(line_no) + ": expected header n=<int>");
        try {
            std::size_t used;
            n = std::stoi(line.substr(2), &used);
            if (used != line.size() - 2) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw parse_error("line " + std::to_string(line_no) + ": bad header '" + line + "'");
        }
        if (n < 1)
            throw parse_error("line " + std::to_string(line_no) + ": n must be >= 1");
        break;
    }
    if (n < 0) throw parse_error("missing n=<int> header line");
    BasicFamily<Block> fam((GroundSet(n)));
    std::set<std::vector<int>> seen;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto m = mask_from_hex<Block>(n, line, line_no);
        if (seen.insert(m.elements()).second)
            fam.members.push_back(std::move(m));
        else
            fam.dedup = true;
    }
    return fam;
}

}  // namespace detail

template <typename Block = std::uint64_t>
BasicFamily<Block> read_family(std::istream& is) {
    // Sniff: JSON starts with '{', the compact format with 'n' or '#'.
    int c;
    while ((c = is.peek()) != EOF && std::isspace(c)) is.get();
    if (c == EOF) throw parse_error("empty family input");
    if (c == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(is);
        } catch (const nlohmann::json::parse_error& e) {
            throw parse_error(std::string("family JSON: ") + e.what());
        }
        return detail::family_from_json<Block>(j);
    }
    return detail::family_from_compact<Block>(is);
}

template <typename Block = std::uint64_t>
BasicFamily<Block> read_family_string(const std::string& text) {
    std::istringstream is(text);
    return read_family<Block>(is);
}

}  // namespace bisect

#endif
