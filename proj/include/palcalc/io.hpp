#pragma once

#include <charconv>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "colorability.hpp"
#include "palette.hpp"

namespace palcalc {

/// Malformed input; `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + reason : reason), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct PaletteDocument {
    std::string name;
    Palette palette;
};

struct HypergraphDocument {
    std::string name;
    Hypergraph graph;
    std::optional<std::vector<Vertex>> order;
};

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

/// Non-empty lines split on whitespace, with '#' comments removed.
inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto raw = text.substr(start, end - start);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ParseError(line, "not a nonnegative integer: " + tok);
    return value;
}

inline void expect_arity(const Line& l, std::size_t arity) {
    if (l.tokens.size() != arity + 1) {
        throw ParseError(l.number, "'" + l.tokens[0] + "' expects " + std::to_string(arity) + " argument(s), got " +
                                       std::to_string(l.tokens.size() - 1));
    }
}

}  // namespace detail

inline PaletteDocument parse_palette(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(0, "empty palette file");
    PaletteDocument doc;
    const auto& head = lines.front();
    if (head.tokens[0] != "palette") throw ParseError(head.number, "expected 'palette <name>'");
    detail::expect_arity(head, 1);
    doc.name = head.tokens[1];

    std::optional<Palette> names;
    std::vector<Triple> triples;
    std::set<Triple> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto& directive = l.tokens[0];
        if (directive == "colors") {
            if (names) throw ParseError(l.number, "duplicate 'colors' line");
            if (l.tokens.size() < 2) throw ParseError(l.number, "'colors' needs at least one color");
            std::vector<std::string> ns(l.tokens.begin() + 1, l.tokens.end());
            std::set<std::string> distinct(ns.begin(), ns.end());
            if (distinct.size() != ns.size()) throw ParseError(l.number, "duplicate color name");
            names = Palette(std::move(ns), {});
        } else if (directive == "triple") {
            if (!names) throw ParseError(l.number, "'triple' before 'colors'");
            detail::expect_arity(l, 3);
            ColorId ids[3];
            for (int k = 0; k < 3; ++k) {
                auto c = names->find_color(l.tokens[k + 1]);
                if (!c) throw ParseError(l.number, "undeclared color: " + l.tokens[k + 1]);
                ids[k] = *c;
            }
            Triple t{ids[0], ids[1], ids[2]};
            if (!seen.insert(t).second) throw ParseError(l.number, "duplicate triple");
            triples.push_back(t);
        } else {
            throw ParseError(l.number, "unknown directive: " + directive);
        }
    }
    if (!names) throw ParseError(0, "missing 'colors' line");
    doc.palette = make_palette(names->names(), std::move(triples));
    return doc;
}

inline std::string serialize_palette(const std::string& name, const Palette& p) {
    std::string out = "palette " + name + "\ncolors";
    for (const auto& n : p.names()) out += " " + n;
    out += "\n";
    for (const auto& t : p.triples()) {
        out += "triple " + p.name(t.left) + " " + p.name(t.middle) + " " + p.name(t.right) + "\n";
    }
    return out;
}

inline HypergraphDocument parse_hypergraph(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(0, "empty hypergraph file");
    HypergraphDocument doc;
    const auto& head = lines.front();
    if (head.tokens[0] != "hypergraph") throw ParseError(head.number, "expected 'hypergraph <name> <vertexCount>'");
    detail::expect_arity(head, 2);
    doc.name = head.tokens[1];
    const auto n = detail::parse_index(head.tokens[2], head.number);

    std::vector<Edge> edges;
    std::set<Edge> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const auto& directive = l.tokens[0];
        if (directive == "order") {
            if (doc.order) throw ParseError(l.number, "duplicate 'order' line");
            std::vector<Vertex> order;
            for (std::size_t k = 1; k < l.tokens.size(); ++k) order.push_back(detail::parse_index(l.tokens[k], l.number));
            if (!is_permutation_of_range(order, n)) throw ParseError(l.number, "order is not a permutation of the vertices");
            doc.order = std::move(order);
        } else if (directive == "edge") {
            detail::expect_arity(l, 3);
            Edge e{};
            for (int k = 0; k < 3; ++k) {
                e[k] = detail::parse_index(l.tokens[k + 1], l.number);
                if (e[k] >= n) throw ParseError(l.number, "vertex out of range: " + l.tokens[k + 1]);
            }
            std::sort(e.begin(), e.end());
            if (e[0] == e[1] || e[1] == e[2]) throw ParseError(l.number, "edge vertices must be distinct");
            if (!seen.insert(e).second) throw ParseError(l.number, "duplicate edge");
            edges.push_back(e);
        } else {
            throw ParseError(l.number, "unknown directive: " + directive);
        }
    }
    doc.graph = make_hypergraph(n, std::move(edges));
    return doc;
}

inline std::string serialize_hypergraph(const std::string& name, const Hypergraph& h,
                                        const std::optional<std::vector<Vertex>>& order = std::nullopt) {
    std::string out = "hypergraph " + name + " " + std::to_string(h.vertex_count) + "\n";
    if (order) {
        out += "order";
        for (auto v : *order) out += " " + std::to_string(v);
        out += "\n";
    }
    for (const auto& e : h.edges) {
        out += "edge " + std::to_string(e[0]) + " " + std::to_string(e[1]) + " " + std::to_string(e[2]) + "\n";
    }
    return out;
}

}  // namespace palcalc
