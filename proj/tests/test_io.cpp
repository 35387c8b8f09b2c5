#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "palcalc/builtins.hpp"
#include "palcalc/io.hpp"
#include "support/oracles.hpp"

using namespace palcalc;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(PALCALC_FIXTURE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t error_line(const std::string& text) {
    try {
        parse_palette(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::size_t hg_error_line(const std::string& text) {
    try {
        parse_hypergraph(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(ParsePalette, FixtureMatchesBuiltin) {
    auto doc = parse_palette(fixture("p481.pal"));
    EXPECT_EQ(doc.name, "P_4_81");
    EXPECT_EQ(doc.palette, builtins::p481());
    EXPECT_EQ(parse_palette(fixture("two_color.pal")).palette, builtins::two_color());
}

TEST(ParsePalette, RoundTrip) {
    for (const auto& name : builtins::registry_names()) {
        const auto p = *builtins::by_name(name);
        const auto text = serialize_palette(name, p);
        auto doc = parse_palette(text);
        EXPECT_EQ(doc.name, name);
        EXPECT_EQ(doc.palette, p);
        EXPECT_EQ(serialize_palette(doc.name, doc.palette), text);
    }
    std::mt19937_64 rng(51);
    for (int i = 0; i < 200; ++i) {
        auto p = palcalc::testing::random_palette_upto(5, rng);
        auto s = symmetrize(p);
        EXPECT_EQ(parse_palette(serialize_palette("r", s)).palette, s);
        auto pr = product({p, inverse(p)});
        EXPECT_EQ(parse_palette(serialize_palette("r", pr)).palette, pr);
    }
}

TEST(ParsePalette, Errors) {
    EXPECT_EQ(error_line(fixture("bad_arity.pal")), 3u);
    EXPECT_EQ(error_line("palette x\ncolors a b\ntriple a b c\n"), 3u);  // undeclared c
    EXPECT_EQ(error_line("palette x\ncolors a\ntriple a a a\ntriple a a a\n"), 4u);
    EXPECT_EQ(error_line("palette x\ncolors a a\n"), 2u);
    EXPECT_EQ(error_line("palette x\ncolors a\nfrobnicate a\n"), 3u);
    EXPECT_EQ(error_line("\n# leading comment\ncolors a\n"), 3u);
    EXPECT_EQ(error_line("palette x\ntriple a a a\n"), 2u);
    EXPECT_THROW(parse_palette("palette x\n"), ParseError);
    EXPECT_THROW(parse_palette(""), ParseError);
}

TEST(ParseHypergraph, K4Minus) {
    auto doc = parse_hypergraph(fixture("k4minus.hg"));
    EXPECT_EQ(doc.name, "k4minus");
    EXPECT_EQ(doc.graph.vertex_count, 4u);
    EXPECT_EQ(doc.graph.edges.size(), 3u);
    EXPECT_EQ(doc.graph, palcalc::testing::k4_minus());
    EXPECT_FALSE(doc.order);

    auto ordered = parse_hypergraph(fixture("k4minus_ordered.hg"));
    ASSERT_TRUE(ordered.order);
    EXPECT_EQ(*ordered.order, (std::vector<Vertex>{1, 0, 2, 3}));
}

TEST(ParseHypergraph, RoundTrip) {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 100; ++i) {
        auto h = palcalc::testing::random_hypergraph(3 + i % 6, 0.4, rng);
        std::optional<std::vector<Vertex>> order;
        if (i % 2) {
            order = identity_order(h.vertex_count);
            std::shuffle(order->begin(), order->end(), rng);
        }
        auto doc = parse_hypergraph(serialize_hypergraph("h", h, order));
        EXPECT_EQ(doc.graph, h);
        EXPECT_EQ(doc.order, order);
    }
}

TEST(ParseHypergraph, Errors) {
    EXPECT_EQ(hg_error_line("hypergraph h 4\nedge 0 1 4\n"), 2u);
    EXPECT_EQ(hg_error_line("hypergraph h 4\nedge 0 1 1\n"), 2u);
    EXPECT_EQ(hg_error_line("hypergraph h 4\nedge 0 1 2\nedge 2 1 0\n"), 3u);
    EXPECT_EQ(hg_error_line("hypergraph h 4\nedge 0 1\n"), 2u);
    EXPECT_EQ(hg_error_line("hypergraph h 3\norder 0 1 1\n"), 2u);
    EXPECT_EQ(hg_error_line("hypergraph h -3\n"), 1u);
    EXPECT_EQ(hg_error_line("graph h 3\n"), 1u);
}
