#include <random>
#include <set>

#include <gtest/gtest.h>

#include "palcalc/builtins.hpp"
#include "palcalc/palette.hpp"
#include "support/oracles.hpp"

using namespace palcalc;
using palcalc::testing::random_palette_upto;

namespace {

Palette single_loop() { return make_palette({"c"}, {{0, 0, 0}}); }

Palette no_triples(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back("x" + std::to_string(i));
    return make_palette(names, {});
}

}  // namespace

TEST(Validate, BuiltinsAreWellFormed) {
    for (const auto& name : builtins::registry_names()) {
        EXPECT_TRUE(validate(*builtins::by_name(name)).empty()) << name;
    }
    EXPECT_TRUE(validate(single_loop()).empty());
}

TEST(Validate, ReportsOutOfRangeColor) {
    Palette p({"a", "b"}, {{0, 2, 0}});
    auto v = validate(p);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("ColorId out of range"), std::string::npos);
}

TEST(Validate, ReportsDuplicatesAndBadNames) {
    Palette p({"a", "a", "b c", ""}, {{0, 1, 0}, {0, 1, 0}});
    auto v = validate(p);
    EXPECT_EQ(v.size(), 4u);
    EXPECT_THROW(make_palette({"a", "a"}, {}), std::invalid_argument);
}

TEST(Density, Examples) {
    EXPECT_EQ(density(builtins::p481()), Rational(3, 64));
    EXPECT_EQ(density(builtins::lm()), Rational(2, 125));
    EXPECT_EQ(density(single_loop()), Rational(1));
    EXPECT_THROW(density(Palette{}), std::invalid_argument);
}

TEST(Inverse, ReversesTriples) {
    auto inv = inverse(builtins::two_color());
    // (alpha,beta,alpha), (alpha,beta,beta) -> (alpha,beta,alpha), (beta,beta,alpha)
    EXPECT_EQ(inv.triples(), (std::vector<Triple>{{0, 1, 0}, {1, 1, 0}}));
    EXPECT_EQ(inv.names(), builtins::two_color().names());
}

TEST(Inverse, InvolutionOnRandomPalettes) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 600; ++i) {
        auto p = random_palette_upto(5, rng);
        EXPECT_EQ(inverse(inverse(p)), p);
    }
}

TEST(Product, UnaryIsIdentity) {
    EXPECT_EQ(product({builtins::p481()}), builtins::p481());
    EXPECT_THROW(product({}), std::invalid_argument);
}

TEST(Product, NamesAndOrder) {
    auto p = product({builtins::two_color(), inverse(builtins::two_color())});
    EXPECT_EQ(p.names(), (std::vector<std::string>{"alpha*alpha", "alpha*beta", "beta*alpha", "beta*beta"}));
    EXPECT_EQ(p.triples().size(), 4u);
}

TEST(Product, DensityIsMultiplicativeAndMatchesEnumeration) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 600; ++i) {
        auto a = random_palette_upto(4, rng);
        auto b = random_palette_upto(4, rng);
        auto ab = product({a, b});
        EXPECT_EQ(density(ab), density(a) * density(b));
        // every component-wise combination, enumerated directly
        std::size_t feasible = 0;
        const auto kb = b.color_count();
        for (ColorId x = 0; x < ab.color_count(); ++x)
            for (ColorId y = 0; y < ab.color_count(); ++y)
                for (ColorId z = 0; z < ab.color_count(); ++z) {
                    bool in = a.contains({static_cast<ColorId>(x / kb), static_cast<ColorId>(y / kb),
                                          static_cast<ColorId>(z / kb)}) &&
                              b.contains({static_cast<ColorId>(x % kb), static_cast<ColorId>(y % kb),
                                          static_cast<ColorId>(z % kb)});
                    EXPECT_EQ(in, ab.contains({x, y, z}));
                    feasible += in;
                }
        EXPECT_EQ(feasible, ab.triples().size());
    }
}

TEST(Product, ThreeFactorDensity) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto a = random_palette_upto(3, rng), b = random_palette_upto(3, rng), c = random_palette_upto(3, rng);
        EXPECT_EQ(density(product({a, b, c})), density(a) * density(b) * density(c));
    }
}

TEST(Product, LmTimesSymmetrized3T) {
    EXPECT_EQ(product({builtins::lm(), symmetrize(builtins::three_triples())}).triples().size(), 36u);
}

TEST(Symmetrize, EmptyTriples) {
    auto s = symmetrize(no_triples(3));
    EXPECT_EQ(s.color_count(), 6u);
    EXPECT_TRUE(s.triples().empty());
}

TEST(Symmetrize, SingleLoop) {
    auto s = symmetrize(single_loop());
    EXPECT_EQ(s.names(), (std::vector<std::string>{"c", "c~"}));
    // c = 0, clone = 1
    EXPECT_EQ(s.triples(), (std::vector<Triple>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}));
}

TEST(Symmetrize, ThreeTriplesGivesEighteen) {
    EXPECT_EQ(symmetrize(builtins::three_triples()).triples().size(), 18u);
}

TEST(Symmetrize, CardinalityBoundsAndClosure) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 600; ++i) {
        auto p = random_palette_upto(5, rng);
        auto s = symmetrize(p);
        const auto k = p.color_count();
        ASSERT_EQ(s.color_count(), 2 * k);
        if (!p.triples().empty()) {
            EXPECT_GE(s.triples().size(), p.triples().size());
            EXPECT_LE(s.triples().size(), 6 * p.triples().size());
        }
        // re-expanding any member stays inside, with clone(clone(c)) = c
        auto bar = [k](ColorId c) { return clone_of(c, k); };
        for (const auto& [x, y, z] : s.triples()) {
            const Triple images[] = {{x, y, z},           {bar(x), z, y},           {y, x, bar(z)},
                                     {bar(y), bar(z), x}, {z, bar(x), bar(y)}, {bar(z), bar(y), bar(x)}};
            for (const auto& t : images) EXPECT_TRUE(s.contains(t));
        }
    }
}

TEST(ClassifyRoles, P481) {
    auto r = classify_roles(builtins::p481());
    // alpha=0 beta=1 gamma=2 omega=3
    EXPECT_EQ(r.left_colors, (std::set<ColorId>{0, 3}));
    EXPECT_EQ(r.middle_colors, (std::set<ColorId>{1}));
    EXPECT_EQ(r.right_colors, (std::set<ColorId>{2, 3}));
    EXPECT_EQ(r.L, (std::set<ColorId>{0}));
    EXPECT_EQ(r.R, (std::set<ColorId>{2}));
    EXPECT_EQ(r.B, (std::set<ColorId>{3}));
    EXPECT_EQ(r.M, (std::set<ColorId>{1}));
}

TEST(ClassifyRoles, LmAndEmpty) {
    const auto lm = builtins::lm();
    auto r = classify_roles(lm);
    EXPECT_EQ(r.middle_colors, (std::set<ColorId>{*lm.find_color("omega"), *lm.find_color("beta'")}));
    EXPECT_EQ(r.left_colors, (std::set<ColorId>{*lm.find_color("alpha"), *lm.find_color("omega")}));

    auto e = classify_roles(no_triples(4));
    EXPECT_TRUE(e.left_colors.empty() && e.middle_colors.empty() && e.right_colors.empty());
    EXPECT_TRUE(e.L.empty() && e.M.empty() && e.R.empty() && e.B.empty());
}

TEST(ClassifyRoles, PartitionOfLeftAndRight) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 600; ++i) {
        auto r = classify_roles(random_palette_upto(5, rng));
        std::set<ColorId> uni, lr;
        for (auto* s : {&r.L, &r.R, &r.B}) {
            for (auto c : *s) EXPECT_TRUE(uni.insert(c).second) << "L, R, B overlap";
        }
        lr.insert(r.left_colors.begin(), r.left_colors.end());
        lr.insert(r.right_colors.begin(), r.right_colors.end());
        EXPECT_EQ(uni, lr);
    }
}

TEST(FindIsomorphism, P481AndItsInverse) {
    auto iso = find_isomorphism(builtins::p481(), inverse(builtins::p481()));
    ASSERT_TRUE(iso);
    EXPECT_EQ(*iso, (std::vector<ColorId>{2, 1, 0, 3}));
}

TEST(FindIsomorphism, IdentityAndMismatch) {
    auto iso = find_isomorphism(builtins::three_triples(), builtins::three_triples());
    ASSERT_TRUE(iso);
    EXPECT_EQ(*iso, (std::vector<ColorId>{0, 1, 2, 3, 4, 5, 6}));
    EXPECT_FALSE(find_isomorphism(builtins::lm(), builtins::three_triples()));
    EXPECT_FALSE(find_isomorphism(builtins::two_color(), inverse(builtins::two_color())));
}

TEST(FindIsomorphism, RelabelledRandomPalettes) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 300; ++i) {
        auto p = random_palette_upto(5, rng);
        std::vector<ColorId> perm(p.color_count());
        std::iota(perm.begin(), perm.end(), ColorId{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Triple> ts;
        for (const auto& t : p.triples()) ts.push_back({perm[t.left], perm[t.middle], perm[t.right]});
        Palette q(p.names(), ts);
        auto iso = find_isomorphism(p, q);
        ASSERT_TRUE(iso);
        for (const auto& t : p.triples()) EXPECT_TRUE(q.contains({(*iso)[t.left], (*iso)[t.middle], (*iso)[t.right]}));
    }
}
