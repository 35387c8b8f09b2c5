#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "palcalc/builtins.hpp"
#include "palcalc/lagrangian.hpp"
#include "support/oracles.hpp"

using namespace palcalc;
using palcalc::testing::finite_difference_gradient;
using palcalc::testing::grid_search_max;
using palcalc::testing::random_palette_upto;

namespace {

SimplexPoint random_interior_point(std::size_t k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    SimplexPoint x(k);
    double sum = 0.0;
    for (auto& w : x) sum += (w = u(rng));
    for (auto& w : x) w /= sum;
    return x;
}

}  // namespace

TEST(Objective, P481AtKnownMaximizer) {
    // alpha, beta, gamma, omega
    EXPECT_NEAR(objective(builtins::p481(), SimplexPoint{2.0 / 9, 1.0 / 3, 2.0 / 9, 2.0 / 9}), 4.0 / 81, 1e-15);
}

TEST(Objective, UniformPointGivesDensity) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        auto p = random_palette_upto(5, rng);
        const auto d = density(p);
        EXPECT_NEAR(objective(p, uniform_point(p.color_count())),
                    static_cast<double>(d.numerator()) / static_cast<double>(d.denominator()), 1e-14);
    }
}

TEST(Objective, EmptyTriplesAndMismatch) {
    auto p = make_palette({"a", "b"}, {});
    EXPECT_EQ(objective(p, SimplexPoint{0.3, 0.7}), 0.0);
    EXPECT_THROW(objective(p, SimplexPoint{1.0}), std::invalid_argument);
    EXPECT_THROW(gradient(p, SimplexPoint{1.0}), std::invalid_argument);
}

TEST(Gradient, Examples) {
    auto g = gradient(builtins::p481(), uniform_point(4));
    EXPECT_DOUBLE_EQ(g[1], 3.0 / 16);
    EXPECT_EQ(gradient(make_palette({"a", "b"}, {}), SimplexPoint{0.5, 0.5}), (std::vector<double>{0.0, 0.0}));
    EXPECT_DOUBLE_EQ(gradient(make_palette({"c"}, {{0, 0, 0}}), SimplexPoint{1.0})[0], 3.0);
}

TEST(Gradient, MatchesFiniteDifferences) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 600; ++i) {
        auto p = random_palette_upto(5, rng);
        auto x = random_interior_point(p.color_count(), rng);
        auto g = gradient(p, x);
        auto fd = finite_difference_gradient(p, x, 1e-6);
        for (std::size_t c = 0; c < g.size(); ++c) EXPECT_NEAR(g[c], fd[c], 1e-5);
    }
}

TEST(Projection, LandsOnSimplex) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> v(1 + i % 6);
        for (auto& x : v) x = n(rng);
        auto p = project_to_simplex(v);
        EXPECT_TRUE(is_simplex_point(p, 1e-12));
        // a point already on the simplex is fixed
        auto q = project_to_simplex(p);
        for (std::size_t c = 0; c < p.size(); ++c) EXPECT_NEAR(p[c], q[c], 1e-12);
    }
}

TEST(Lagrangian, P481IsFourOver81) {
    for (std::uint64_t seed : {0u, 1u, 99u}) {
        auto r = lagrangian(builtins::p481(), 200, 1e-10, seed);
        EXPECT_NEAR(r.value, 4.0 / 81, 1e-6);
        EXPECT_NEAR(r.argmax[1], 1.0 / 3, 1e-4);
        EXPECT_EQ(r.restarts_used, 201);
    }
}

TEST(Lagrangian, EmptyTriplesStayAtUniform) {
    auto r = lagrangian(make_palette({"a", "b", "c"}, {}));
    EXPECT_EQ(r.value, 0.0);
    EXPECT_EQ(r.argmax, uniform_point(3));
}

TEST(Lagrangian, SingleLoopReachesOne) {
    auto r = lagrangian(make_palette({"c"}, {{0, 0, 0}}));
    EXPECT_DOUBLE_EQ(r.value, 1.0);
    EXPECT_DOUBLE_EQ(r.argmax[0], 1.0);
}

TEST(Lagrangian, DeterministicForSeed) {
    auto a = lagrangian(builtins::three_triples(), 20, 1e-10, 5);
    auto b = lagrangian(builtins::three_triples(), 20, 1e-10, 5);
    EXPECT_EQ(a.argmax, b.argmax);
    EXPECT_EQ(a.value, b.value);
}

TEST(Lagrangian, PropertiesOnRandomPalettes) {
    std::mt19937_64 rng(24);
    LagrangianOptions opts;
    opts.restarts = 20;
    const double tol = opts.tol;
    for (int i = 0; i < 500; ++i) {
        auto p = random_palette_upto(4, rng);
        opts.seed = i;
        auto r = lagrangian(p, opts);
        const auto d = density(p);
        const double dens = static_cast<double>(d.numerator()) / static_cast<double>(d.denominator());

        EXPECT_TRUE(is_simplex_point(r.argmax));
        EXPECT_NEAR(r.value, objective(p, r.argmax), 1e-12);
        EXPECT_GE(r.value, dens - 1e-12);
        EXPECT_LE(r.value, 1.0 + 1e-12);

        // first-order conditions at the reported point
        const double common = 3.0 * r.value;
        for (std::size_t c = 0; c < r.argmax.size(); ++c) {
            if (r.argmax[c] > tol) {
                EXPECT_NEAR(r.gradient[c], common, 10 * tol) << "palette " << i << " color " << c;
            } else {
                EXPECT_LE(r.gradient[c], common + 10 * tol);
            }
        }

        auto grid = brute_force_lagrangian(p, 20);
        EXPECT_GE(r.value, static_cast<double>(grid.numerator()) / static_cast<double>(grid.denominator()) - 1e-9);

        auto ri = lagrangian(inverse(p), opts);
        EXPECT_NEAR(ri.value, r.value, 1e-9);
    }
}

TEST(Lagrangian, AtLeastDenseGridOnThreeColors) {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 500; ++i) {
        auto p = random_palette_upto(3, rng);
        auto r = lagrangian(p, 20, 1e-10, i);
        EXPECT_GE(r.value, grid_search_max(p, 40) - 1e-9);
    }
}

TEST(BruteForceLagrangian, Examples) {
    EXPECT_EQ(brute_force_lagrangian(builtins::p481(), 9), Rational(4, 81));
    EXPECT_EQ(brute_force_lagrangian(make_palette({"a", "b"}, {}), 7), Rational(0));
    EXPECT_EQ(brute_force_lagrangian(make_palette({"c"}, {{0, 0, 0}}), 1), Rational(1));
    EXPECT_THROW(brute_force_lagrangian(builtins::three_triples(), 4), std::invalid_argument);
}
