#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "builtins.hpp"
#include "colorability.hpp"
#include "hom_search.hpp"
#include "lagrangian.hpp"
#include "palette.hpp"

namespace palcalc {

/// Is there a hypergraph colorable by every positive palette and by no negative one?
struct SeparationQuery {
    std::vector<Palette> positives;
    std::vector<Palette> negatives;
};

enum class Direction { straight, inverted };

inline const char* to_string(Direction d) { return d == Direction::straight ? "straight" : "inverted"; }

/// A homomorphism from the q-th mixed product of the positives into the
/// negative (straight) or into its inverse (inverted).
struct BlockingCertificate {
    std::size_t positive_index = 0;
    std::size_t negative_index = 0;
    Direction direction = Direction::straight;
    Homomorphism hom;
};

struct SeparationVerdict {
    bool separable = true;
    std::vector<BlockingCertificate> blocking;
    /// Homomorphism tests run; each one is an exhaustive search.
    std::size_t hom_tests = 0;
};

/// P_q times the symmetrizations of all other positives, in index order.
inline Palette mixed_product(const std::vector<Palette>& positives, std::size_t q) {
    std::vector<Palette> factors{positives.at(q)};
    for (std::size_t s = 0; s < positives.size(); ++s) {
        if (s != q) factors.push_back(symmetrize(positives[s]));
    }
    return product(factors);
}

namespace detail {

inline void test_both_directions(const Palette& source, const Palette& target, const Palette& inverted_target,
                                 std::size_t q, std::size_t negative_index, SeparationVerdict& verdict) {
    for (auto dir : {Direction::straight, Direction::inverted}) {
        ++verdict.hom_tests;
        if (auto h = exists_hom(source, dir == Direction::straight ? target : inverted_target)) {
            verdict.separable = false;
            verdict.blocking.push_back({q, negative_index, dir, std::move(*h)});
        }
    }
}

}  // namespace detail

/// One positive, one negative: separable iff p maps neither into p0 nor into inv(p0).
inline SeparationVerdict single_condition(const Palette& p, const Palette& p0) {
    SeparationVerdict v;
    detail::test_both_directions(p, p0, inverse(p0), 0, 0, v);
    return v;
}

inline SeparationVerdict multi_condition(const std::vector<Palette>& positives, const Palette& p0,
                                         std::size_t negative_index = 0) {
    if (positives.empty()) throw std::invalid_argument("multi_condition: no positive palettes");
    SeparationVerdict v;
    const auto inv0 = inverse(p0);
    for (std::size_t q = 0; q < positives.size(); ++q) {
        detail::test_both_directions(mixed_product(positives, q), p0, inv0, q, negative_index, v);
    }
    return v;
}

inline SeparationVerdict family_condition(const SeparationQuery& query) {
    if (query.positives.empty() || query.negatives.empty()) {
        throw std::invalid_argument("family_condition: positives and negatives must be nonempty");
    }
    SeparationVerdict v;
    for (std::size_t n = 0; n < query.negatives.size(); ++n) {
        auto part = multi_condition(query.positives, query.negatives[n], n);
        v.separable = v.separable && part.separable;
        v.hom_tests += part.hom_tests;
        for (auto& c : part.blocking) v.blocking.push_back(std::move(c));
    }
    return v;
}

inline const Rational& four_over_81() {
    static const Rational r(4, 81);
    return r;
}

enum class AboveWitness { none, lm_straight, lm_inverted, three_triples };

struct DensityBoundResult {
    bool bound_holds = false;
    AboveWitness kind = AboveWitness::none;
    std::optional<Homomorphism> witness;
    std::optional<ColorRoles> roles;
};

/// Either a homomorphism from P_LM into p or inv(p), or from P_3T into p;
/// failing all three, the role classification of p together with the
/// checked conclusion density(p) <= 4/81. Throws std::logic_error if that
/// conclusion (or the role structure behind it) is violated, which can
/// only mean a search bug.
inline DensityBoundResult density_bound_481(const Palette& p) {
    DensityBoundResult r;
    const auto lm = builtins::lm();
    if (auto h = exists_hom(lm, p)) {
        r.kind = AboveWitness::lm_straight;
        r.witness = std::move(h);
        return r;
    }
    if (auto h = exists_hom(lm, inverse(p))) {
        r.kind = AboveWitness::lm_inverted;
        r.witness = std::move(h);
        return r;
    }
    if (auto h = exists_hom(builtins::three_triples(), p)) {
        r.kind = AboveWitness::three_triples;
        r.witness = std::move(h);
        return r;
    }
    auto roles = classify_roles(p);
    for (auto c : roles.M) {
        if (roles.left_colors.count(c) || roles.right_colors.count(c)) {
            throw std::logic_error("density_bound_481: middle color also left or right without a P_LM homomorphism");
        }
    }
    for (const auto& t : p.triples()) {
        if (roles.B.count(t.left) && roles.B.count(t.right)) {
            throw std::logic_error("density_bound_481: triple with both ends in B without a P_3T homomorphism");
        }
    }
    if (p.color_count() > 0 && density(p) > four_over_81()) {
        throw std::logic_error("density_bound_481: density exceeds 4/81 although all homomorphism tests failed");
    }
    r.bound_holds = true;
    r.roles = std::move(roles);
    return r;
}

// ---------------------------------------------------------------------------
// witness search

struct WitnessSearchResult {
    std::optional<Hypergraph> witness;
    /// True when every hypergraph up to the vertex bound was considered.
    bool exhausted = false;
    std::size_t hypergraphs_tested = 0;
};

namespace detail {

/// Edges of K_n^(3) in lexicographic order with their relabelings under
/// every vertex permutation, for canonical forms by minimum edge mask.
class EdgeSpace {
public:
    explicit EdgeSpace(std::size_t n) : n_(n) {
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b)
                for (Vertex c = b + 1; c < n; ++c) edges_.push_back({a, b, c});
        if (edges_.size() > 64) throw std::invalid_argument("witness_search: too many vertices");
        auto perm = identity_order(n);
        do {
            std::vector<std::uint8_t> image(edges_.size());
            for (std::size_t e = 0; e < edges_.size(); ++e) {
                Edge m{perm[edges_[e][0]], perm[edges_[e][1]], perm[edges_[e][2]]};
                std::sort(m.begin(), m.end());
                image[e] = static_cast<std::uint8_t>(index_of(m));
            }
            images_.push_back(std::move(image));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    std::size_t edge_count() const { return edges_.size(); }

    std::uint64_t canonical(std::uint64_t mask) const {
        std::uint64_t best = mask;
        for (const auto& image : images_) {
            std::uint64_t mapped = 0;
            for (auto m = mask; m; m &= m - 1) mapped |= std::uint64_t{1} << image[std::countr_zero(m)];
            best = std::min(best, mapped);
        }
        return best;
    }

    Hypergraph to_hypergraph(std::uint64_t mask) const {
        std::vector<Edge> es;
        for (auto m = mask; m; m &= m - 1) es.push_back(edges_[std::countr_zero(m)]);
        return make_hypergraph(n_, std::move(es));
    }

    bool has_isolated_vertex(std::uint64_t mask) const {
        std::vector<bool> touched(n_, false);
        for (auto m = mask; m; m &= m - 1) {
            for (auto v : edges_[std::countr_zero(m)]) touched[v] = true;
        }
        return std::find(touched.begin(), touched.end(), false) != touched.end();
    }

private:
    std::size_t index_of(const Edge& e) const {
        return static_cast<std::size_t>(std::lower_bound(edges_.begin(), edges_.end(), e) - edges_.begin());
    }

    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint8_t>> images_;
};

}  // namespace detail

/// Smallest hypergraph (by vertex count, then edge count, then canonical
/// edge mask) colorable by every positive and by no negative, searching up
/// to `max_vertices` vertices. Isomorphism classes are generated by adding
/// one edge at a time; classes not colorable by some positive are not
/// extended, since colorability is inherited by sub-hypergraphs.
inline WitnessSearchResult witness_search(const SeparationQuery& query, std::size_t max_vertices) {
    if (max_vertices > 7) throw std::invalid_argument("witness_search: at most 7 vertices supported");
    WitnessSearchResult result;
    ColorabilityOptions opts;
    opts.max_unordered_vertices = 7;
    opts.max_ordered_vertices = 7;
    auto all_positive = [&](const Hypergraph& h) {
        for (const auto& p : query.positives) {
            if (!colorable(h, p, opts)) return false;
        }
        return true;
    };
    auto no_negative = [&](const Hypergraph& h) {
        for (const auto& p : query.negatives) {
            if (colorable(h, p, opts)) return false;
        }
        return true;
    };

    for (std::size_t n = 3; n <= max_vertices; ++n) {
        const detail::EdgeSpace space(n);
        std::set<std::uint64_t> level{0};
        while (!level.empty()) {
            std::set<std::uint64_t> next;
            for (auto mask : level) {
                // hypergraphs with an isolated vertex were covered at a smaller n
                if (!space.has_isolated_vertex(mask)) {
                    auto h = space.to_hypergraph(mask);
                    ++result.hypergraphs_tested;
                    if (no_negative(h)) {
                        for (const auto& p : query.positives) {
                            auto w = colorable(h, p, opts);
                            if (!w || !check_certificate({h, w->order}, p, w->coloring)) {
                                throw std::logic_error("witness_search: positive certificate failed re-verification");
                            }
                        }
                        result.witness = std::move(h);
                        return result;
                    }
                }
                for (std::size_t e = 0; e < space.edge_count(); ++e) {
                    const auto bit = std::uint64_t{1} << e;
                    if (mask & bit) continue;
                    const auto c = space.canonical(mask | bit);
                    if (!next.count(c) && all_positive(space.to_hypergraph(c))) next.insert(c);
                }
            }
            level = std::move(next);
        }
    }
    result.exhausted = true;
    return result;
}

// ---------------------------------------------------------------------------
// end-to-end check of the 4/81 construction premises

struct VerifyItem {
    std::string name;
    bool passed = false;
    std::vector<std::string> details;
};

struct VerifyReport {
    std::vector<VerifyItem> items;

    bool all_passed() const {
        return std::all_of(items.begin(), items.end(), [](const VerifyItem& i) { return i.passed; });
    }
};

struct Verify481Inputs {
    Palette lm = builtins::lm();
    Palette three_triples = builtins::three_triples();
    Palette target = builtins::p481();
    std::size_t random_palettes = 2000;
    std::uint64_t seed = 481;
};

namespace detail {

inline std::string format_map(const Homomorphism& h) {
    std::string s;
    for (std::size_t c = 0; c < h.map.size(); ++c) {
        if (!s.empty()) s += ", ";
        s += h.source.name(static_cast<ColorId>(c)) + "->" + h.target.name(h.map[c]);
    }
    return s;
}

}  // namespace detail

/// Random palette used by the randomized density-bound checks: 1 to 5
/// colors, each triple feasible with a probability drawn from [0, 0.35].
template <class Rng>
Palette random_small_palette(Rng& rng) {
    std::uniform_int_distribution<std::size_t> colors(1, 5);
    std::uniform_real_distribution<double> prob(0.0, 0.35);
    const auto k = colors(rng);
    return random_palette(k, prob(rng), rng);
}

inline VerifyReport verify_481(const Verify481Inputs& in = {}) {
    VerifyReport report;
    const auto target_inv = inverse(in.target);

    {
        VerifyItem item{"no homomorphism from the symmetrized products", true, {}};
        const std::pair<std::string, Palette> sources[] = {
            {"P_LM x sym(P_3T)", product({in.lm, symmetrize(in.three_triples)})},
            {"P_3T x sym(P_LM)", product({in.three_triples, symmetrize(in.lm)})},
        };
        for (const auto& [label, source] : sources) {
            for (auto dir : {Direction::straight, Direction::inverted}) {
                const auto& target = dir == Direction::straight ? in.target : target_inv;
                auto h = exists_hom(source, target);
                const std::string tname = dir == Direction::straight ? "P_4/81" : "inv(P_4/81)";
                if (h) {
                    item.passed = false;
                    item.details.push_back(label + " -> " + tname + ": homomorphism found");
                } else {
                    item.details.push_back(label + " -> " + tname + ": none");
                }
            }
        }
        report.items.push_back(std::move(item));
    }

    {
        VerifyItem item{"Lagrangian of P_4/81 equals 4/81", true, {}};
        const double expected = 4.0 / 81.0;
        const auto lr = lagrangian(in.target);
        char buf[96];
        std::snprintf(buf, sizeof buf, "numerical value %.12g (kkt residual %.2g)", lr.value, lr.kkt_residual);
        item.details.emplace_back(buf);
        if (std::abs(lr.value - expected) > 1e-6) {
            item.passed = false;
            item.details.push_back("numerical value deviates from 4/81 by more than 1e-6");
        }
        if (in.target.color_count() <= 5) {
            const auto grid = brute_force_lagrangian(in.target, 9);
            item.details.push_back("grid optimum at denominator 9: " + std::to_string(grid.numerator()) + "/" +
                                   std::to_string(grid.denominator()));
            if (grid != four_over_81()) item.passed = false;
        } else {
            item.passed = false;
            item.details.push_back("grid oracle needs at most 5 colors");
        }
        report.items.push_back(std::move(item));
    }

    {
        VerifyItem item{"P_4/81 and its inverse are isomorphic", true, {}};
        if (auto iso = find_isomorphism(in.target, target_inv)) {
            item.details.push_back(detail::format_map({in.target, target_inv, *iso}));
        } else {
            item.passed = false;
            item.details.push_back("no isomorphism");
        }
        report.items.push_back(std::move(item));
    }

    {
        VerifyItem item{"density above 4/81 forces a P_LM or P_3T homomorphism", true, {}};
        std::mt19937_64 rng(in.seed);
        std::size_t bounded = 0, violations = 0;
        for (std::size_t i = 0; i < in.random_palettes; ++i) {
            const auto p = random_small_palette(rng);
            try {
                if (density_bound_481(p).bound_holds) ++bounded;
            } catch (const std::logic_error& e) {
                ++violations;
                if (violations <= 3) item.details.push_back(e.what());
            }
        }
        item.passed = violations == 0;
        item.details.push_back(std::to_string(in.random_palettes) + " random palettes, " + std::to_string(bounded) +
                               " without homomorphisms, " + std::to_string(violations) + " violations");
        report.items.push_back(std::move(item));
    }

    {
        VerifyItem item{"P_LM and P_3T separated from P_4/81", true, {}};
        const auto verdict = family_condition({{in.lm, in.three_triples}, {in.target}});
        item.passed = verdict.separable;
        item.details.push_back(std::string(verdict.separable ? "separable" : "not separable") + " after " +
                               std::to_string(verdict.hom_tests) + " homomorphism tests");
        for (const auto& c : verdict.blocking) {
            item.details.push_back("blocked by positive " + std::to_string(c.positive_index) + " (" +
                                   to_string(c.direction) + ")");
        }
        report.items.push_back(std::move(item));
    }
    return report;
}

}  // namespace palcalc
