#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hom_search.hpp"
#include "lagrangian.hpp"
#include "palette.hpp"

namespace palcalc {

using Vertex = std::size_t;
using Edge = std::array<Vertex, 3>;

/// A 3-uniform hypergraph. Edges are stored with sorted vertices, in sorted order.
struct Hypergraph {
    std::size_t vertex_count = 0;
    std::vector<Edge> edges;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

/// Throws std::invalid_argument on repeated vertices, out-of-range vertices or
/// duplicate edges; otherwise returns the normalized hypergraph.
inline Hypergraph make_hypergraph(std::size_t vertex_count, std::vector<Edge> edges) {
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (e[0] == e[1] || e[1] == e[2]) throw std::invalid_argument("edge with repeated vertex");
        if (e[2] >= vertex_count) throw std::invalid_argument("edge vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw std::invalid_argument("duplicate edge");
    return {vertex_count, std::move(edges)};
}

/// `order[i]` is the i-th smallest vertex.
struct OrderedHypergraph {
    Hypergraph base;
    std::vector<Vertex> order;

    friend bool operator==(const OrderedHypergraph&, const OrderedHypergraph&) = default;
};

inline std::vector<Vertex> identity_order(std::size_t n) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    return order;
}

inline bool is_permutation_of_range(const std::vector<Vertex>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto v : order) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

inline OrderedHypergraph make_ordered(Hypergraph h, std::vector<Vertex> order) {
    if (!is_permutation_of_range(order, h.vertex_count)) throw std::invalid_argument("order is not a permutation");
    return {std::move(h), std::move(order)};
}

inline OrderedHypergraph with_natural_order(Hypergraph h) {
    auto order = identity_order(h.vertex_count);
    return {std::move(h), std::move(order)};
}

/// The same hypergraph with the reverse vertex order.
inline OrderedHypergraph reversed(const OrderedHypergraph& h) {
    return {h.base, std::vector<Vertex>(h.order.rbegin(), h.order.rend())};
}

inline std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Index of the unordered pair {u, v}, u != v, among the C(n,2) pairs.
inline std::size_t pair_index(Vertex u, Vertex v, std::size_t n) {
    if (u > v) std::swap(u, v);
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

/// A color for every unordered vertex pair, indexed by `pair_index`.
struct PairColoring {
    std::size_t vertex_count = 0;
    std::vector<ColorId> colors;

    ColorId at(Vertex u, Vertex v) const { return colors.at(pair_index(u, v, vertex_count)); }
    void set(Vertex u, Vertex v, ColorId c) { colors.at(pair_index(u, v, vertex_count)) = c; }

    friend bool operator==(const PairColoring&, const PairColoring&) = default;
};

/// Pushes every pair color through a color map.
inline PairColoring map_coloring(const PairColoring& c, const std::vector<ColorId>& map) {
    PairColoring out = c;
    for (auto& col : out.colors) col = map.at(col);
    return out;
}

/// The triple of pair colors an edge reads under the order, left to right.
inline Triple edge_colors(const Edge& e, const std::vector<std::size_t>& position, const PairColoring& c) {
    Edge s = e;
    std::sort(s.begin(), s.end(), [&](Vertex a, Vertex b) { return position[a] < position[b]; });
    return {c.at(s[0], s[1]), c.at(s[0], s[2]), c.at(s[1], s[2])};
}

inline std::vector<std::size_t> positions_of(const std::vector<Vertex>& order) {
    std::vector<std::size_t> position(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    return position;
}

inline bool check_certificate(const OrderedHypergraph& h, const Palette& p, const PairColoring& c) {
    const auto n = h.base.vertex_count;
    if (c.vertex_count != n || c.colors.size() != pair_count(n) || h.order.size() != n) {
        throw std::invalid_argument("check_certificate: coloring does not match hypergraph");
    }
    for (auto col : c.colors) {
        if (col >= p.color_count()) return false;
    }
    const auto position = positions_of(h.order);
    for (const auto& e : h.base.edges) {
        if (!p.contains(edge_colors(e, position, c))) return false;
    }
    return true;
}

struct ColorabilityOptions {
    std::size_t max_ordered_vertices = 8;
    std::size_t max_unordered_vertices = 7;
};

namespace detail {

/// Exhaustive backtracking over the pairs of an ordered hypergraph, in
/// lexicographic order of (smaller position, larger position). An edge at
/// positions a < b < c is checked once its last pair (b, c) is colored.
class OrderedColoringSearch {
public:
    OrderedColoringSearch(const OrderedHypergraph& h, const Palette& p) : n_(h.base.vertex_count), palette_(p) {
        const auto roles = classify_roles(p);
        const std::vector<ColorId> lefts(roles.left_colors.begin(), roles.left_colors.end());
        const std::vector<ColorId> middles(roles.middle_colors.begin(), roles.middle_colors.end());
        const std::vector<ColorId> rights(roles.right_colors.begin(), roles.right_colors.end());

        const auto position = positions_of(h.order);
        const auto pairs = pair_count(n_);
        checks_.assign(pairs, {});
        std::vector<std::optional<std::vector<ColorId>>> allowed(pairs);
        auto restrict = [&](std::size_t pi, const std::vector<ColorId>& role) {
            if (!allowed[pi]) {
                allowed[pi] = role;
                return;
            }
            std::vector<ColorId> both;
            std::set_intersection(allowed[pi]->begin(), allowed[pi]->end(), role.begin(), role.end(),
                                  std::back_inserter(both));
            allowed[pi] = std::move(both);
        };
        for (const auto& e : h.base.edges) {
            std::array<std::size_t, 3> pos{position[e[0]], position[e[1]], position[e[2]]};
            std::sort(pos.begin(), pos.end());
            const auto ab = pair_index(pos[0], pos[1], n_);
            const auto ac = pair_index(pos[0], pos[2], n_);
            const auto bc = pair_index(pos[1], pos[2], n_);
            restrict(ab, lefts);
            restrict(ac, middles);
            restrict(bc, rights);
            checks_[bc].push_back({ab, ac, bc});
        }
        candidates_.resize(pairs);
        for (std::size_t i = 0; i < pairs; ++i) {
            // pairs in no edge are unconstrained; color 0 is as good as any
            candidates_[i] = allowed[i] ? *allowed[i] : std::vector<ColorId>{0};
        }
        order_ = h.order;
    }

    /// Coloring in vertex labels, or nullopt when none exists.
    std::optional<PairColoring> solve() {
        if (palette_.color_count() == 0 && pair_count(n_) > 0) return std::nullopt;
        colors_.assign(pair_count(n_), 0);
        if (!assign(0)) return std::nullopt;
        PairColoring out{n_, std::vector<ColorId>(pair_count(n_), 0)};
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) out.set(order_[i], order_[j], colors_[pair_index(i, j, n_)]);
        }
        return out;
    }

private:
    bool assign(std::size_t pi) {
        if (pi == colors_.size()) return true;
        for (auto c : candidates_[pi]) {
            colors_[pi] = c;
            bool ok = true;
            for (const auto& chk : checks_[pi]) {
                if (!palette_.contains({colors_[chk[0]], colors_[chk[1]], colors_[chk[2]]})) {
                    ok = false;
                    break;
                }
            }
            if (ok && assign(pi + 1)) return true;
        }
        return false;
    }

    std::size_t n_;
    const Palette& palette_;
    std::vector<Vertex> order_;
    std::vector<std::vector<ColorId>> candidates_;
    std::vector<std::vector<std::array<std::size_t, 3>>> checks_;
    std::vector<ColorId> colors_;
};

}  // namespace detail

/// A certificate that `h` is `p`-colorable under its own order, or nullopt.
inline std::optional<PairColoring> ordered_colorable(const OrderedHypergraph& h, const Palette& p,
                                                     const ColorabilityOptions& opts = {}) {
    if (h.base.vertex_count > opts.max_ordered_vertices) throw std::invalid_argument("instance too large");
    return detail::OrderedColoringSearch(h, p).solve();
}

struct ColorabilityWitness {
    std::vector<Vertex> order;
    PairColoring coloring;
};

/// Tries vertex orders in lexicographic order and returns the first that
/// admits a certificate.
inline std::optional<ColorabilityWitness> colorable(const Hypergraph& h, const Palette& p,
                                                    const ColorabilityOptions& opts = {}) {
    if (h.vertex_count > opts.max_unordered_vertices) throw std::invalid_argument("instance too large");
    auto order = identity_order(h.vertex_count);
    ColorabilityOptions inner = opts;
    inner.max_ordered_vertices = std::max(opts.max_ordered_vertices, opts.max_unordered_vertices);
    do {
        if (auto c = ordered_colorable({h, order}, p, inner)) return ColorabilityWitness{order, std::move(*c)};
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

/// Hypergraph on vertices 0..n-1 in natural order whose pairs are colored
/// independently from `distribution`; the edges are exactly the triples
/// whose pair colors form a feasible triple.
inline std::pair<OrderedHypergraph, PairColoring> random_palette_hypergraph(const Palette& p, std::size_t n,
                                                                            const SimplexPoint& distribution,
                                                                            std::uint64_t seed) {
    if (distribution.size() != p.color_count() || !is_simplex_point(distribution, 1e-9)) {
        throw std::invalid_argument("random_palette_hypergraph: distribution does not match palette");
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<ColorId> pick(distribution.begin(), distribution.end());
    PairColoring c{n, std::vector<ColorId>(pair_count(n), 0)};
    for (auto& col : c.colors) col = pick(rng);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            for (Vertex w = v + 1; w < n; ++w)
                if (p.contains({c.at(u, v), c.at(u, w), c.at(v, w)})) edges.push_back({u, v, w});
    Hypergraph h{n, std::move(edges)};
    return {with_natural_order(std::move(h)), std::move(c)};
}

struct InducedDensityOptions {
    std::size_t exact_limit = 20;
    std::size_t samples_per_size = 1000;
    std::uint64_t seed = 0;
    bool force_sampling = false;
};

/// Minimum of e(S)/C(|S|,3) over vertex subsets with |S| >= minFrac*n and
/// |S| >= 3. Exact enumeration up to `exact_limit` vertices; above that (or
/// when forced) a minimum over random subsets of each admissible size, which
/// can only overestimate the true minimum. Returns 1 when no subset qualifies.
inline double min_induced_density(const Hypergraph& h, double min_frac, const InducedDensityOptions& opts = {}) {
    if (!(min_frac > 0.0 && min_frac <= 1.0)) throw std::invalid_argument("min_induced_density: minFrac must be in (0,1]");
    const auto n = h.vertex_count;
    const auto min_size = std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(min_frac * n - 1e-12)));
    if (min_size > n) return 1.0;
    auto choose3 = [](std::size_t s) { return static_cast<double>(s * (s - 1) * (s - 2) / 6); };

    double best = 1.0;
    if (n <= opts.exact_limit && !opts.force_sampling) {
        std::vector<std::uint32_t> masks;
        masks.reserve(h.edges.size());
        for (const auto& e : h.edges) masks.push_back((1u << e[0]) | (1u << e[1]) | (1u << e[2]));
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
            const auto size = static_cast<std::size_t>(std::popcount(s));
            if (size < min_size) continue;
            std::size_t inside = 0;
            for (auto m : masks) inside += (m & s) == m;
            best = std::min(best, static_cast<double>(inside) / choose3(size));
        }
        return best;
    }

    std::mt19937_64 rng(opts.seed);
    std::vector<Vertex> vertices = identity_order(n);
    std::vector<char> in(n, 0);
    for (std::size_t size = min_size; size <= n; ++size) {
        for (std::size_t sample = 0; sample < opts.samples_per_size; ++sample) {
            std::shuffle(vertices.begin(), vertices.end(), rng);
            std::fill(in.begin(), in.end(), 0);
            for (std::size_t i = 0; i < size; ++i) in[vertices[i]] = 1;
            std::size_t inside = 0;
            for (const auto& e : h.edges) inside += in[e[0]] && in[e[1]] && in[e[2]];
            best = std::min(best, static_cast<double>(inside) / choose3(size));
        }
    }
    return best;
}

}  // namespace palcalc
