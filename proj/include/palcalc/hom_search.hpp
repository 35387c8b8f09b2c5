#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "palette.hpp"

namespace palcalc {

/// A color map from `source` to `target` preserving feasible triples.
/// Palettes are held by value so a homomorphism is self-contained.
struct Homomorphism {
    Palette source;
    Palette target;
    std::vector<ColorId> map;
};

inline bool is_homomorphism(const Palette& source, const Palette& target, const std::vector<ColorId>& map) {
    if (map.size() != source.color_count()) return false;
    for (auto v : map) {
        if (v >= target.color_count()) return false;
    }
    for (const auto& t : source.triples()) {
        if (!target.contains({map[t.left], map[t.middle], map[t.right]})) return false;
    }
    return true;
}

inline bool is_valid(const Homomorphism& h) { return is_homomorphism(h.source, h.target, h.map); }

inline Homomorphism identity_hom(const Palette& p) {
    std::vector<ColorId> map(p.color_count());
    std::iota(map.begin(), map.end(), ColorId{0});
    return {p, p, std::move(map)};
}

namespace detail {

/// Backtracking search for triple-preserving maps restricted to the source
/// colors that occur in some triple. Variables are ordered by descending
/// occurrence count (ties by ColorId) and values ascend; after each
/// assignment every incident triple filters the domains of its unassigned
/// colors down to values that still have a supporting target triple.
class HomSearcher {
public:
    using Domain = boost::dynamic_bitset<>;

    HomSearcher(const Palette& source, const Palette& target) : source_(source), target_(target) {
        const auto k = source.color_count();
        std::vector<std::size_t> occurrences(k, 0);
        incident_.assign(k, {});
        for (std::size_t i = 0; i < source.triples().size(); ++i) {
            const auto& t = source.triples()[i];
            for (auto c : {t.left, t.middle, t.right}) ++occurrences[c];
            incident_[t.left].push_back(i);
            if (t.middle != t.left) incident_[t.middle].push_back(i);
            if (t.right != t.left && t.right != t.middle) incident_[t.right].push_back(i);
        }
        for (ColorId c = 0; c < k; ++c) {
            if (occurrences[c] > 0) order_.push_back(c);
        }
        std::stable_sort(order_.begin(), order_.end(),
                         [&](ColorId a, ColorId b) { return occurrences[a] > occurrences[b]; });

        // initial domains from role compatibility
        const auto kt = target.color_count();
        Domain as_left(kt), as_middle(kt), as_right(kt);
        for (const auto& t : target.triples()) {
            as_left.set(t.left);
            as_middle.set(t.middle);
            as_right.set(t.right);
        }
        Domain all(kt);
        all.set();
        initial_.assign(k, all);
        for (const auto& t : source.triples()) {
            initial_[t.left] &= as_left;
            initial_[t.middle] &= as_middle;
            initial_[t.right] &= as_right;
        }
    }

    /// Calls `visit(map)` for each homomorphism on the constrained colors in
    /// search order (unconstrained colors hold 0); stops when visit returns false.
    void run(const std::function<bool(const std::vector<ColorId>&)>& visit) {
        std::vector<ColorId> map(source_.color_count(), 0);
        std::vector<bool> assigned(source_.color_count(), false);
        auto domains = initial_;
        for (auto c : order_) {
            if (domains[c].none()) return;
        }
        search(0, map, assigned, domains, visit);
    }

    const std::vector<ColorId>& constrained() const { return order_; }

private:
    bool search(std::size_t depth, std::vector<ColorId>& map, std::vector<bool>& assigned,
                const std::vector<Domain>& domains,
                const std::function<bool(const std::vector<ColorId>&)>& visit) {
        if (depth == order_.size()) return visit(map);
        const ColorId x = order_[depth];
        const auto& dom = domains[x];
        for (auto v = dom.find_first(); v != Domain::npos; v = dom.find_next(v)) {
            map[x] = static_cast<ColorId>(v);
            assigned[x] = true;
            auto next = domains;
            next[x].reset();
            next[x].set(v);
            if (propagate(x, map, assigned, next)) {
                if (!search(depth + 1, map, assigned, next, visit)) {
                    assigned[x] = false;
                    return false;
                }
            }
            assigned[x] = false;
        }
        return true;
    }

    bool propagate(ColorId x, const std::vector<ColorId>& map, const std::vector<bool>& assigned,
                   std::vector<Domain>& domains) const {
        const auto kt = target_.color_count();
        for (auto ti : incident_[x]) {
            const auto& s = source_.triples()[ti];
            const ColorId pos[3] = {s.left, s.middle, s.right};
            // distinct unassigned colors in this triple
            ColorId open[3];
            std::size_t n_open = 0;
            for (auto c : pos) {
                if (!assigned[c] && std::find(open, open + n_open, c) == open + n_open) open[n_open++] = c;
            }
            std::vector<Domain> support(n_open, Domain(kt));
            bool any = false;
            for (const auto& t : target_.triples()) {
                const ColorId val[3] = {t.left, t.middle, t.right};
                bool ok = true;
                for (int i = 0; i < 3 && ok; ++i) {
                    if (assigned[pos[i]]) {
                        ok = map[pos[i]] == val[i];
                    } else {
                        ok = domains[pos[i]].test(val[i]);
                        // a color repeated within the triple needs the same value
                        for (int j = 0; j < i && ok; ++j) {
                            if (pos[j] == pos[i]) ok = val[j] == val[i];
                        }
                    }
                }
                if (!ok) continue;
                any = true;
                for (std::size_t o = 0; o < n_open; ++o) {
                    for (int i = 0; i < 3; ++i) {
                        if (pos[i] == open[o]) {
                            support[o].set(val[i]);
                            break;
                        }
                    }
                }
            }
            if (!any) return false;
            for (std::size_t o = 0; o < n_open; ++o) {
                domains[open[o]] &= support[o];
                if (domains[open[o]].none()) return false;
            }
        }
        return true;
    }

    const Palette& source_;
    const Palette& target_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<ColorId> order_;
    std::vector<Domain> initial_;
};

}  // namespace detail

/// First homomorphism in the deterministic search order, or nullopt when
/// none exists (the search is exhaustive). Colors of `p` in no triple map to 0.
inline std::optional<Homomorphism> exists_hom(const Palette& p, const Palette& q) {
    if (q.color_count() == 0) {
        if (p.color_count() == 0) return Homomorphism{p, q, {}};
        return std::nullopt;
    }
    std::optional<std::vector<ColorId>> found;
    detail::HomSearcher searcher(p, q);
    searcher.run([&](const std::vector<ColorId>& map) {
        found = map;
        return false;
    });
    if (!found) return std::nullopt;
    return Homomorphism{p, q, std::move(*found)};
}

/// Number of total homomorphisms p -> q, saturating at `limit`.
inline std::uint64_t count_homs(const Palette& p, const Palette& q, std::uint64_t limit) {
    if (limit == 0) throw std::invalid_argument("count limit must be positive");
    detail::HomSearcher searcher(p, q);
    const auto free_colors = p.color_count() - searcher.constrained().size();
    // q.color_count()^free_colors, saturated
    std::uint64_t factor = 1;
    for (std::size_t i = 0; i < free_colors && factor < limit; ++i) {
        factor = q.color_count() == 0 ? 0 : std::min<std::uint64_t>(limit, factor * q.color_count());
        if (factor == 0) break;
    }
    if (factor == 0) return 0;
    std::uint64_t total = 0;
    searcher.run([&](const std::vector<ColorId>&) {
        total = std::min<std::uint64_t>(limit, total + factor);
        return total < limit;
    });
    return total;
}

/// g after f, as a homomorphism from f.source to g.target.
inline Homomorphism compose(const Homomorphism& f, const Homomorphism& g) {
    if (!(f.target == g.source)) throw std::invalid_argument("compose: target of f is not the source of g");
    std::vector<ColorId> map(f.map.size());
    for (std::size_t c = 0; c < map.size(); ++c) map[c] = g.map.at(f.map[c]);
    Homomorphism h{f.source, g.target, std::move(map)};
    if (!is_valid(h)) throw std::logic_error("compose: composite does not preserve triples");
    return h;
}

}  // namespace palcalc
