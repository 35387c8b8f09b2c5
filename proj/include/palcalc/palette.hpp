#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <boost/rational.hpp>

namespace palcalc {

using ColorId = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

struct Triple {
    ColorId left = 0;
    ColorId middle = 0;
    ColorId right = 0;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// A finite color set together with a set of feasible ordered triples.
///
/// The constructor does not check invariants so that `validate` can report
/// on malformed input; use `make_palette` for a checked construction.
/// Triples are kept sorted, which makes equality and membership cheap.
class Palette {
public:
    Palette() = default;
    Palette(std::vector<std::string> names, std::vector<Triple> triples)
        : names_(std::move(names)), triples_(std::move(triples)) {
        std::sort(triples_.begin(), triples_.end());
    }

    std::size_t color_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(ColorId c) const { return names_.at(c); }
    const std::vector<Triple>& triples() const { return triples_; }

    bool contains(const Triple& t) const {
        return std::binary_search(triples_.begin(), triples_.end(), t);
    }

    std::optional<ColorId> find_color(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) return std::nullopt;
        return static_cast<ColorId>(it - names_.begin());
    }

    friend bool operator==(const Palette&, const Palette&) = default;

private:
    std::vector<std::string> names_;
    std::vector<Triple> triples_;
};

/// Every invariant violation of `p`; empty when the palette is well formed.
inline std::vector<std::string> validate(const Palette& p) {
    std::vector<std::string> violations;
    std::set<std::string> seen;
    for (const auto& n : p.names()) {
        if (n.empty()) {
            violations.push_back("empty color name");
        } else if (std::any_of(n.begin(), n.end(), [](unsigned char ch) { return std::isspace(ch); })) {
            violations.push_back("color name contains whitespace: '" + n + "'");
        }
        if (!seen.insert(n).second) violations.push_back("duplicate color name: " + n);
    }
    const auto k = p.color_count();
    const auto& ts = p.triples();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto& t = ts[i];
        if (t.left >= k || t.middle >= k || t.right >= k) {
            violations.push_back("ColorId out of range in triple (" + std::to_string(t.left) + "," +
                                 std::to_string(t.middle) + "," + std::to_string(t.right) + ")");
        }
        if (i > 0 && ts[i - 1] == t) {
            violations.push_back("duplicate triple (" + std::to_string(t.left) + "," +
                                 std::to_string(t.middle) + "," + std::to_string(t.right) + ")");
        }
    }
    return violations;
}

/// Checked construction: throws std::invalid_argument listing all violations.
inline Palette make_palette(std::vector<std::string> names, std::vector<Triple> triples) {
    Palette p(std::move(names), std::move(triples));
    auto violations = validate(p);
    if (!violations.empty()) {
        std::string msg = "invalid palette:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw std::invalid_argument(msg);
    }
    return p;
}

/// Convenience builder that refers to colors by name.
inline Palette make_palette_named(std::vector<std::string> names,
                                  const std::vector<std::array<std::string, 3>>& triples) {
    Palette lookup(names, {});
    std::vector<Triple> ts;
    ts.reserve(triples.size());
    for (const auto& [l, m, r] : triples) {
        auto lc = lookup.find_color(l), mc = lookup.find_color(m), rc = lookup.find_color(r);
        if (!lc || !mc || !rc) throw std::invalid_argument("undeclared color in triple " + l + " " + m + " " + r);
        ts.push_back({*lc, *mc, *rc});
    }
    return make_palette(std::move(names), std::move(ts));
}

/// |T| / |C|^3 as an exact fraction.
inline Rational density(const Palette& p) {
    if (p.color_count() == 0) throw std::invalid_argument("empty palette");
    const auto k = static_cast<std::int64_t>(p.color_count());
    return Rational(static_cast<std::int64_t>(p.triples().size()), k * k * k);
}

inline Palette inverse(const Palette& p) {
    std::vector<Triple> ts;
    ts.reserve(p.triples().size());
    for (const auto& t : p.triples()) ts.push_back({t.right, t.middle, t.left});
    return Palette(p.names(), std::move(ts));
}

/// Product palette. Colors are tuples in lexicographic order of component
/// indices (last component varies fastest); names are joined with '*'.
inline Palette product(const std::vector<Palette>& ps) {
    if (ps.empty()) throw std::invalid_argument("product of an empty list of palettes");
    for (const auto& p : ps) {
        if (p.color_count() == 0) throw std::invalid_argument("product with an empty palette");
    }
    if (ps.size() == 1) return ps.front();

    std::vector<std::string> names{""};
    std::vector<Triple> triples{Triple{}};
    std::size_t k = 1;
    for (std::size_t f = 0; f < ps.size(); ++f) {
        const auto& p = ps[f];
        const auto kf = p.color_count();
        std::vector<std::string> next_names;
        next_names.reserve(names.size() * kf);
        for (const auto& prefix : names) {
            for (const auto& n : p.names()) next_names.push_back(f == 0 ? n : prefix + "*" + n);
        }
        std::vector<Triple> next_triples;
        next_triples.reserve(triples.size() * p.triples().size());
        auto lift = [kf](ColorId a, ColorId b) { return static_cast<ColorId>(a * kf + b); };
        for (const auto& t : triples) {
            for (const auto& u : p.triples()) {
                next_triples.push_back({lift(t.left, u.left), lift(t.middle, u.middle), lift(t.right, u.right)});
            }
        }
        names = std::move(next_names);
        triples = std::move(next_triples);
        k *= kf;
    }
    return make_palette(std::move(names), std::move(triples));
}

/// Index of the clone of `c` in the symmetrization of a palette with `k` colors.
inline ColorId clone_of(ColorId c, std::size_t k) {
    return c < k ? static_cast<ColorId>(c + k) : static_cast<ColorId>(c - k);
}

/// Palette on the original colors plus one clone per color (clone of c at
/// index k + c, named c + "~"), with the six reorderings of every triple.
inline Palette symmetrize(const Palette& p) {
    const auto k = p.color_count();
    std::vector<std::string> names = p.names();
    for (const auto& n : p.names()) names.push_back(n + "~");
    auto bar = [k](ColorId c) { return static_cast<ColorId>(c + k); };
    std::vector<Triple> ts;
    ts.reserve(6 * p.triples().size());
    for (const auto& [x, y, z] : p.triples()) {
        ts.push_back({x, y, z});
        ts.push_back({bar(x), z, y});
        ts.push_back({y, x, bar(z)});
        ts.push_back({bar(y), bar(z), x});
        ts.push_back({z, bar(x), bar(y)});
        ts.push_back({bar(z), bar(y), bar(x)});
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return make_palette(std::move(names), std::move(ts));
}

struct ColorRoles {
    std::set<ColorId> left_colors;
    std::set<ColorId> middle_colors;
    std::set<ColorId> right_colors;
    std::set<ColorId> L;  // left but never right
    std::set<ColorId> M;  // middle
    std::set<ColorId> R;  // right but never left
    std::set<ColorId> B;  // both left and right
};

inline ColorRoles classify_roles(const Palette& p) {
    ColorRoles r;
    for (const auto& t : p.triples()) {
        r.left_colors.insert(t.left);
        r.middle_colors.insert(t.middle);
        r.right_colors.insert(t.right);
    }
    r.M = r.middle_colors;
    for (auto c : r.left_colors) (r.right_colors.count(c) ? r.B : r.L).insert(c);
    for (auto c : r.right_colors) {
        if (!r.left_colors.count(c)) r.R.insert(c);
    }
    return r;
}

/// A bijection carrying the triples of `p` exactly onto those of `q`.
/// Plain backtracking with triple-count and role-signature filtering; meant
/// for palettes of a few dozen colors at most.
inline std::optional<std::vector<ColorId>> find_isomorphism(const Palette& p, const Palette& q) {
    const auto k = p.color_count();
    if (k != q.color_count() || p.triples().size() != q.triples().size()) return std::nullopt;

    // occurrence signature (as left, middle, right) must match under the map
    using Sig = std::array<std::size_t, 3>;
    auto signatures = [k](const Palette& x) {
        std::vector<Sig> s(k, Sig{0, 0, 0});
        for (const auto& t : x.triples()) {
            ++s[t.left][0];
            ++s[t.middle][1];
            ++s[t.right][2];
        }
        return s;
    };
    const auto sp = signatures(p), sq = signatures(q);

    std::vector<ColorId> map(k, 0);
    std::vector<bool> used(k, false);
    auto consistent_so_far = [&](std::size_t assigned) {
        for (const auto& t : p.triples()) {
            if (t.left < assigned && t.middle < assigned && t.right < assigned &&
                !q.contains({map[t.left], map[t.middle], map[t.right]})) {
                return false;
            }
        }
        return true;
    };
    auto search = [&](auto&& self, std::size_t c) -> bool {
        if (c == k) return true;
        for (ColorId v = 0; v < k; ++v) {
            if (used[v] || sp[c] != sq[v]) continue;
            map[c] = v;
            used[v] = true;
            if (consistent_so_far(c + 1) && self(self, c + 1)) return true;
            used[v] = false;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return map;
}

/// Random palette on `colors` colors where each of the colors^3 triples is
/// feasible independently with probability `triple_prob`. Names are c0, c1, ...
template <class Rng>
Palette random_palette(std::size_t colors, double triple_prob, Rng& rng) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < colors; ++i) names.push_back("c" + std::to_string(i));
    std::bernoulli_distribution coin(triple_prob);
    std::vector<Triple> ts;
    for (ColorId x = 0; x < colors; ++x)
        for (ColorId y = 0; y < colors; ++y)
            for (ColorId z = 0; z < colors; ++z)
                if (coin(rng)) ts.push_back({x, y, z});
    return Palette(std::move(names), std::move(ts));
}

}  // namespace palcalc
