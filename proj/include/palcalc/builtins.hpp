#pragma once

#include <map>
#include <optional>
#include <string>

#include "palette.hpp"

namespace palcalc::builtins {

/// One color that is both a left and a middle color.
inline Palette lm() {
    return make_palette_named({"alpha", "beta'", "gamma", "gamma'", "omega"},
                              {{"alpha", "omega", "gamma"}, {"omega", "beta'", "gamma'"}});
}

/// A chain of three triples.
inline Palette three_triples() {
    return make_palette_named({"alpha", "beta", "beta'", "beta''", "gamma''", "omega", "omega'"},
                              {{"alpha", "beta", "omega"}, {"omega", "beta'", "omega'"}, {"omega'", "beta''", "gamma''"}});
}

/// Compact chain of two triples; Lagrangian 4/81.
inline Palette p481() {
    return make_palette_named({"alpha", "beta", "gamma", "omega"},
                              {{"alpha", "beta", "gamma"}, {"alpha", "beta", "omega"}, {"omega", "beta", "gamma"}});
}

/// Two colors, triples (alpha,beta,alpha) and (alpha,beta,beta).
inline Palette two_color() {
    return make_palette_named({"alpha", "beta"}, {{"alpha", "beta", "alpha"}, {"alpha", "beta", "beta"}});
}

/// Registry lookup by the names used on the command line (without '@').
inline std::optional<Palette> by_name(const std::string& name) {
    if (name == "P_LM") return lm();
    if (name == "P_3T") return three_triples();
    if (name == "P_4_81") return p481();
    if (name == "P_two_color") return two_color();
    return std::nullopt;
}

inline const std::vector<std::string>& registry_names() {
    static const std::vector<std::string> names{"P_LM", "P_3T", "P_4_81", "P_two_color"};
    return names;
}

}  // namespace palcalc::builtins
