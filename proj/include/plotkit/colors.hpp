#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plotkit/attr.hpp"
#include "plotkit/errors.hpp"

namespace plotkit {

/// Ordered discrete color list. Integer color attributes index into it
/// 1-based, wrapping modulo length.
struct Palette {
    std::vector<ColorSpec> colors;
    std::string name;

    const ColorSpec& at_wrapped(std::int64_t one_based) const {
        std::int64_t n = static_cast<std::int64_t>(colors.size());
        std::int64_t idx = ((one_based - 1) % n + n) % n;
        return colors[static_cast<std::size_t>(idx)];
    }
};

inline ColorSpec rgb255(int r, int g, int b, double a = 1.0) {
    return {r / 255.0, g / 255.0, b / 255.0, a};
}

/// The shipped 10-color palette. Entry 1 is steelblue.
inline const Palette& default_palette() {
    static const Palette p{{
                               {0.275, 0.51, 0.706, 1.0}, // steelblue
                               rgb255(230, 111, 81),      // terracotta
                               rgb255(58, 160, 125),      // jade
                               rgb255(222, 168, 62),      // amber
                               rgb255(121, 94, 191),      // violet
                               rgb255(128, 128, 128),     // gray
                               rgb255(198, 83, 140),      // raspberry
                               rgb255(162, 132, 94),      // tan
                               rgb255(73, 132, 191),      // cornflower
                               rgb255(115, 161, 58),      // olive
                           },
                           "default"};
    return p;
}

inline const std::map<std::string, ColorSpec>& named_colors() {
    static const std::map<std::string, ColorSpec> table = {
        {"steelblue", {0.275, 0.51, 0.706, 1.0}},
        {"black", {0, 0, 0, 1}},
        {"white", {1, 1, 1, 1}},
        {"red", rgb255(255, 0, 0)},
        {"green", rgb255(0, 128, 0)},
        {"blue", rgb255(0, 0, 255)},
        {"orange", rgb255(255, 165, 0)},
        {"purple", rgb255(128, 0, 128)},
        {"yellow", rgb255(255, 255, 0)},
        {"cyan", rgb255(0, 255, 255)},
        {"magenta", rgb255(255, 0, 255)},
        {"gray", rgb255(128, 128, 128)},
        {"grey", rgb255(128, 128, 128)},
        {"lightgray", rgb255(211, 211, 211)},
        {"darkgray", rgb255(169, 169, 169)},
        {"brown", rgb255(165, 42, 42)},
        {"pink", rgb255(255, 192, 203)},
        {"navy", rgb255(0, 0, 128)},
        {"teal", rgb255(0, 128, 128)},
        {"gold", rgb255(255, 215, 0)},
        {"crimson", rgb255(220, 20, 60)},
        {"transparent", {0, 0, 0, 0}},
    };
    return table;
}

inline ColorSpec lookup_color_name(const std::string& name) {
    auto it = named_colors().find(name);
    if (it == named_colors().end()) throw UnknownColorName(name);
    return it->second;
}

/// Resolve a color-valued attribute to a concrete color.
///   Int(n)       -> palette, 1-based with wraparound
///   Name("auto") -> palette color for this series (1-based index)
///   Name(css)    -> named color table
///   Color        -> passthrough
inline ColorSpec resolve_color(const AttrValue& v, const Palette& palette,
                               int series_index) {
    switch (v.kind()) {
    case AttrValue::Kind::Color:
        return v.as_color();
    case AttrValue::Kind::Int:
        return palette.at_wrapped(v.as_int());
    case AttrValue::Kind::Auto:
        return palette.at_wrapped(series_index);
    case AttrValue::Kind::Name: {
        const std::string& n = v.as_name();
        if (n == "auto") return palette.at_wrapped(series_index);
        return lookup_color_name(n);
    }
    default:
        throw BadAttrAccess("a color-convertible value");
    }
}

} // namespace plotkit
