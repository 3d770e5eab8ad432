#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plotkit/aliases.hpp"
#include "plotkit/attr.hpp"
#include "plotkit/defaults.hpp"
#include "plotkit/demo_types.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/input_forms.hpp"
#include "plotkit/layout.hpp"
#include "plotkit/plot.hpp"
#include "plotkit/recipes.hpp"
#include "plotkit/recipes_std.hpp"

namespace plotkit {

/// The shipped registry: standard series recipes plus the demo domain
/// recipes. Registration happens once at startup; reads are lock-free.
inline RecipeRegistry& standard_registry() {
    static RecipeRegistry reg = [] {
        RecipeRegistry r;
        register_standard_recipes(r);
        register_demo_recipes(r);
        return r;
    }();
    return reg;
}

enum class AttrLevel { Plot, Subplot, Axis, Series };

inline AttrLevel attr_level(const std::string& canonical) {
    static const std::set<std::string> plot_keys{"size", "dpi", "window_title"};
    static const std::set<std::string> subplot_keys{"title", "legend", "background"};
    static const std::set<std::string> axis_keys{"xlimits", "ylimits", "zlimits",
                                                 "xlabel",  "ylabel",  "xscale",
                                                 "yscale",  "xticks",  "yticks"};
    if (plot_keys.count(canonical)) return AttrLevel::Plot;
    if (subplot_keys.count(canonical)) return AttrLevel::Subplot;
    if (axis_keys.count(canonical)) return AttrLevel::Axis;
    return AttrLevel::Series;
}

namespace detail {

inline std::pair<double, double> limits_from_value(const AttrValue& v) {
    if (v.kind() == AttrValue::Kind::List && v.as_list().size() == 2)
        return {v.as_list()[0].as_number(), v.as_list()[1].as_number()};
    throw ArgumentError("axis limits must be a 2-element list (lo, hi)");
}

inline void apply_axis_attr(AxisSpec& axis, const std::string& key, const AttrValue& v) {
    bool is_label = key == "xlabel" || key == "ylabel";
    bool is_limits = key == "xlimits" || key == "ylimits" || key == "zlimits";
    bool is_scale = key == "xscale" || key == "yscale";
    bool is_ticks = key == "xticks" || key == "yticks";
    if (is_label) {
        axis.label = v.kind() == AttrValue::Kind::Text ? v.as_text() : v.as_name();
    } else if (is_limits) {
        auto [lo, hi] = limits_from_value(v);
        axis.set_limits(lo, hi);
    } else if (is_scale) {
        const std::string& s = v.as_name();
        if (s == "linear")
            axis.scale = AxisScale::Linear;
        else if (s == "log10" || s == "log")
            axis.scale = AxisScale::Log10;
        else
            throw ArgumentError("unknown axis scale: " + s);
    } else if (is_ticks) {
        if (v.is_auto()) {
            axis.ticks.reset();
            return;
        }
        TickSet t;
        for (const auto& p : v.as_list()) t.positions.push_back(p.as_number());
        double step = t.positions.size() > 1 ? t.positions[1] - t.positions[0] : 1.0;
        t.labels = tick_labels(t.positions, step);
        axis.ticks = std::move(t);
    } else {
        axis.attrs.set(key, v);
    }
}

} // namespace detail

/// Route one canonical kwarg to its attribute level on `spec`.
/// Series-level kwargs are applied to the series whose indices are given.
inline void apply_kwarg(PlotSpec& spec, int subplot_index, const std::string& canonical,
                        const AttrValue& value, const std::vector<int>& new_series) {
    if (subplot_index < 0 || subplot_index >= static_cast<int>(spec.subplots.size()))
        throw ArgumentError("subplot index out of range: " +
                            std::to_string(subplot_index));
    SubplotSpec& sp = spec.subplots[static_cast<std::size_t>(subplot_index)];
    switch (attr_level(canonical)) {
    case AttrLevel::Plot:
        spec.attrs.set(canonical, value);
        break;
    case AttrLevel::Subplot:
        sp.attrs.set(canonical, value);
        break;
    case AttrLevel::Axis: {
        bool is_y = canonical[0] == 'y';
        detail::apply_axis_attr(is_y ? sp.yaxis : sp.xaxis, canonical, value);
        break;
    }
    case AttrLevel::Series:
        for (int idx : new_series)
            spec.series[static_cast<std::size_t>(idx)].attrs.set(canonical, value);
        break;
    }
}

namespace detail {

inline PlotSpec fresh_plot() {
    PlotSpec spec;
    spec.layout = LayoutNode::leaf(0);
    spec.subplots.emplace_back();
    return spec;
}

inline SeriesSpec series_from_prototype(SeriesPrototype proto, int subplot_index) {
    SeriesSpec s;
    s.subplot_index = subplot_index;
    s.x = std::move(proto.x);
    s.y = std::move(proto.y);
    s.payload = std::move(proto.payload);
    s.attrs = std::move(proto.attrs);
    return s;
}

/// Merge child plots of a layout composition into one fresh spec
/// (value semantics: children are copied, not referenced).
inline PlotSpec compose_layout(const LayoutComposition& lc) {
    PlotSpec out;
    for (const PlotSpec& child : lc.children) {
        int subplot_base = static_cast<int>(out.subplots.size());
        int series_base = static_cast<int>(out.series.size());
        for (const SubplotSpec& sp : child.subplots) {
            SubplotSpec copy = sp;
            for (int& idx : copy.series_indices) idx += series_base;
            out.subplots.push_back(std::move(copy));
        }
        for (const SeriesSpec& s : child.series) {
            SeriesSpec copy = s;
            copy.subplot_index += subplot_base;
            out.series.push_back(std::move(copy));
        }
    }
    out.layout = default_grid(static_cast<int>(out.subplots.size()));
    return out;
}

} // namespace detail

/// Append interpreted series and/or attribute overrides to an existing
/// plot. Returns the same logical plot object. No rendering happens here.
inline PlotSpec& plot_mut(PlotSpec& target, const ArgList& args, const AttrMap& kwargs,
                          const RecipeRegistry& reg = standard_registry()) {
    // Canonicalize keys first so alias and canonical spellings coincide.
    AttrMap canon;
    for (const auto& [k, v] : kwargs) canon.set(canonicalize_key(k), v);

    int subplot_index = 0;
    if (const AttrValue* sub = canon.find("subplot")) {
        subplot_index = static_cast<int>(sub->as_int());
        canon.erase("subplot");
    }
    if (subplot_index < 0 || subplot_index >= static_cast<int>(target.subplots.size()))
        throw ArgumentError("subplot index out of range: " +
                            std::to_string(subplot_index));

    std::string seriestype = "path";
    if (const AttrValue* st = canon.find("seriestype")) {
        seriestype = st->as_name();
        canon.erase("seriestype");
    }
    if (!reg.has_seriestype(seriestype)) throw UnknownSeriestype(seriestype);

    InterpretResult interpreted = interpret_args(args);
    std::vector<int> new_series;
    if (std::holds_alternative<LayoutComposition>(interpreted)) {
        if (!target.series.empty() || target.subplots.size() != 1 ||
            !target.subplots[0].series_indices.empty())
            throw ArgumentError("nested-plot layout arguments require an empty target");
        target = detail::compose_layout(std::get<LayoutComposition>(interpreted));
    } else {
        for (auto& proto : std::get<std::vector<SeriesPrototype>>(interpreted)) {
            int idx = static_cast<int>(target.series.size());
            SeriesSpec s = detail::series_from_prototype(std::move(proto), subplot_index);
            s.seriestype = seriestype;
            target.subplots[static_cast<std::size_t>(subplot_index)]
                .series_indices.push_back(idx);
            target.series.push_back(std::move(s));
            new_series.push_back(idx);
        }
    }

    for (const auto& [k, v] : canon)
        apply_kwarg(target, subplot_index, k, v, new_series);
    return target;
}

/// The one-function entry point: interpret positional arguments, apply
/// keyword attributes, return an unresolved plot. Delayed rendering:
/// nothing is drawn until an output call.
inline PlotSpec new_plot(const ArgList& args = {}, const AttrMap& kwargs = {},
                         const RecipeRegistry& reg = standard_registry()) {
    PlotSpec spec = detail::fresh_plot();
    plot_mut(spec, args, kwargs, reg);
    return spec;
}

/// plot(args...; seriestype = <name>, kwargs...). A caller-supplied
/// seriestype kwarg wins over the shorthand.
inline PlotSpec shorthand(const std::string& seriestype, const ArgList& args = {},
                          const AttrMap& kwargs = {},
                          const RecipeRegistry& reg = standard_registry()) {
    if (!reg.has_seriestype(seriestype)) throw UnknownSeriestype(seriestype);
    AttrMap merged;
    for (const auto& [k, v] : kwargs) merged.set(canonicalize_key(k), v);
    if (!merged.contains("seriestype"))
        merged.set("seriestype", AttrValue::name(seriestype));
    return new_plot(args, merged, reg);
}

/// Run the construction half of the pipeline to completion: hierarchical
/// defaults, recursive recipe expansion, then defaults again for series
/// the recipes introduced. The result has only primitive seriestypes and
/// no Unset attribute values.
inline PlotSpec resolve(const PlotSpec& spec,
                        const RecipeRegistry& reg = standard_registry()) {
    if (spec.resolved) return spec;
    PlotSpec out = apply_defaults(spec);
    out = apply_recipes(reg, out);
    out = apply_defaults(std::move(out));
    out.resolved = true;
    return out;
}

} // namespace plotkit
