#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "plotkit/backend_counters.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/layout.hpp"
#include "plotkit/scene.hpp"
#include "plotkit/warnings.hpp"

namespace plotkit {

namespace detail {

/// "rgba(r,g,b,a)" with 0-255 integer channels, alpha 0-1.
inline std::string plotly_color(const ColorSpec& c) {
    auto ch = [](double v) {
        int x = static_cast<int>(std::lround(v * 255.0));
        return x < 0 ? 0 : (x > 255 ? 255 : x);
    };
    char alpha[16];
    std::snprintf(alpha, sizeof alpha, "%g", c.a);
    return "rgba(" + std::to_string(ch(c.r)) + "," + std::to_string(ch(c.g)) + "," +
           std::to_string(ch(c.b)) + "," + alpha + ")";
}

inline nlohmann::json column_values_json(const DataColumn& col) {
    nlohmann::json arr = nlohmann::json::array();
    for (double v : col.values) {
        if (std::isfinite(v))
            arr.push_back(v);
        else
            arr.push_back(nullptr); // gap
    }
    return arr;
}

} // namespace detail

/// Declarative backend: consumes the resolved spec directly (no scene
/// graph) and emits a plotly-figure JSON subset, schema shipped at
/// schemas/plotly-subset.json.
inline std::string render_plotly_json(const PlotSpec& spec) {
    ++backend_counters().plotly;
    if (!spec.resolved) throw UnresolvedSpec();
    using nlohmann::json;

    json fig;
    fig["data"] = json::array();
    for (const SeriesSpec& s : spec.series) {
        json trace;
        ColorSpec seriescolor = detail::attr_color(s.attrs, "seriescolor");
        std::string label = detail::attr_name(s.attrs, "label", "");
        if (!label.empty()) trace["name"] = label;

        if (s.seriestype == "scatter") {
            trace["type"] = "scatter";
            trace["mode"] = "markers";
            trace["marker"] = {{"color", detail::plotly_color(
                                             detail::attr_color(s.attrs, "markercolor"))},
                               {"size", detail::attr_number(s.attrs, "markersize", 4)}};
        } else if (s.seriestype == "path") {
            trace["type"] = "scatter";
            trace["mode"] = "lines";
            trace["line"] = {{"color", detail::plotly_color(
                                           detail::attr_color(s.attrs, "linecolor"))},
                             {"width", detail::attr_number(s.attrs, "linewidth", 1)}};
        } else if (s.seriestype == "shape") {
            trace["type"] = "scatter";
            trace["mode"] = "lines";
            trace["fill"] = "toself";
            trace["fillcolor"] =
                detail::plotly_color(detail::attr_color(s.attrs, "fillcolor"));
            trace["line"] = {{"color", detail::plotly_color(
                                           detail::attr_color(s.attrs, "linecolor"))}};
        } else if (s.seriestype == "heatmap-grid") {
            trace["type"] = "heatmap";
            json z = json::array();
            for (std::size_t r = 0; r < s.grid->rows; ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < s.grid->cols; ++c)
                    row.push_back(s.grid->at(r, c));
                z.push_back(std::move(row));
            }
            trace["z"] = std::move(z);
        } else if (s.seriestype == "text-annotation") {
            trace["type"] = "scatter";
            trace["mode"] = "text";
            trace["text"] = detail::attr_name(s.attrs, "text", "");
        } else {
            warn("plotly backend: unsupported seriestype '" + s.seriestype +
                 "', emitting as scatter");
            trace["type"] = "scatter";
            trace["mode"] = "markers";
            trace["meta"] = {{"warning", "unsupported seriestype " + s.seriestype}};
        }
        if (s.seriestype != "heatmap-grid") {
            if (s.x) trace["x"] = detail::column_values_json(*s.x);
            if (s.y) trace["y"] = detail::column_values_json(*s.y);
        }
        if (s.yerror)
            trace["error_y"] = {{"type", "data"},
                                {"array", detail::column_values_json(*s.yerror)},
                                {"visible", true}};
        (void)seriescolor;
        fig["data"].push_back(std::move(trace));
    }

    json layout;
    auto [w, h] = plot_size(spec);
    layout["width"] = w;
    layout["height"] = h;
    if (!spec.subplots.empty()) {
        const SubplotSpec& sp = spec.subplots.front();
        std::string title = detail::attr_name(sp.attrs, "title", "");
        if (!title.empty()) layout["title"] = {{"text", title}};
        auto xl = infer_limits(axis_data(spec, sp, AxisSpec::Which::X), sp.xaxis);
        auto yl = infer_limits(axis_data(spec, sp, AxisSpec::Which::Y), sp.yaxis);
        layout["xaxis"] = {{"title", {{"text", sp.xaxis.label}}},
                           {"range", {xl.first, xl.second}}};
        layout["yaxis"] = {{"title", {{"text", sp.yaxis.label}}},
                           {"range", {yl.first, yl.second}}};
        if (sp.xaxis.scale == AxisScale::Log10) layout["xaxis"]["type"] = "log";
        if (sp.yaxis.scale == AxisScale::Log10) layout["yaxis"]["type"] = "log";
    }
    fig["layout"] = std::move(layout);
    return fig.dump(2) + "\n";
}

} // namespace plotkit
