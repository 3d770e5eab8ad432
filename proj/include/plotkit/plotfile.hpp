#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "plotkit/api.hpp"
#include "plotkit/csv.hpp"
#include "plotkit/errors.hpp"

// Declarative plot-description files (schema: schemas/plotfile-v1.json):
// data references (inline arrays or CSV columns), a series list with
// alias-friendly attributes, plot/subplot/axis attributes and an optional
// subplot grid.

namespace plotkit {

struct PlotfileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline bool is_text_attr(const std::string& key) {
    return key == "label" || key == "title" || key == "window_title" || key == "text" ||
           key == "xlabel" || key == "ylabel";
}

inline AttrValue attr_from_plain(const std::string& key, const json& v) {
    if (v.is_boolean()) return AttrValue::boolean(v.get<bool>());
    if (v.is_number_integer()) return AttrValue::integer(v.get<std::int64_t>());
    if (v.is_number_float()) return AttrValue::number(v.get<double>());
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "auto") return AttrValue::auto_();
        return is_text_attr(key) ? AttrValue::text(s) : AttrValue::name(s);
    }
    if (v.is_array()) {
        std::vector<AttrValue> items;
        for (const auto& item : v) items.push_back(attr_from_plain(key, item));
        return AttrValue::list(std::move(items));
    }
    throw PlotfileError("unsupported attribute value for key '" + key + "'");
}

inline AttrMap attrs_from_plain(const json& obj) {
    AttrMap out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        std::string canonical = canonicalize_key(it.key());
        out.set(canonical, attr_from_plain(canonical, it.value()));
    }
    return out;
}

inline std::string dirname(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

class DataResolver {
public:
    DataResolver(const json& data_section, std::string base_dir)
        : data_(data_section), base_dir_(std::move(base_dir)) {}

    DataColumn resolve(const json& ref, const std::string& what) {
        if (ref.is_array()) return inline_column(ref, what);
        if (ref.is_string()) {
            const std::string name = ref.get<std::string>();
            if (!data_.is_object() || !data_.contains(name))
                throw PlotfileError("series references unknown data entry '" + name + "'");
            auto cached = cache_.find(name);
            if (cached != cache_.end()) return cached->second;
            DataColumn col = from_entry(data_[name], name);
            cache_.emplace(name, col);
            return col;
        }
        throw PlotfileError(what + " must be an inline array or a data-entry name");
    }

private:
    DataColumn inline_column(const json& arr, const std::string& what) {
        DataColumn col;
        for (const auto& v : arr) {
            if (v.is_null())
                col.values.push_back(missing_value());
            else if (v.is_number())
                col.values.push_back(v.get<double>());
            else
                throw PlotfileError(what + ": inline data must be numbers or null");
        }
        return col;
    }

    DataColumn from_entry(const json& entry, const std::string& name) {
        if (entry.is_array()) return inline_column(entry, "data." + name);
        if (entry.is_object() && entry.contains("csv") && entry.contains("column")) {
            std::string path = entry["csv"].get<std::string>();
            if (!path.empty() && path[0] != '/') path = base_dir_ + "/" + path;
            auto cols = load_csv(path, {entry["column"].get<std::string>()});
            return cols.front();
        }
        throw PlotfileError("data." + name +
                            " must be an array or {\"csv\": ..., \"column\": ...}");
    }

    const json& data_;
    std::string base_dir_;
    std::map<std::string, DataColumn> cache_;
};

inline void apply_axis_section(AxisSpec& axis, const json& section) {
    if (section.contains("label")) axis.label = section["label"].get<std::string>();
    if (section.contains("scale")) {
        const std::string s = section["scale"].get<std::string>();
        if (s == "log10" || s == "log")
            axis.scale = AxisScale::Log10;
        else if (s != "linear")
            throw PlotfileError("axis scale must be 'linear' or 'log10', got '" + s + "'");
    }
    if (section.contains("limits")) {
        const auto& l = section["limits"];
        if (!l.is_array() || l.size() != 2)
            throw PlotfileError("axis limits must be [lo, hi]");
        axis.set_limits(l[0].get<double>(), l[1].get<double>());
    }
}

} // namespace detail

/// Build an unresolved PlotSpec from a parsed plotfile document.
/// base_dir anchors relative CSV paths.
inline PlotSpec load_plotfile(const nlohmann::json& doc, const std::string& base_dir,
                              const RecipeRegistry& reg = standard_registry()) {
    using nlohmann::json;
    if (!doc.is_object()) throw PlotfileError("plotfile root must be a JSON object");
    if (!doc.contains("series") || !doc["series"].is_array() || doc["series"].empty())
        throw PlotfileError("plotfile needs a non-empty 'series' array");

    PlotSpec spec;
    int subplot_count = 1;
    if (doc.contains("subplots")) {
        if (!doc["subplots"].is_array() || doc["subplots"].empty())
            throw PlotfileError("'subplots' must be a non-empty array");
        subplot_count = static_cast<int>(doc["subplots"].size());
    }
    for (int i = 0; i < subplot_count; ++i) spec.subplots.emplace_back();
    if (doc.contains("layout")) {
        const auto& l = doc["layout"];
        int rows = l.value("rows", 1), cols = l.value("cols", subplot_count);
        if (rows * cols < subplot_count)
            throw PlotfileError("layout grid smaller than subplot count");
        LayoutNode::Grid g;
        g.rows = rows;
        g.cols = cols;
        for (int i = 0; i < rows * cols; ++i)
            g.children.push_back(i < subplot_count ? LayoutNode::leaf(i)
                                                   : LayoutNode::blank());
        g.widths.assign(static_cast<std::size_t>(cols), 1.0 / cols);
        g.heights.assign(static_cast<std::size_t>(rows), 1.0 / rows);
        spec.layout = {g};
    } else {
        spec.layout = default_grid(subplot_count);
    }

    if (doc.contains("plot")) spec.attrs = detail::attrs_from_plain(doc["plot"]);

    if (doc.contains("subplots")) {
        for (std::size_t i = 0; i < doc["subplots"].size(); ++i) {
            const json& sp = doc["subplots"][i];
            SubplotSpec& sub = spec.subplots[i];
            for (auto it = sp.begin(); it != sp.end(); ++it) {
                if (it.key() == "xaxis")
                    detail::apply_axis_section(sub.xaxis, it.value());
                else if (it.key() == "yaxis")
                    detail::apply_axis_section(sub.yaxis, it.value());
                else {
                    std::string canonical = canonicalize_key(it.key());
                    sub.attrs.set(canonical, detail::attr_from_plain(canonical, it.value()));
                }
            }
        }
    }

    json data_section = doc.contains("data") ? doc["data"] : json::object();
    detail::DataResolver resolver(data_section, base_dir);

    for (std::size_t i = 0; i < doc["series"].size(); ++i) {
        const json& sj = doc["series"][i];
        const std::string where = "series[" + std::to_string(i) + "]";
        SeriesSpec s;
        s.seriestype = sj.value("seriestype", "path");
        if (!reg.has_seriestype(s.seriestype))
            throw PlotfileError(where + ": unknown seriestype '" + s.seriestype + "'");
        s.subplot_index = sj.value("subplot", 0);
        if (s.subplot_index < 0 ||
            s.subplot_index >= static_cast<int>(spec.subplots.size()))
            throw PlotfileError(where + ": subplot index out of range");
        if (sj.contains("x")) s.x = sanitize_data(resolver.resolve(sj["x"], where + ".x"));
        if (sj.contains("y")) s.y = sanitize_data(resolver.resolve(sj["y"], where + ".y"));
        if (sj.contains("yerror"))
            s.yerror = sanitize_data(resolver.resolve(sj["yerror"], where + ".yerror"));
        if (sj.contains("grid")) {
            const json& g = sj["grid"];
            GridData grid;
            grid.rows = g.at("rows").get<std::size_t>();
            grid.cols = g.at("cols").get<std::size_t>();
            grid.values = g.at("values").get<std::vector<double>>();
            if (grid.values.size() != grid.rows * grid.cols)
                throw PlotfileError(where + ": grid values do not fill rows x cols");
            s.grid = std::move(grid);
        }
        if (!s.y && !s.grid)
            throw PlotfileError(where + ": needs 'y' data or a 'grid'");
        if (s.y && !s.x) s.x = iota_column(s.y->size());
        if (s.x && s.y && s.x->size() != s.y->size())
            throw PlotfileError(where + ": x and y lengths differ");
        if (sj.contains("attrs")) s.attrs = detail::attrs_from_plain(sj["attrs"]);
        int idx = static_cast<int>(spec.series.size());
        spec.subplots[static_cast<std::size_t>(s.subplot_index)]
            .series_indices.push_back(idx);
        spec.series.push_back(std::move(s));
    }
    return spec;
}

} // namespace plotkit
