#pragma once

#include <cmath>
#include <string>
#include <utility>

#include <json.hpp>

#include "plotkit/backend_counters.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/plot.hpp"

// Lossless-intent serialization backend: a self-describing versioned JSON
// container (schema: schemas/plotspec-v1.json). A spec serialized at any
// pipeline stage can be reloaded and rendered with any backend. Domain
// payloads are type-erased at runtime; their type tags survive the round
// trip, their values do not (serialize before or after recipe expansion
// accordingly).

namespace plotkit {

inline constexpr const char* kContainerVersion = "1";

namespace detail {

using nlohmann::json;

inline json attr_value_json(const AttrValue& v) {
    switch (v.kind()) {
    case AttrValue::Kind::Number: return {{"t", "number"}, {"v", v.as_number()}};
    case AttrValue::Kind::Int: return {{"t", "int"}, {"v", v.as_int()}};
    case AttrValue::Kind::Text: return {{"t", "text"}, {"v", v.as_text()}};
    case AttrValue::Kind::Color: {
        const ColorSpec& c = v.as_color();
        return {{"t", "color"}, {"v", {c.r, c.g, c.b, c.a}}};
    }
    case AttrValue::Kind::Name: return {{"t", "name"}, {"v", v.as_name()}};
    case AttrValue::Kind::List: {
        json items = json::array();
        for (const auto& item : v.as_list()) items.push_back(attr_value_json(item));
        return {{"t", "list"}, {"v", std::move(items)}};
    }
    case AttrValue::Kind::Bool: return {{"t", "bool"}, {"v", v.as_bool()}};
    case AttrValue::Kind::Auto: return {{"t", "auto"}};
    default: return {{"t", "unset"}};
    }
}

inline AttrValue attr_value_from_json(const json& j) {
    const std::string t = j.at("t").get<std::string>();
    if (t == "number") return AttrValue::number(j.at("v").get<double>());
    if (t == "int") return AttrValue::integer(j.at("v").get<std::int64_t>());
    if (t == "text") return AttrValue::text(j.at("v").get<std::string>());
    if (t == "color") {
        const auto& c = j.at("v");
        return AttrValue::color({c.at(0).get<double>(), c.at(1).get<double>(),
                                 c.at(2).get<double>(), c.at(3).get<double>()});
    }
    if (t == "name") return AttrValue::name(j.at("v").get<std::string>());
    if (t == "list") {
        std::vector<AttrValue> items;
        for (const auto& item : j.at("v")) items.push_back(attr_value_from_json(item));
        return AttrValue::list(std::move(items));
    }
    if (t == "bool") return AttrValue::boolean(j.at("v").get<bool>());
    if (t == "auto") return AttrValue::auto_();
    if (t == "unset") return AttrValue::unset();
    throw MalformedContainer("unknown attribute value tag: " + t);
}

inline json attr_map_json(const AttrMap& m) {
    json arr = json::array();
    for (const auto& [k, v] : m) arr.push_back({k, attr_value_json(v)});
    return arr;
}

inline AttrMap attr_map_from_json(const json& j) {
    AttrMap m;
    for (const auto& entry : j)
        m.set(entry.at(0).get<std::string>(), attr_value_from_json(entry.at(1)));
    return m;
}

inline json column_json(const DataColumn& c) {
    json vals = json::array();
    for (double v : c.values) {
        if (std::isfinite(v))
            vals.push_back(v);
        else
            vals.push_back(nullptr);
    }
    json out = {{"values", std::move(vals)}};
    if (c.label) out["label"] = *c.label;
    return out;
}

inline DataColumn column_from_json(const json& j) {
    DataColumn c;
    for (const auto& v : j.at("values"))
        c.values.push_back(v.is_null() ? missing_value() : v.get<double>());
    if (j.contains("label")) c.label = j.at("label").get<std::string>();
    return c;
}

inline json axis_json(const AxisSpec& a) {
    json out;
    out["which"] = a.which == AxisSpec::Which::X ? "x"
                   : a.which == AxisSpec::Which::Y ? "y" : "z";
    out["scale"] = a.scale == AxisScale::Log10 ? "log10" : "linear";
    out["label"] = a.label;
    if (a.limits) out["limits"] = {a.limits->first, a.limits->second};
    if (a.ticks) out["ticks"] = {{"positions", a.ticks->positions},
                                 {"labels", a.ticks->labels}};
    out["attrs"] = attr_map_json(a.attrs);
    return out;
}

inline AxisSpec axis_from_json(const json& j) {
    AxisSpec a;
    const std::string w = j.at("which").get<std::string>();
    a.which = w == "x" ? AxisSpec::Which::X
              : w == "y" ? AxisSpec::Which::Y : AxisSpec::Which::Z;
    a.scale = j.at("scale").get<std::string>() == "log10" ? AxisScale::Log10
                                                          : AxisScale::Linear;
    a.label = j.at("label").get<std::string>();
    if (j.contains("limits"))
        a.limits = {j["limits"].at(0).get<double>(), j["limits"].at(1).get<double>()};
    if (j.contains("ticks")) {
        TickSet t;
        t.positions = j["ticks"].at("positions").get<std::vector<double>>();
        t.labels = j["ticks"].at("labels").get<std::vector<std::string>>();
        a.ticks = std::move(t);
    }
    a.attrs = attr_map_from_json(j.at("attrs"));
    return a;
}

inline json layout_json(const LayoutNode& n) {
    if (const auto* leaf = std::get_if<LayoutNode::Leaf>(&n.node))
        return {{"leaf", leaf->subplot_index}};
    if (std::holds_alternative<LayoutNode::Blank>(n.node)) return {{"blank", true}};
    const auto& g = std::get<LayoutNode::Grid>(n.node);
    json children = json::array();
    for (const auto& c : g.children) children.push_back(layout_json(c));
    return {{"grid",
             {{"rows", g.rows},
              {"cols", g.cols},
              {"children", std::move(children)},
              {"widths", g.widths},
              {"heights", g.heights}}}};
}

inline LayoutNode layout_from_json(const json& j) {
    if (j.contains("leaf")) return LayoutNode::leaf(j["leaf"].get<int>());
    if (j.contains("blank")) return LayoutNode::blank();
    const auto& g = j.at("grid");
    LayoutNode::Grid grid;
    grid.rows = g.at("rows").get<int>();
    grid.cols = g.at("cols").get<int>();
    for (const auto& c : g.at("children")) grid.children.push_back(layout_from_json(c));
    grid.widths = g.at("widths").get<std::vector<double>>();
    grid.heights = g.at("heights").get<std::vector<double>>();
    return {std::move(grid)};
}

inline json series_json(const SeriesSpec& s) {
    json out;
    out["seriestype"] = s.seriestype;
    out["subplot_index"] = s.subplot_index;
    out["attrs"] = attr_map_json(s.attrs);
    if (s.x) out["x"] = column_json(*s.x);
    if (s.y) out["y"] = column_json(*s.y);
    if (s.z) out["z"] = column_json(*s.z);
    if (s.yerror) out["yerror"] = column_json(*s.yerror);
    if (s.xerror) out["xerror"] = column_json(*s.xerror);
    if (s.fill_range) out["fill_range"] = column_json(*s.fill_range);
    if (s.grid)
        out["grid"] = {{"rows", s.grid->rows},
                       {"cols", s.grid->cols},
                       {"values", s.grid->values}};
    if (s.payload)
        out["payload"] = {{"type_tag", s.payload->type_tag},
                          {"element_tag", s.payload->element_tag}};
    return out;
}

inline SeriesSpec series_from_json(const json& j) {
    SeriesSpec s;
    s.seriestype = j.at("seriestype").get<std::string>();
    s.subplot_index = j.at("subplot_index").get<int>();
    s.attrs = attr_map_from_json(j.at("attrs"));
    if (j.contains("x")) s.x = column_from_json(j["x"]);
    if (j.contains("y")) s.y = column_from_json(j["y"]);
    if (j.contains("z")) s.z = column_from_json(j["z"]);
    if (j.contains("yerror")) s.yerror = column_from_json(j["yerror"]);
    if (j.contains("xerror")) s.xerror = column_from_json(j["xerror"]);
    if (j.contains("fill_range")) s.fill_range = column_from_json(j["fill_range"]);
    if (j.contains("grid")) {
        GridData g;
        g.rows = j["grid"].at("rows").get<std::size_t>();
        g.cols = j["grid"].at("cols").get<std::size_t>();
        g.values = j["grid"].at("values").get<std::vector<double>>();
        s.grid = std::move(g);
    }
    if (j.contains("payload"))
        s.payload = DomainPayload{j["payload"].at("type_tag").get<std::string>(),
                                  j["payload"].at("element_tag").get<std::string>(), {}};
    return s;
}

inline json plot_json(const PlotSpec& spec) {
    json out;
    out["attrs"] = attr_map_json(spec.attrs);
    out["layout"] = layout_json(spec.layout);
    out["resolved"] = spec.resolved;
    json subplots = json::array();
    for (const auto& sp : spec.subplots)
        subplots.push_back({{"attrs", attr_map_json(sp.attrs)},
                            {"xaxis", axis_json(sp.xaxis)},
                            {"yaxis", axis_json(sp.yaxis)},
                            {"series_indices", sp.series_indices}});
    out["subplots"] = std::move(subplots);
    json series = json::array();
    for (const auto& s : spec.series) series.push_back(series_json(s));
    out["series"] = std::move(series);
    return out;
}

inline PlotSpec plot_from_json(const json& j) {
    PlotSpec spec;
    spec.attrs = attr_map_from_json(j.at("attrs"));
    spec.layout = layout_from_json(j.at("layout"));
    spec.resolved = j.at("resolved").get<bool>();
    for (const auto& sp : j.at("subplots")) {
        SubplotSpec sub;
        sub.attrs = attr_map_from_json(sp.at("attrs"));
        sub.xaxis = axis_from_json(sp.at("xaxis"));
        sub.yaxis = axis_from_json(sp.at("yaxis"));
        sub.series_indices = sp.at("series_indices").get<std::vector<int>>();
        spec.subplots.push_back(std::move(sub));
    }
    for (const auto& s : j.at("series")) spec.series.push_back(series_from_json(s));
    return spec;
}

} // namespace detail

/// Serialize with extra top-level fields carried through opaquely.
inline std::string serialize_spec(const PlotSpec& spec,
                                  const nlohmann::json& extra_fields = nlohmann::json::object()) {
    ++backend_counters().serialize;
    nlohmann::json container = extra_fields.is_object() ? extra_fields
                                                        : nlohmann::json::object();
    container["version"] = kContainerVersion;
    container["plot"] = detail::plot_json(spec);
    return container.dump(2) + "\n";
}

struct LoadedContainer {
    PlotSpec spec;
    nlohmann::json extra_fields; // unknown keys, preserved for re-serialization
};

inline LoadedContainer deserialize_container(const std::string& bytes) {
    nlohmann::json container;
    try {
        container = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedContainer(std::string("not valid JSON: ") + e.what());
    }
    if (!container.is_object() || !container.contains("version"))
        throw MalformedContainer("missing version field");
    const std::string version = container["version"].is_string()
                                    ? container["version"].get<std::string>()
                                    : container["version"].dump();
    if (version != kContainerVersion) throw VersionMismatch(version);
    if (!container.contains("plot")) throw MalformedContainer("missing plot field");

    LoadedContainer out;
    try {
        out.spec = detail::plot_from_json(container["plot"]);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedContainer(std::string("bad plot structure: ") + e.what());
    }
    container.erase("version");
    container.erase("plot");
    out.extra_fields = std::move(container);
    return out;
}

inline PlotSpec deserialize_spec(const std::string& bytes) {
    return deserialize_container(bytes).spec;
}

} // namespace plotkit
