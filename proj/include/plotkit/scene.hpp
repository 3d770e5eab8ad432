#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "plotkit/colors.hpp"
#include "plotkit/defaults.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/layout.hpp"
#include "plotkit/plot.hpp"
#include "plotkit/recipes_std.hpp"

namespace plotkit {

struct StrokeStyle {
    ColorSpec color;
    double width = 1.0;

    friend bool operator==(const StrokeStyle&, const StrokeStyle&) = default;
};

struct Point {
    double x = 0, y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct PathPrim {
    std::vector<Point> points;
    StrokeStyle stroke;

    friend bool operator==(const PathPrim&, const PathPrim&) = default;
};

struct PolygonPrim {
    std::vector<Point> points;
    ColorSpec fill;
    StrokeStyle stroke;

    friend bool operator==(const PolygonPrim&, const PolygonPrim&) = default;
};

struct MarkerPrim {
    Point center;
    std::string shape = "circle";
    double size_pt = 4;
    ColorSpec fill;
    StrokeStyle stroke;

    friend bool operator==(const MarkerPrim&, const MarkerPrim&) = default;
};

struct TextPrim {
    Point anchor;
    std::string content;
    double font_size = 11;
    std::string halign = "center"; // left | center | right
    std::string valign = "middle"; // top | middle | bottom
    ColorSpec color{0, 0, 0, 1};

    friend bool operator==(const TextPrim&, const TextPrim&) = default;
};

struct CellGridPrim {
    Point origin;
    double cell_w = 0, cell_h = 0;
    std::size_t rows = 0, cols = 0;
    std::vector<ColorSpec> colors; // row-major

    friend bool operator==(const CellGridPrim&, const CellGridPrim&) = default;
};

using RenderPrimitive =
    std::variant<PathPrim, PolygonPrim, MarkerPrim, TextPrim, CellGridPrim>;

struct SceneLayer {
    BoundingBox clip;
    std::vector<RenderPrimitive> primitives;

    friend bool operator==(const SceneLayer&, const SceneLayer&) = default;
};

/// Fully resolved, backend-agnostic render primitives in canvas
/// coordinates; layer order is z-order.
struct SceneGraph {
    double width = 0, height = 0;
    std::vector<SceneLayer> layers;

    friend bool operator==(const SceneGraph&, const SceneGraph&) = default;
};

/// Two-color gradient used for heatmap cells; t in [0,1].
inline ColorSpec heatmap_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const ColorSpec lo = rgb255(13, 8, 135);
    const ColorSpec hi = rgb255(240, 249, 33);
    return {lo.r + t * (hi.r - lo.r), lo.g + t * (hi.g - lo.g),
            lo.b + t * (hi.b - lo.b), 1.0};
}

namespace detail {

inline ColorSpec attr_color(const AttrMap& attrs, const std::string& key,
                            ColorSpec fallback = {0, 0, 0, 1}) {
    const AttrValue* v = attrs.find(key);
    if (v && v->kind() == AttrValue::Kind::Color) return v->as_color();
    return fallback;
}

inline double attr_number(const AttrMap& attrs, const std::string& key, double fb) {
    const AttrValue* v = attrs.find(key);
    if (v && (v->kind() == AttrValue::Kind::Number || v->kind() == AttrValue::Kind::Int))
        return v->as_number();
    return fb;
}

inline std::string attr_name(const AttrMap& attrs, const std::string& key,
                             const std::string& fb) {
    const AttrValue* v = attrs.find(key);
    if (v && v->kind() == AttrValue::Kind::Name) return v->as_name();
    if (v && v->kind() == AttrValue::Kind::Text) return v->as_text();
    return fb;
}

/// Data-to-canvas transform for one subplot (y axis flipped).
struct DataTransform {
    BoundingBox box;
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool xlog = false, ylog = false;

    double tx(double x) const {
        double v = xlog ? std::log10(x) : x;
        double lo = xlog ? std::log10(xlo) : xlo;
        double hi = xlog ? std::log10(xhi) : xhi;
        return box.x0 + (v - lo) / (hi - lo) * box.w;
    }
    double ty(double y) const {
        double v = ylog ? std::log10(y) : y;
        double lo = ylog ? std::log10(ylo) : ylo;
        double hi = ylog ? std::log10(yhi) : yhi;
        return box.y0 + box.h - (v - lo) / (hi - lo) * box.h;
    }
    Point map(double x, double y) const { return {tx(x), ty(y)}; }
};

/// Cohen-Sutherland style segment clip against a box.
inline bool clip_segment(Point& a, Point& b, const BoundingBox& box) {
    auto code = [&](const Point& p) {
        int c = 0;
        if (p.x < box.x0) c |= 1;
        if (p.x > box.x0 + box.w) c |= 2;
        if (p.y < box.y0) c |= 4;
        if (p.y > box.y0 + box.h) c |= 8;
        return c;
    };
    int ca = code(a), cb = code(b);
    for (int iter = 0; iter < 8; ++iter) {
        if (!(ca | cb)) return true;
        if (ca & cb) return false;
        int c = ca ? ca : cb;
        Point p;
        if (c & 1) {
            p.x = box.x0;
            p.y = a.y + (b.y - a.y) * (box.x0 - a.x) / (b.x - a.x);
        } else if (c & 2) {
            p.x = box.x0 + box.w;
            p.y = a.y + (b.y - a.y) * (box.x0 + box.w - a.x) / (b.x - a.x);
        } else if (c & 4) {
            p.y = box.y0;
            p.x = a.x + (b.x - a.x) * (box.y0 - a.y) / (b.y - a.y);
        } else {
            p.y = box.y0 + box.h;
            p.x = a.x + (b.x - a.x) * (box.y0 + box.h - a.y) / (b.y - a.y);
        }
        if (c == ca) {
            a = p;
            ca = code(a);
        } else {
            b = p;
            cb = code(b);
        }
    }
    return !(ca | cb);
}

inline void emit_path(SceneLayer& layer, const std::vector<Point>& pts,
                      const StrokeStyle& stroke, const BoundingBox& clip) {
    // Split into clipped runs; a segment fully outside breaks the run.
    std::vector<Point> run;
    auto flush = [&] {
        if (run.size() >= 2) layer.primitives.push_back(PathPrim{run, stroke});
        run.clear();
    };
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Point a = pts[i - 1], b = pts[i];
        Point ca = a, cb = b;
        if (!clip_segment(ca, cb, clip)) {
            flush();
            continue;
        }
        if (run.empty() || !(run.back() == ca)) {
            flush();
            run.push_back(ca);
        }
        run.push_back(cb);
    }
    flush();
}

/// NaN-separated loops in shape columns.
inline std::vector<std::vector<std::size_t>> split_runs(const DataColumn& x,
                                                        const DataColumn& y) {
    std::vector<std::vector<std::size_t>> runs;
    std::vector<std::size_t> cur;
    for (std::size_t i = 0; i < x.size(); ++i) {
        bool gap = !std::isfinite(x.values[i]) || !std::isfinite(y.values[i]);
        if (gap) {
            if (!cur.empty()) runs.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(i);
        }
    }
    if (!cur.empty()) runs.push_back(std::move(cur));
    return runs;
}

inline Point clamp_point(Point p, const BoundingBox& box) {
    p.x = std::clamp(p.x, box.x0, box.x0 + box.w);
    p.y = std::clamp(p.y, box.y0, box.y0 + box.h);
    return p;
}

inline bool inside(const Point& p, const BoundingBox& box) {
    return p.x >= box.x0 && p.x <= box.x0 + box.w && p.y >= box.y0 &&
           p.y <= box.y0 + box.h;
}

inline void lower_series(const SeriesSpec& s, const DataTransform& t, SceneLayer& layer) {
    ColorSpec linecolor = attr_color(s.attrs, "linecolor");
    ColorSpec fillcolor = attr_color(s.attrs, "fillcolor");
    ColorSpec markercolor = attr_color(s.attrs, "markercolor");
    double linewidth = attr_number(s.attrs, "linewidth", 1.0);
    double markersize = attr_number(s.attrs, "markersize", 4.0);
    std::string marker = attr_name(s.attrs, "marker", "circle");

    static const DataColumn kEmpty;
    const DataColumn& x = s.x ? *s.x : kEmpty;
    const DataColumn& y = s.y ? *s.y : kEmpty;

    if (s.seriestype == "path") {
        for (const auto& run : split_runs(x, y)) {
            std::vector<Point> pts;
            for (std::size_t i : run) pts.push_back(t.map(x.values[i], y.values[i]));
            emit_path(layer, pts, {linecolor, linewidth}, layer.clip);
        }
    } else if (s.seriestype == "scatter") {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x.values[i]) || !std::isfinite(y.values[i])) continue;
            Point p = t.map(x.values[i], y.values[i]);
            if (!inside(p, layer.clip)) continue;
            layer.primitives.push_back(
                MarkerPrim{p, marker, markersize, markercolor, {linecolor, linewidth}});
        }
    } else if (s.seriestype == "shape") {
        for (const auto& run : split_runs(x, y)) {
            std::vector<Point> pts;
            for (std::size_t i : run)
                pts.push_back(clamp_point(t.map(x.values[i], y.values[i]), layer.clip));
            if (pts.size() >= 3)
                layer.primitives.push_back(
                    PolygonPrim{pts, fillcolor, {linecolor, linewidth}});
        }
    } else if (s.seriestype == "heatmap-grid") {
        const GridData& g = *s.grid;
        double clo = 0, chi = 1;
        if (const AttrValue* cl = s.attrs.find("climits");
            cl && cl->kind() == AttrValue::Kind::List && cl->as_list().size() == 2) {
            clo = cl->as_list()[0].as_number();
            chi = cl->as_list()[1].as_number();
        }
        CellGridPrim grid;
        grid.rows = g.rows;
        grid.cols = g.cols;
        grid.origin = {layer.clip.x0, layer.clip.y0};
        grid.cell_w = layer.clip.w / static_cast<double>(g.cols);
        grid.cell_h = layer.clip.h / static_cast<double>(g.rows);
        grid.colors.reserve(g.values.size());
        for (double v : g.values) {
            double u = chi > clo ? (v - clo) / (chi - clo) : 0.5;
            grid.colors.push_back(heatmap_color(u));
        }
        layer.primitives.push_back(std::move(grid));
    } else if (s.seriestype == "text-annotation") {
        std::string content = attr_name(s.attrs, "text", "");
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x.values[i]) || !std::isfinite(y.values[i])) continue;
            Point p = clamp_point(t.map(x.values[i], y.values[i]), layer.clip);
            layer.primitives.push_back(TextPrim{p, content, 11, "center", "middle",
                                                linecolor});
        }
    }
}

} // namespace detail

/// Gather the data extent feeding limit inference for one subplot axis.
inline std::vector<double> axis_data(const PlotSpec& spec, const SubplotSpec& sp,
                                     AxisSpec::Which which) {
    std::vector<double> out;
    for (int idx : sp.series_indices) {
        const SeriesSpec& s = spec.series[static_cast<std::size_t>(idx)];
        const DataColumn* col = which == AxisSpec::Which::X ? (s.x ? &*s.x : nullptr)
                                                           : (s.y ? &*s.y : nullptr);
        if (col)
            for (double v : col->values) out.push_back(v);
        if (which == AxisSpec::Which::Y && s.y && s.yerror &&
            s.y->size() == s.yerror->size()) {
            for (std::size_t i = 0; i < s.y->size(); ++i) {
                out.push_back(s.y->values[i] - s.yerror->values[i]);
                out.push_back(s.y->values[i] + s.yerror->values[i]);
            }
        }
        if (s.grid) {
            // heatmap cells span 0.5 .. n+0.5 on each axis
            double n = static_cast<double>(which == AxisSpec::Which::X ? s.grid->cols
                                                                      : s.grid->rows);
            out.push_back(0.5);
            out.push_back(n + 0.5);
        }
    }
    return out;
}

/// Lower a resolved spec plus layout boxes into the backend-agnostic
/// scene: axes, ticks, labels and legend first, then series primitives in
/// declaration order. Deterministic for equal inputs.
inline SceneGraph lower(const PlotSpec& spec, const std::map<int, BoundingBox>& boxes) {
    if (!spec.resolved) throw UnresolvedSpec();
    auto [w, h] = plot_size(spec);
    SceneGraph scene;
    scene.width = w;
    scene.height = h;
    const BoundingBox full{0, 0, w, h};

    for (std::size_t si = 0; si < spec.subplots.size(); ++si) {
        const SubplotSpec& sp = spec.subplots[si];
        auto bit = boxes.find(static_cast<int>(si));
        if (bit == boxes.end()) continue;
        const BoundingBox& box = bit->second;

        detail::DataTransform t;
        t.box = box;
        auto xl = infer_limits(axis_data(spec, sp, AxisSpec::Which::X), sp.xaxis);
        auto yl = infer_limits(axis_data(spec, sp, AxisSpec::Which::Y), sp.yaxis);
        t.xlo = xl.first;
        t.xhi = xl.second;
        t.ylo = yl.first;
        t.yhi = yl.second;
        t.xlog = sp.xaxis.scale == AxisScale::Log10;
        t.ylog = sp.yaxis.scale == AxisScale::Log10;

        SceneLayer frame;
        frame.clip = full;
        const StrokeStyle axis_stroke{{0, 0, 0, 1}, 1.0};

        frame.primitives.push_back(PathPrim{{{box.x0, box.y0},
                                             {box.x0 + box.w, box.y0},
                                             {box.x0 + box.w, box.y0 + box.h},
                                             {box.x0, box.y0 + box.h},
                                             {box.x0, box.y0}},
                                            axis_stroke});

        int xtarget = std::clamp(static_cast<int>(box.w / 80), 2, 8);
        int ytarget = std::clamp(static_cast<int>(box.h / 60), 2, 8);
        TickSet xticks = sp.xaxis.ticks ? *sp.xaxis.ticks
                                        : optimize_ticks(t.xlo, t.xhi, xtarget);
        TickSet yticks = sp.yaxis.ticks ? *sp.yaxis.ticks
                                        : optimize_ticks(t.ylo, t.yhi, ytarget);
        for (std::size_t i = 0; i < xticks.positions.size(); ++i) {
            double cx = t.tx(xticks.positions[i]);
            if (cx < box.x0 - 1e-6 || cx > box.x0 + box.w + 1e-6) continue;
            frame.primitives.push_back(PathPrim{
                {{cx, box.y0 + box.h}, {cx, box.y0 + box.h + 4}}, axis_stroke});
            if (i < xticks.labels.size())
                frame.primitives.push_back(TextPrim{{cx, box.y0 + box.h + 14},
                                                    xticks.labels[i], 10, "center",
                                                    "middle"});
        }
        for (std::size_t i = 0; i < yticks.positions.size(); ++i) {
            double cy = t.ty(yticks.positions[i]);
            if (cy < box.y0 - 1e-6 || cy > box.y0 + box.h + 1e-6) continue;
            frame.primitives.push_back(
                PathPrim{{{box.x0 - 4, cy}, {box.x0, cy}}, axis_stroke});
            if (i < yticks.labels.size())
                frame.primitives.push_back(
                    TextPrim{{box.x0 - 7, cy}, yticks.labels[i], 10, "right", "middle"});
        }

        std::string title = detail::attr_name(sp.attrs, "title", "");
        if (!title.empty())
            frame.primitives.push_back(
                TextPrim{{box.x0 + box.w / 2, box.y0 - 10}, title, 13, "center", "middle"});
        if (!sp.xaxis.label.empty())
            frame.primitives.push_back(TextPrim{{box.x0 + box.w / 2, box.y0 + box.h + 28},
                                                sp.xaxis.label, 11, "center", "middle"});
        if (!sp.yaxis.label.empty())
            frame.primitives.push_back(TextPrim{{box.x0 - 36, box.y0 + box.h / 2},
                                                sp.yaxis.label, 11, "center", "middle"});

        // Legend: minimal top-right single column for labeled series.
        std::vector<std::pair<std::string, ColorSpec>> entries;
        for (int idx : sp.series_indices) {
            const SeriesSpec& s = spec.series[static_cast<std::size_t>(idx)];
            std::string lab = detail::attr_name(s.attrs, "label", "");
            if (!lab.empty())
                entries.emplace_back(lab, detail::attr_color(s.attrs, "seriescolor"));
        }
        if (!entries.empty() &&
            detail::attr_name(sp.attrs, "legend", "topright") != "none") {
            double ly = box.y0 + 8;
            double lx = box.x0 + box.w - 8;
            for (const auto& [lab, color] : entries) {
                frame.primitives.push_back(
                    PathPrim{{{lx - 26, ly}, {lx - 12, ly}}, {color, 2.0}});
                frame.primitives.push_back(
                    TextPrim{{lx - 8, ly}, lab, 10, "left", "middle"});
                ly += 14;
            }
        }
        scene.layers.push_back(std::move(frame));

        SceneLayer data;
        data.clip = box;
        for (int idx : sp.series_indices) {
            const SeriesSpec& s = spec.series[static_cast<std::size_t>(idx)];
            if (!s.x && !s.grid) continue;
            detail::lower_series(s, t, data);
            if (s.yerror && s.y && s.seriestype != "heatmap-grid")
                detail::lower_series(errorbar_decoration(s), t, data);
        }
        scene.layers.push_back(std::move(data));
    }
    return scene;
}

// ------------------------------------------------------------- scene hash

namespace detail {

inline void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
}

inline void hash_str(std::uint64_t& h, const std::string& s) {
    hash_bytes(h, s.data(), s.size());
}

inline void hash_f(std::uint64_t& h, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    hash_str(h, buf);
}

inline void hash_color(std::uint64_t& h, const ColorSpec& c) {
    hash_f(h, c.r);
    hash_f(h, c.g);
    hash_f(h, c.b);
    hash_f(h, c.a);
}

} // namespace detail

/// FNV-1a over a canonical dump of the scene; equal scenes hash equal.
inline std::uint64_t scene_hash(const SceneGraph& scene) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    detail::hash_f(h, scene.width);
    detail::hash_f(h, scene.height);
    for (const auto& layer : scene.layers) {
        detail::hash_f(h, layer.clip.x0);
        detail::hash_f(h, layer.clip.y0);
        detail::hash_f(h, layer.clip.w);
        detail::hash_f(h, layer.clip.h);
        for (const auto& prim : layer.primitives) {
            std::visit(
                [&](const auto& p) {
                    using T = std::decay_t<decltype(p)>;
                    if constexpr (std::is_same_v<T, PathPrim>) {
                        detail::hash_str(h, "path");
                        for (const auto& pt : p.points) {
                            detail::hash_f(h, pt.x);
                            detail::hash_f(h, pt.y);
                        }
                        detail::hash_color(h, p.stroke.color);
                        detail::hash_f(h, p.stroke.width);
                    } else if constexpr (std::is_same_v<T, PolygonPrim>) {
                        detail::hash_str(h, "polygon");
                        for (const auto& pt : p.points) {
                            detail::hash_f(h, pt.x);
                            detail::hash_f(h, pt.y);
                        }
                        detail::hash_color(h, p.fill);
                        detail::hash_color(h, p.stroke.color);
                    } else if constexpr (std::is_same_v<T, MarkerPrim>) {
                        detail::hash_str(h, "marker");
                        detail::hash_f(h, p.center.x);
                        detail::hash_f(h, p.center.y);
                        detail::hash_str(h, p.shape);
                        detail::hash_f(h, p.size_pt);
                        detail::hash_color(h, p.fill);
                    } else if constexpr (std::is_same_v<T, TextPrim>) {
                        detail::hash_str(h, "text");
                        detail::hash_f(h, p.anchor.x);
                        detail::hash_f(h, p.anchor.y);
                        detail::hash_str(h, p.content);
                    } else {
                        detail::hash_str(h, "cellgrid");
                        detail::hash_f(h, p.origin.x);
                        detail::hash_f(h, p.origin.y);
                        detail::hash_f(h, p.cell_w);
                        detail::hash_f(h, p.cell_h);
                        for (const auto& c : p.colors) detail::hash_color(h, c);
                    }
                },
                prim);
        }
    }
    return h;
}

} // namespace plotkit
