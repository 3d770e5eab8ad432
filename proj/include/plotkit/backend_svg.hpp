#pragma once

#include <cstdio>
#include <string>
#include <variant>

#include "plotkit/backend_counters.hpp"
#include "plotkit/scene.hpp"

namespace plotkit {

namespace detail {

/// Fixed 4-decimal float formatting keeps SVG output byte-stable.
inline std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

inline std::string svg_hex(const ColorSpec& c) {
    auto ch = [](double v) {
        int x = static_cast<int>(v * 255.0 + 0.5);
        return x < 0 ? 0 : (x > 255 ? 255 : x);
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", ch(c.r), ch(c.g), ch(c.b));
    return buf;
}

inline std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string svg_points(const std::vector<Point>& pts) {
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        d += i == 0 ? "M" : "L";
        d += svg_num(pts[i].x) + " " + svg_num(pts[i].y);
    }
    return d;
}

inline void svg_stroke_attrs(std::string& out, const StrokeStyle& s) {
    out += " stroke=\"" + svg_hex(s.color) + "\" stroke-width=\"" + svg_num(s.width) +
           "\"";
    if (s.color.a < 1.0) out += " stroke-opacity=\"" + svg_num(s.color.a) + "\"";
}

} // namespace detail

/// Emit an SVG 1.1 document; one element per primitive, deterministic
/// byte output for a given scene.
inline std::string render_svg(const SceneGraph& scene) {
    ++backend_counters().svg;
    using namespace detail;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           svg_num(scene.width) + "\" height=\"" + svg_num(scene.height) +
           "\" viewBox=\"0 0 " + svg_num(scene.width) + " " + svg_num(scene.height) +
           "\">\n";
    out += "<rect width=\"" + svg_num(scene.width) + "\" height=\"" +
           svg_num(scene.height) + "\" fill=\"#ffffff\"/>\n";

    out += "<defs>\n";
    for (std::size_t i = 0; i < scene.layers.size(); ++i) {
        const BoundingBox& c = scene.layers[i].clip;
        out += "<clipPath id=\"clip" + std::to_string(i) + "\"><rect x=\"" +
               svg_num(c.x0) + "\" y=\"" + svg_num(c.y0) + "\" width=\"" + svg_num(c.w) +
               "\" height=\"" + svg_num(c.h) + "\"/></clipPath>\n";
    }
    out += "</defs>\n";

    for (std::size_t i = 0; i < scene.layers.size(); ++i) {
        out += "<g clip-path=\"url(#clip" + std::to_string(i) + ")\">\n";
        for (const auto& prim : scene.layers[i].primitives) {
            std::visit(
                [&](const auto& p) {
                    using T = std::decay_t<decltype(p)>;
                    if constexpr (std::is_same_v<T, PathPrim>) {
                        out += "<path d=\"" + svg_points(p.points) + "\" fill=\"none\"";
                        svg_stroke_attrs(out, p.stroke);
                        out += "/>\n";
                    } else if constexpr (std::is_same_v<T, PolygonPrim>) {
                        out += "<path d=\"" + svg_points(p.points) + "Z\" fill=\"" +
                               svg_hex(p.fill) + "\"";
                        if (p.fill.a < 1.0)
                            out += " fill-opacity=\"" + svg_num(p.fill.a) + "\"";
                        svg_stroke_attrs(out, p.stroke);
                        out += "/>\n";
                    } else if constexpr (std::is_same_v<T, MarkerPrim>) {
                        double r = p.size_pt / 2.0;
                        if (p.shape == "square") {
                            out += "<rect x=\"" + svg_num(p.center.x - r) + "\" y=\"" +
                                   svg_num(p.center.y - r) + "\" width=\"" +
                                   svg_num(2 * r) + "\" height=\"" + svg_num(2 * r) +
                                   "\" fill=\"" + svg_hex(p.fill) + "\"/>\n";
                        } else if (p.shape == "cross") {
                            out += "<path d=\"M" + svg_num(p.center.x - r) + " " +
                                   svg_num(p.center.y) + "L" + svg_num(p.center.x + r) +
                                   " " + svg_num(p.center.y) + "M" +
                                   svg_num(p.center.x) + " " + svg_num(p.center.y - r) +
                                   "L" + svg_num(p.center.x) + " " +
                                   svg_num(p.center.y + r) + "\" fill=\"none\"";
                            svg_stroke_attrs(out, {p.fill, 1.5});
                            out += "/>\n";
                        } else {
                            out += "<circle cx=\"" + svg_num(p.center.x) + "\" cy=\"" +
                                   svg_num(p.center.y) + "\" r=\"" + svg_num(r) +
                                   "\" fill=\"" + svg_hex(p.fill) + "\"";
                            if (p.fill.a < 1.0)
                                out += " fill-opacity=\"" + svg_num(p.fill.a) + "\"";
                            out += "/>\n";
                        }
                    } else if constexpr (std::is_same_v<T, TextPrim>) {
                        std::string anchor = p.halign == "left"
                                                 ? "start"
                                                 : (p.halign == "right" ? "end" : "middle");
                        out += "<text x=\"" + svg_num(p.anchor.x) + "\" y=\"" +
                               svg_num(p.anchor.y) + "\" font-size=\"" +
                               svg_num(p.font_size) +
                               "\" font-family=\"Helvetica,sans-serif\" text-anchor=\"" +
                               anchor + "\" dominant-baseline=\"middle\" fill=\"" +
                               svg_hex(p.color) + "\">" + svg_escape(p.content) +
                               "</text>\n";
                    } else {
                        for (std::size_t r = 0; r < p.rows; ++r)
                            for (std::size_t c = 0; c < p.cols; ++c) {
                                out += "<rect x=\"" +
                                       svg_num(p.origin.x + c * p.cell_w) + "\" y=\"" +
                                       svg_num(p.origin.y + r * p.cell_h) +
                                       "\" width=\"" + svg_num(p.cell_w) +
                                       "\" height=\"" + svg_num(p.cell_h) +
                                       "\" fill=\"" + svg_hex(p.colors[r * p.cols + c]) +
                                       "\"/>\n";
                            }
                    }
                },
                prim);
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace plotkit
