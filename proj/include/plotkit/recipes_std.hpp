#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "plotkit/data.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/recipes.hpp"

namespace plotkit {

// ---------------------------------------------------------------- boxplot

struct BoxStats {
    double q1 = 0, median = 0, q3 = 0;
    double whisker_lo = 0, whisker_hi = 0;
    std::vector<double> outliers;
};

/// Type-7 quantile: linear interpolation between order statistics.
inline double quantile_type7(std::vector<double> sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    double h = (static_cast<double>(n) - 1.0) * p;
    std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + (h - std::floor(h)) * (sorted[lo + 1] - sorted[lo]);
}

/// Whiskers reach the most extreme data within 1.5*IQR of the box;
/// everything beyond is an outlier.
inline BoxStats compute_box_stats(const DataColumn& group) {
    std::vector<double> v;
    for (double x : group.values)
        if (std::isfinite(x)) v.push_back(x);
    if (v.empty()) throw EmptyData("boxplot group has no finite values");
    std::sort(v.begin(), v.end());

    BoxStats s;
    s.q1 = quantile_type7(v, 0.25);
    s.median = quantile_type7(v, 0.5);
    s.q3 = quantile_type7(v, 0.75);
    double iqr = s.q3 - s.q1;
    double fence_lo = s.q1 - 1.5 * iqr;
    double fence_hi = s.q3 + 1.5 * iqr;
    s.whisker_lo = s.q3;
    s.whisker_hi = s.q1;
    bool any_in = false;
    for (double x : v) {
        if (x >= fence_lo && x <= fence_hi) {
            if (!any_in) {
                s.whisker_lo = s.whisker_hi = x;
                any_in = true;
            } else {
                s.whisker_lo = std::min(s.whisker_lo, x);
                s.whisker_hi = std::max(s.whisker_hi, x);
            }
        } else {
            s.outliers.push_back(x);
        }
    }
    if (!any_in) {
        s.whisker_lo = s.q1;
        s.whisker_hi = s.q3;
    }
    return s;
}

// -------------------------------------------------------------- histogram

struct HistogramSpec {
    std::vector<double> edges; // strictly increasing
    std::vector<std::int64_t> counts;
};

inline std::vector<double> equal_width_edges(double lo, double hi, int bins) {
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i < bins; ++i)
        edges.push_back(lo + (hi - lo) * i / bins);
    // The last edge is hi exactly; accumulating lo + span can round below
    // the data maximum and silently drop it from the closed final bin.
    edges.push_back(hi);
    return edges;
}

/// Freedman-Diaconis bin count over [lo,hi], Sturges when the IQR is zero.
inline int auto_bin_count(const std::vector<double>& sorted) {
    const double n = static_cast<double>(sorted.size());
    double iqr = quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);
    double span = sorted.back() - sorted.front();
    if (iqr > 0 && span > 0) {
        double h = 2.0 * iqr / std::cbrt(n);
        return std::max(1, static_cast<int>(std::ceil(span / h)));
    }
    return std::max(1, static_cast<int>(std::ceil(std::log2(n))) + 1);
}

/// Right-open bins, except the last bin which is closed.
inline HistogramSpec compute_histogram(const DataColumn& values,
                                       const std::vector<double>& explicit_edges = {},
                                       int bin_count = 0) {
    std::vector<double> v;
    for (double x : values.values)
        if (std::isfinite(x)) v.push_back(x);
    if (v.empty()) throw EmptyData("histogram requires at least one finite value");
    std::sort(v.begin(), v.end());

    HistogramSpec h;
    if (!explicit_edges.empty()) {
        if (explicit_edges.size() < 2)
            throw ArgumentError("histogram needs at least two bin edges");
        for (std::size_t i = 1; i < explicit_edges.size(); ++i)
            if (!(explicit_edges[i - 1] < explicit_edges[i]))
                throw ArgumentError("histogram edges must be strictly increasing");
        h.edges = explicit_edges;
    } else {
        int bins = bin_count > 0 ? bin_count : auto_bin_count(v);
        h.edges = equal_width_edges(v.front(), v.back(), bins);
    }

    h.counts.assign(h.edges.size() - 1, 0);
    for (double x : v) {
        if (x < h.edges.front() || x > h.edges.back()) continue;
        auto it = std::upper_bound(h.edges.begin(), h.edges.end(), x);
        std::size_t bin = static_cast<std::size_t>(it - h.edges.begin());
        bin = bin == 0 ? 0 : bin - 1;
        if (bin >= h.counts.size()) bin = h.counts.size() - 1; // last bin closed
        ++h.counts[bin];
    }
    return h;
}

// ------------------------------------------------------------- bar shapes

inline double min_spacing(const std::vector<double>& xs) {
    std::vector<double> s;
    for (double x : xs)
        if (std::isfinite(x)) s.push_back(x);
    std::sort(s.begin(), s.end());
    double best = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        double d = s[i] - s[i - 1];
        if (d > 0 && (best == 0 || d < best)) best = d;
    }
    return best == 0 ? 1.0 : best;
}

/// Rectangle loops, one per bar, separated by NaN gap markers. Baseline 0;
/// negative values draw downward.
inline RecipeOutput bar_shapes(const DataColumn& x, const DataColumn& y,
                               const AttrMap& attrs) {
    if (x.size() != y.size()) throw LengthMismatch("x", x.size(), "y", y.size());
    double width = 0.8 * min_spacing(x.values);
    if (const AttrValue* w = attrs.find("bar_width"))
        if (!w->is_unset() && !w->is_auto()) width = w->as_number();

    DataColumn sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double cx = x.values[i], cy = y.values[i];
        if (!std::isfinite(cx) || !std::isfinite(cy)) continue;
        if (!sx.empty()) {
            sx.values.push_back(missing_value());
            sy.values.push_back(missing_value());
        }
        double l = cx - width / 2, r = cx + width / 2;
        for (double vx : {l, r, r, l}) sx.values.push_back(vx);
        for (double vy : {0.0, 0.0, cy, cy}) sy.values.push_back(vy);
    }

    RecipeOutput out;
    out.x = std::move(sx);
    out.y = std::move(sy);
    out.directives = {force("seriestype", AttrValue::name("shape")),
                      fallback("linecolor", AttrValue::name("black"))};
    return out;
}

// ------------------------------------------------------------ registration

namespace detail {

inline std::vector<RecipeOutput> bar_recipe(const SeriesSpec& s) {
    if (!s.y) throw EmptyData("bar series requires y data");
    DataColumn x = s.x ? *s.x : iota_column(s.y->size());
    return {bar_shapes(x, *s.y, s.attrs)};
}

inline std::vector<RecipeOutput> histogram_recipe(const SeriesSpec& s) {
    if (!s.y) throw EmptyData("histogram series requires data");
    std::vector<double> edges;
    int bins = 0;
    if (const AttrValue* b = s.attrs.find("bins")) {
        if (b->kind() == AttrValue::Kind::Int)
            bins = static_cast<int>(b->as_int());
        else if (b->kind() == AttrValue::Kind::List)
            for (const auto& e : b->as_list()) edges.push_back(e.as_number());
    }
    HistogramSpec h = compute_histogram(*s.y, edges, bins);

    DataColumn cx, cy;
    double min_width = h.edges[1] - h.edges[0];
    for (std::size_t i = 0; i + 1 < h.edges.size(); ++i) {
        cx.values.push_back(0.5 * (h.edges[i] + h.edges[i + 1]));
        cy.values.push_back(static_cast<double>(h.counts[i]));
        min_width = std::min(min_width, h.edges[i + 1] - h.edges[i]);
    }
    RecipeOutput out;
    out.x = std::move(cx);
    out.y = std::move(cy);
    out.directives = {force("seriestype", AttrValue::name("bar")),
                      force("bar_width", AttrValue::number(min_width)),
                      force("bins", AttrValue::unset())};
    return {std::move(out)};
}

inline std::vector<RecipeOutput> boxplot_recipe(const SeriesSpec& s) {
    if (!s.y) throw EmptyData("boxplot series requires group data");
    BoxStats st = compute_box_stats(*s.y);
    double center = 1.0;
    if (s.x && !s.x->empty() && std::isfinite(s.x->values.front()))
        center = s.x->values.front();
    const double hw = 0.35;       // box half-width
    const double cap = hw * 0.5;  // whisker cap half-width

    std::vector<RecipeOutput> outs;

    RecipeOutput box;
    box.x = DataColumn{{center - hw, center + hw, center + hw, center - hw}, {}};
    box.y = DataColumn{{st.q1, st.q1, st.q3, st.q3}, {}};
    box.directives = {force("seriestype", AttrValue::name("shape")),
                      fallback("linecolor", AttrValue::name("black"))};
    outs.push_back(std::move(box));

    const double gap = missing_value();
    RecipeOutput lines;
    lines.x = DataColumn{{center - hw, center + hw, gap,            // median
                          center, center, gap,                     // lower stem
                          center - cap, center + cap, gap,         // lower cap
                          center, center, gap,                     // upper stem
                          center - cap, center + cap},
                         {}};
    lines.y = DataColumn{{st.median, st.median, gap,
                          st.q1, st.whisker_lo, gap,
                          st.whisker_lo, st.whisker_lo, gap,
                          st.q3, st.whisker_hi, gap,
                          st.whisker_hi, st.whisker_hi},
                         {}};
    lines.directives = {force("seriestype", AttrValue::name("path")),
                        fallback("linecolor", AttrValue::name("black")),
                        force("label", AttrValue::text(""))};
    outs.push_back(std::move(lines));

    if (!st.outliers.empty()) {
        RecipeOutput pts;
        DataColumn ox, oy;
        for (double v : st.outliers) {
            ox.values.push_back(center);
            oy.values.push_back(v);
        }
        pts.x = std::move(ox);
        pts.y = std::move(oy);
        pts.directives = {force("seriestype", AttrValue::name("scatter")),
                          force("label", AttrValue::text(""))};
        outs.push_back(std::move(pts));
    }
    return outs;
}

inline std::vector<RecipeOutput> heatmap_recipe(const SeriesSpec& s) {
    if (!s.grid || s.grid->values.empty())
        throw EmptyData("heatmap series requires a non-empty grid");
    if (s.grid->values.size() != s.grid->rows * s.grid->cols)
        throw ArgumentError("heatmap grid is ragged");
    RecipeOutput out;
    out.grid = s.grid;
    out.directives = {force("seriestype", AttrValue::name("heatmap-grid"))};
    if (!s.attrs.contains("climits")) {
        double lo = s.grid->values.front(), hi = lo;
        for (double v : s.grid->values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.directives.push_back(fallback(
            "climits", AttrValue::list({AttrValue::number(lo), AttrValue::number(hi)})));
    }
    return {std::move(out)};
}

} // namespace detail

/// Expand a primitive series carrying yerror into the host series plus a
/// path series drawing vertical bars with end caps.
inline SeriesSpec errorbar_decoration(const SeriesSpec& host) {
    if (!host.y || !host.yerror)
        throw EmptyData("errorbar decoration requires y and yerror");
    if (host.y->size() != host.yerror->size())
        throw LengthMismatch("y", host.y->size(), "yerror", host.yerror->size());
    DataColumn x = host.x ? *host.x : iota_column(host.y->size());

    double cap = 0.1;
    {
        double lo = 0, hi = 0;
        bool first = true;
        for (double v : x.values) {
            if (!std::isfinite(v)) continue;
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (hi > lo) cap = 0.015 * (hi - lo);
    }

    DataColumn bx, by;
    const double gap = missing_value();
    for (std::size_t i = 0; i < host.y->size(); ++i) {
        double cx = x.values[i], cy = host.y->values[i], e = host.yerror->values[i];
        if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(e)) continue;
        if (!bx.empty()) {
            bx.values.push_back(gap);
            by.values.push_back(gap);
        }
        // stem
        bx.values.insert(bx.values.end(), {cx, cx, gap});
        by.values.insert(by.values.end(), {cy - e, cy + e, gap});
        // caps
        bx.values.insert(bx.values.end(), {cx - cap, cx + cap, gap, cx - cap, cx + cap});
        by.values.insert(by.values.end(), {cy - e, cy - e, gap, cy + e, cy + e});
    }

    SeriesSpec bars;
    bars.seriestype = "path";
    bars.subplot_index = host.subplot_index;
    bars.x = std::move(bx);
    bars.y = std::move(by);
    bars.attrs = host.attrs;
    bars.attrs.set("label", AttrValue::text(""));
    bars.attrs.set("marker", AttrValue::name("none"));
    return bars;
}

/// Register the shipped series recipes: bar, histogram, boxplot, heatmap.
inline void register_standard_recipes(RecipeRegistry& reg) {
    reg.register_recipe({RecipeKind::SeriesRecipe, "bar", detail::bar_recipe});
    reg.register_recipe({RecipeKind::SeriesRecipe, "histogram", detail::histogram_recipe});
    reg.register_recipe({RecipeKind::SeriesRecipe, "boxplot", detail::boxplot_recipe});
    reg.register_recipe({RecipeKind::SeriesRecipe, "heatmap", detail::heatmap_recipe});
}

} // namespace plotkit
