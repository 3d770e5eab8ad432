#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "plotkit/errors.hpp"
#include "plotkit/plot.hpp"
#include "plotkit/warnings.hpp"

namespace plotkit {

/// Canvas-unit box (device-independent points, 1 pt = 1/72 inch).
struct BoundingBox {
    double x0 = 0, y0 = 0, w = 0, h = 0;

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Space reserved inside a layout leaf for axis decorations, in points.
struct Margin {
    double left = 46;
    double top = 22;
    double right = 12;
    double bottom = 34;
};

namespace detail {

inline std::vector<double> normalized_sizes(std::vector<double> sizes, int n,
                                            const char* which) {
    if (sizes.empty()) sizes.assign(static_cast<std::size_t>(n), 1.0 / n);
    double sum = 0;
    for (double s : sizes) {
        if (s <= 0) throw ArgumentError("layout relative sizes must be positive");
        sum += s;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        warn(std::string("layout ") + which + " do not sum to 1; normalizing");
        for (double& s : sizes) s /= sum;
    }
    return sizes;
}

inline void compute_boxes(const LayoutNode& node, BoundingBox box,
                          const std::map<int, Margin>& margins, const Margin& fallback,
                          std::map<int, BoundingBox>& out) {
    if (std::holds_alternative<LayoutNode::Blank>(node.node)) return;
    if (const auto* leaf = std::get_if<LayoutNode::Leaf>(&node.node)) {
        Margin m = fallback;
        auto it = margins.find(leaf->subplot_index);
        if (it != margins.end()) m = it->second;
        BoundingBox inner{box.x0 + m.left, box.y0 + m.top,
                          std::max(0.0, box.w - m.left - m.right),
                          std::max(0.0, box.h - m.top - m.bottom)};
        out[leaf->subplot_index] = inner;
        return;
    }
    const auto& grid = std::get<LayoutNode::Grid>(node.node);
    if (static_cast<int>(grid.children.size()) != grid.rows * grid.cols)
        throw ArgumentError("layout grid children must fill rows x cols cells");
    std::vector<double> ws = normalized_sizes(grid.widths, grid.cols, "widths");
    std::vector<double> hs = normalized_sizes(grid.heights, grid.rows, "heights");

    double y = box.y0;
    for (int r = 0; r < grid.rows; ++r) {
        double x = box.x0;
        double rh = box.h * hs[static_cast<std::size_t>(r)];
        for (int c = 0; c < grid.cols; ++c) {
            double cw = box.w * ws[static_cast<std::size_t>(c)];
            compute_boxes(grid.children[static_cast<std::size_t>(r * grid.cols + c)],
                          {x, y, cw, rh}, margins, fallback, out);
            x += cw;
        }
        y += rh;
    }
}

} // namespace detail

/// Recursive subdivision of the canvas by relative sizes; per-leaf margins
/// are subtracted inside each cell, so the returned boxes are plot areas.
inline std::map<int, BoundingBox> compute_layout(const LayoutNode& root, double canvas_w,
                                                 double canvas_h,
                                                 const std::map<int, Margin>& margins = {},
                                                 const Margin& default_margin = {}) {
    if (!(canvas_w > 0) || !(canvas_h > 0))
        throw ArgumentError("canvas dimensions must be positive");
    std::map<int, BoundingBox> out;
    detail::compute_boxes(root, {0, 0, canvas_w, canvas_h}, margins, default_margin, out);
    return out;
}

/// Near-square grid for n subplots: rows = floor(sqrt(n)),
/// cols = ceil(n/rows), filled row-major with trailing Blank cells.
inline LayoutNode default_grid(int n) {
    if (n < 1) throw ArgumentError("grid needs at least one subplot");
    int rows = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    rows = std::max(rows, 1);
    int cols = (n + rows - 1) / rows;
    LayoutNode::Grid g;
    g.rows = rows;
    g.cols = cols;
    for (int i = 0; i < rows * cols; ++i)
        g.children.push_back(i < n ? LayoutNode::leaf(i) : LayoutNode::blank());
    g.widths.assign(static_cast<std::size_t>(cols), 1.0 / cols);
    g.heights.assign(static_cast<std::size_t>(rows), 1.0 / rows);
    return {g};
}

namespace detail {

inline std::string format_tick(double v, int decimals, bool scientific) {
    char buf[64];
    if (scientific)
        std::snprintf(buf, sizeof buf, "%.*e", decimals, v);
    else
        std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s == "-0" || s.rfind("-0.", 0) == 0) {
        bool all_zero = true;
        for (char c : s)
            if (c != '-' && c != '0' && c != '.') all_zero = false;
        if (all_zero) s.erase(0, 1);
    }
    return s;
}

inline std::vector<std::string> tick_labels(const std::vector<double>& pos, double step) {
    double maxabs = 0;
    for (double p : pos) maxabs = std::max(maxabs, std::abs(p));
    bool scientific = maxabs >= 1e5 || (step > 0 && step < 1e-4 && maxabs > 0);
    for (int decimals = 0; decimals <= 15; ++decimals) {
        std::vector<std::string> labels;
        labels.reserve(pos.size());
        bool distinct = true;
        for (std::size_t i = 0; i < pos.size(); ++i) {
            labels.push_back(format_tick(pos[i], decimals, scientific));
            if (i > 0 && labels[i] == labels[i - 1]) distinct = false;
        }
        if (distinct || pos.size() < 2) return labels;
    }
    return {};
}

} // namespace detail

struct TickCandidate {
    double step = 0;
    std::vector<double> positions;
};

inline std::vector<double> tick_positions_for_step(double lo, double hi, double step) {
    double eps = 1e-9 * std::max({std::abs(lo), std::abs(hi), hi - lo});
    long long i0 = static_cast<long long>(std::ceil((lo - eps) / step));
    long long i1 = static_cast<long long>(std::floor((hi + eps) / step));
    std::vector<double> pos;
    for (long long i = i0; i <= i1; ++i)
        pos.push_back(static_cast<double>(i) * step);
    return pos;
}

/// Tick step from {1,2,5} x 10^k minimizing |count - target|, ties broken
/// toward fewer ticks. Labels use the minimal decimal places that keep
/// consecutive ticks distinct; scientific notation for extreme exponents.
inline TickSet optimize_ticks(double lo, double hi, int target) {
    if (!(lo < hi)) throw InvalidRange(lo, hi);
    if (target < 2) throw ArgumentError("tick target must be >= 2");

    double best_step = 0;
    std::vector<double> best_pos;
    long long best_score = -1;
    // Descending step order = ascending tick count, so ties keep fewer ticks.
    for (int k = 12; k >= -12; --k) {
        for (int m : {5, 2, 1}) {
            double step = m * std::pow(10.0, k);
            // Count without materializing: fine steps over wide ranges
            // would otherwise allocate astronomically many positions.
            double eps = 1e-9 * std::max({std::abs(lo), std::abs(hi), hi - lo});
            long long i0 = static_cast<long long>(std::ceil((lo - eps) / step));
            long long i1 = static_cast<long long>(std::floor((hi + eps) / step));
            long long count = i1 - i0 + 1;
            if (count < 2) continue;
            long long score = std::llabs(count - target);
            if (best_score < 0 || score < best_score) {
                best_score = score;
                best_step = step;
                best_pos = tick_positions_for_step(lo, hi, step);
            }
        }
    }
    if (best_pos.empty()) {
        // Range narrower than the finest step; fall back to the endpoints.
        best_pos = {lo, hi};
        best_step = hi - lo;
    }
    TickSet t;
    t.positions = best_pos;
    t.labels = detail::tick_labels(best_pos, best_step);
    return t;
}

/// Data extent expanded by 5% padding each side (multiplicative on log
/// axes); empty data falls back to (0,1); explicit limits pass through.
inline std::pair<double, double> infer_limits(const std::vector<double>& data,
                                              const AxisSpec& axis) {
    if (axis.limits) return *axis.limits;
    double lo = 0, hi = 0;
    bool any = false;
    for (double v : data) {
        if (!std::isfinite(v)) continue;
        if (axis.scale == AxisScale::Log10 && v <= 0) continue;
        if (!any) {
            lo = hi = v;
            any = true;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!any) return {0.0, 1.0};
    if (axis.scale == AxisScale::Log10) {
        if (lo == hi) return {lo / 2, hi * 2};
        double factor = std::pow(hi / lo, 0.05);
        return {lo / factor, hi * factor};
    }
    if (lo == hi) {
        double pad = std::max(std::abs(lo) * 0.05, 0.5);
        return {lo - pad, hi + pad};
    }
    double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

} // namespace plotkit
