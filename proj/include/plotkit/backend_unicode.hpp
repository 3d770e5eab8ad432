#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "plotkit/backend_counters.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/scene.hpp"

namespace plotkit {

namespace detail {

/// Character canvas with a 2x4 sub-cell dot raster (braille block) under
/// the text layer. Text wins over dots within a cell.
class UnicodeCanvas {
public:
    UnicodeCanvas(int cols, int rows)
        : cols_(cols), rows_(rows), text_(static_cast<std::size_t>(cols * rows)),
          dots_(static_cast<std::size_t>(cols * 2 * rows * 4), false) {}

    int cols() const { return cols_; }
    int rows() const { return rows_; }
    int dot_cols() const { return cols_ * 2; }
    int dot_rows() const { return rows_ * 4; }

    void set_dot(int dx, int dy) {
        if (dx < 0 || dy < 0 || dx >= dot_cols() || dy >= dot_rows()) return;
        dots_[static_cast<std::size_t>(dy * dot_cols() + dx)] = true;
    }

    bool dot(int dx, int dy) const {
        if (dx < 0 || dy < 0 || dx >= dot_cols() || dy >= dot_rows()) return false;
        return dots_[static_cast<std::size_t>(dy * dot_cols() + dx)];
    }

    void set_cell(int col, int row, const std::string& utf8) {
        if (col < 0 || row < 0 || col >= cols_ || row >= rows_) return;
        text_[static_cast<std::size_t>(row * cols_ + col)] = utf8;
    }

    void draw_dot_line(int x0, int y0, int x1, int y1) {
        int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
        int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        for (;;) {
            set_dot(x0, y0);
            if (x0 == x1 && y0 == y1) break;
            int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    std::string render() const {
        // Braille dot bit layout for sub-cell (x,y), x in 0..1, y in 0..3.
        static const int bits[4][2] = {{0x01, 0x08}, {0x02, 0x10}, {0x04, 0x20},
                                       {0x40, 0x80}};
        std::string out;
        for (int row = 0; row < rows_; ++row) {
            for (int col = 0; col < cols_; ++col) {
                const std::string& t = text_[static_cast<std::size_t>(row * cols_ + col)];
                if (!t.empty()) {
                    out += t;
                    continue;
                }
                int mask = 0;
                for (int y = 0; y < 4; ++y)
                    for (int x = 0; x < 2; ++x)
                        if (dot(col * 2 + x, row * 4 + y)) mask |= bits[y][x];
                if (mask == 0) {
                    out += ' ';
                } else {
                    // UTF-8 encode U+2800 + mask
                    char32_t cp = 0x2800 + static_cast<char32_t>(mask);
                    out += static_cast<char>(0xE0 | (cp >> 12));
                    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (cp & 0x3F));
                }
            }
            out += '\n';
        }
        return out;
    }

private:
    int cols_, rows_;
    std::vector<std::string> text_;
    std::vector<bool> dots_;
};

inline std::string shade_char(double luminance) {
    if (luminance < 0.25) return "█"; // full block for dark cells
    if (luminance < 0.5) return "▓";
    if (luminance < 0.75) return "▒";
    return "░";
}

} // namespace detail

/// Rasterize the scene onto a cols x rows character canvas: box-drawing
/// frame, braille sub-cell dots for paths and markers, shade characters
/// for cell grids. Plain text only; no ANSI sequences.
inline std::string render_unicode(const SceneGraph& scene, int cols = 72, int rows = 20) {
    ++backend_counters().unicode;
    if (cols < 16 || rows < 8)
        throw ArgumentError("unicode canvas too small (need >= 16x8)");

    detail::UnicodeCanvas canvas(cols, rows);

    // Frame on the outermost cells; scene mapped to the interior.
    canvas.set_cell(0, 0, "┌");
    canvas.set_cell(cols - 1, 0, "┐");
    canvas.set_cell(0, rows - 1, "└");
    canvas.set_cell(cols - 1, rows - 1, "┘");
    for (int c = 1; c < cols - 1; ++c) {
        canvas.set_cell(c, 0, "─");
        canvas.set_cell(c, rows - 1, "─");
    }
    for (int r = 1; r < rows - 1; ++r) {
        canvas.set_cell(0, r, "│");
        canvas.set_cell(cols - 1, r, "│");
    }

    const int inner_cols = cols - 2, inner_rows = rows - 2;
    const double dot_w = inner_cols * 2 - 1, dot_h = inner_rows * 4 - 1;
    auto to_dot_x = [&](double x) {
        return 2 + static_cast<int>(std::lround(x / scene.width * dot_w));
    };
    auto to_dot_y = [&](double y) {
        return 4 + static_cast<int>(std::lround(y / scene.height * dot_h));
    };
    auto to_col = [&](double x) {
        return 1 + std::clamp(static_cast<int>(x / scene.width * inner_cols), 0,
                              inner_cols - 1);
    };
    auto to_row = [&](double y) {
        return 1 + std::clamp(static_cast<int>(y / scene.height * inner_rows), 0,
                              inner_rows - 1);
    };

    for (const auto& layer : scene.layers) {
        for (const auto& prim : layer.primitives) {
            std::visit(
                [&](const auto& p) {
                    using T = std::decay_t<decltype(p)>;
                    if constexpr (std::is_same_v<T, PathPrim>) {
                        for (std::size_t i = 1; i < p.points.size(); ++i)
                            canvas.draw_dot_line(
                                to_dot_x(p.points[i - 1].x), to_dot_y(p.points[i - 1].y),
                                to_dot_x(p.points[i].x), to_dot_y(p.points[i].y));
                    } else if constexpr (std::is_same_v<T, PolygonPrim>) {
                        for (std::size_t i = 0; i < p.points.size(); ++i) {
                            const Point& a = p.points[i];
                            const Point& b = p.points[(i + 1) % p.points.size()];
                            canvas.draw_dot_line(to_dot_x(a.x), to_dot_y(a.y),
                                                 to_dot_x(b.x), to_dot_y(b.y));
                        }
                    } else if constexpr (std::is_same_v<T, MarkerPrim>) {
                        canvas.set_dot(to_dot_x(p.center.x), to_dot_y(p.center.y));
                    } else if constexpr (std::is_same_v<T, TextPrim>) {
                        int row = to_row(p.anchor.y);
                        int col = to_col(p.anchor.x);
                        int n = static_cast<int>(p.content.size());
                        if (p.halign == "center")
                            col -= n / 2;
                        else if (p.halign == "right")
                            col -= n;
                        for (int i = 0; i < n; ++i)
                            canvas.set_cell(col + i, row,
                                            std::string(1, p.content[static_cast<std::size_t>(i)]));
                    } else {
                        // CellGrid degrades to shade characters.
                        for (std::size_t r = 0; r < p.rows; ++r)
                            for (std::size_t c = 0; c < p.cols; ++c) {
                                const ColorSpec& col = p.colors[r * p.cols + c];
                                double lum =
                                    0.2126 * col.r + 0.7152 * col.g + 0.0722 * col.b;
                                double cx = p.origin.x + (c + 0.5) * p.cell_w;
                                double cy = p.origin.y + (r + 0.5) * p.cell_h;
                                int col0 = to_col(p.origin.x + c * p.cell_w);
                                int col1 = to_col(p.origin.x + (c + 1) * p.cell_w - 1e-9);
                                int row0 = to_row(p.origin.y + r * p.cell_h);
                                int row1 = to_row(p.origin.y + (r + 1) * p.cell_h - 1e-9);
                                (void)cx;
                                (void)cy;
                                for (int rr = row0; rr <= row1; ++rr)
                                    for (int cc = col0; cc <= col1; ++cc)
                                        canvas.set_cell(cc, rr, detail::shade_char(lum));
                            }
                    }
                },
                prim);
        }
    }
    return canvas.render();
}

} // namespace plotkit
