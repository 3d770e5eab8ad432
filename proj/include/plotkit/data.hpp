#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace plotkit {

/// Gap marker inside a data column. In a path it renders as a segment
/// break, not a dropped point.
inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }

inline bool is_missing(double v) { return !std::isfinite(v); }

/// One column of numeric data; NaN entries mark gaps.
struct DataColumn {
    std::vector<double> values;
    std::optional<std::string> label;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }

    std::size_t finite_count() const {
        std::size_t n = 0;
        for (double v : values)
            if (std::isfinite(v)) ++n;
        return n;
    }

    friend bool operator==(const DataColumn& a, const DataColumn& b) {
        if (a.label != b.label || a.values.size() != b.values.size()) return false;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            bool na = std::isnan(a.values[i]), nb = std::isnan(b.values[i]);
            if (na != nb) return false;
            if (!na && a.values[i] != b.values[i]) return false;
        }
        return true;
    }
};

/// x = 1..n, the default abscissa for a lone y-vector.
inline DataColumn iota_column(std::size_t n) {
    DataColumn c;
    c.values.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) c.values.push_back(static_cast<double>(i));
    return c;
}

/// Missing markers become NaN gap markers; a column with no finite values
/// at all is dropped to empty. Numeric values pass through unchanged.
inline DataColumn sanitize_data(const DataColumn& col) {
    DataColumn out;
    out.label = col.label;
    bool any_finite = false;
    out.values.reserve(col.values.size());
    for (double v : col.values) {
        if (std::isfinite(v)) {
            any_finite = true;
            out.values.push_back(v);
        } else {
            out.values.push_back(missing_value());
        }
    }
    if (!any_finite) out.values.clear();
    return out;
}

/// Column-major matrix of data: each column is one series.
struct DataMatrix {
    std::vector<DataColumn> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t cols() const { return columns.size(); }
};

} // namespace plotkit
