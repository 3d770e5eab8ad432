#pragma once

#include <any>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "plotkit/attr.hpp"
#include "plotkit/data.hpp"
#include "plotkit/errors.hpp"

namespace plotkit {

/// Explicit tick positions with labels; strictly increasing positions.
struct TickSet {
    std::vector<double> positions;
    std::vector<std::string> labels;

    friend bool operator==(const TickSet&, const TickSet&) = default;
};

enum class AxisScale { Linear, Log10 };

struct AxisSpec {
    enum class Which { X, Y, Z };

    Which which = Which::X;
    std::optional<std::pair<double, double>> limits;
    AxisScale scale = AxisScale::Linear;
    std::string label;
    std::optional<TickSet> ticks; // nullopt = automatic
    AttrMap attrs;

    void set_limits(double lo, double hi) {
        if (!(lo < hi)) throw InvalidRange(lo, hi);
        if (scale == AxisScale::Log10 && lo <= 0)
            throw ArgumentError("log10 axis limits require lo > 0");
        limits = {lo, hi};
    }

    friend bool operator==(const AxisSpec&, const AxisSpec&) = default;
};

/// Row-major cell values for heatmap-grid series.
struct GridData {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    friend bool operator==(const GridData&, const GridData&) = default;
};

/// Domain value carried by a series until a recipe converts it to columns.
/// type_tag identifies the container, element_tag (optionally) its element
/// type; type recipes match on the element, user recipes on the container.
struct DomainPayload {
    std::string type_tag;
    std::string element_tag;
    std::any value;

    // Equality by tag only: payloads are gone from resolved specs and the
    // erased value has no generic comparison.
    friend bool operator==(const DomainPayload& a, const DomainPayload& b) {
        return a.type_tag == b.type_tag && a.element_tag == b.element_tag;
    }
};

/// One plot element: a seriestype, its data channels and attributes.
struct SeriesSpec {
    std::string seriestype = "path";
    std::optional<DataColumn> x, y, z;
    std::optional<DataColumn> yerror, xerror, fill_range;
    std::optional<GridData> grid;
    std::optional<DomainPayload> payload;
    AttrMap attrs;
    int subplot_index = 0;

    friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

struct SubplotSpec {
    AttrMap attrs;
    AxisSpec xaxis{AxisSpec::Which::X};
    AxisSpec yaxis{AxisSpec::Which::Y};
    std::vector<int> series_indices;

    friend bool operator==(const SubplotSpec&, const SubplotSpec&) = default;
};

/// Nested layout tree. A Grid holds rows*cols children (Blank fills unused
/// cells); relative widths/heights are positive and sum to 1 per axis.
struct LayoutNode {
    struct Leaf {
        int subplot_index = 0;
        friend bool operator==(const Leaf&, const Leaf&) = default;
    };
    struct Blank {
        friend bool operator==(const Blank&, const Blank&) = default;
    };
    struct Grid {
        int rows = 1;
        int cols = 1;
        std::vector<LayoutNode> children;
        std::vector<double> widths;  // size cols, sums to 1
        std::vector<double> heights; // size rows, sums to 1
        friend bool operator==(const Grid&, const Grid&) = default;
    };

    std::variant<Leaf, Blank, Grid> node = Leaf{};

    static LayoutNode leaf(int subplot_index) { return {Leaf{subplot_index}}; }
    static LayoutNode blank() { return {Blank{}}; }

    friend bool operator==(const LayoutNode&, const LayoutNode&) = default;
};

/// The root plot object: plot-level attributes, layout tree, subplots and
/// series. resolved=true means recipes and defaults have been applied, no
/// Unset value remains and every seriestype is primitive.
struct PlotSpec {
    AttrMap attrs;
    LayoutNode layout;
    std::vector<SubplotSpec> subplots;
    std::vector<SeriesSpec> series;
    bool resolved = false;

    friend bool operator==(const PlotSpec&, const PlotSpec&) = default;
};

inline std::pair<double, double> plot_size(const PlotSpec& spec) {
    const AttrValue* s = spec.attrs.find("size");
    if (s && s->kind() == AttrValue::Kind::List && s->as_list().size() == 2)
        return {s->as_list()[0].as_number(), s->as_list()[1].as_number()};
    return {600.0, 400.0};
}

} // namespace plotkit
