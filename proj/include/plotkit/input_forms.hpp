#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "plotkit/attr.hpp"
#include "plotkit/data.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/plot.hpp"

namespace plotkit {

using ScalarFn = std::function<double(double)>;

/// One positional argument of a plot call.
struct Arg {
    struct Count {
        int n = 0;
    };
    struct Scalar {
        double v = 0;
    };
    using MixedItem = std::variant<DataColumn, ScalarFn>;
    struct MixedList {
        std::vector<MixedItem> items;
    };
    struct FunctionList {
        std::vector<ScalarFn> fns;
    };

    std::variant<Count, Scalar, DataColumn, DataMatrix, ScalarFn, FunctionList,
                 PlotSpec, MixedList, DomainPayload>
        value;

    static Arg count(int n) { return {Count{n}}; }
    static Arg scalar(double v) { return {Scalar{v}}; }
    static Arg vector(std::vector<double> vals) {
        DataColumn c;
        c.values = std::move(vals);
        return {std::move(c)};
    }
    static Arg column(DataColumn c) { return {std::move(c)}; }
    static Arg matrix(DataMatrix m) { return {std::move(m)}; }
    static Arg function(ScalarFn f) { return {std::move(f)}; }
    static Arg functions(std::vector<ScalarFn> fns) { return {FunctionList{std::move(fns)}}; }
    static Arg plot_ref(PlotSpec p) { return {std::move(p)}; }
    static Arg mixed(std::vector<MixedItem> items) { return {MixedList{std::move(items)}}; }
    static Arg payload(DomainPayload p) { return {std::move(p)}; }
};

using ArgList = std::vector<Arg>;

/// A series before recipes/defaults: data columns or a function still to
/// be sampled, plus per-series attributes collected so far.
struct SeriesPrototype {
    std::optional<DataColumn> x, y;
    std::optional<ScalarFn> pending_function;
    std::optional<DomainPayload> payload;
    AttrMap attrs;
};

/// plot(p1, p2, ...): children are copied by value into one fresh layout.
struct LayoutComposition {
    std::vector<PlotSpec> children;
};

using InterpretResult = std::variant<std::vector<SeriesPrototype>, LayoutComposition>;

struct SampledCurve {
    DataColumn xs, ys;
};

/// Sample f on [lo,hi] with an adaptive grid: recursive interval bisection
/// wherever the function deviates from the local chord by more than
/// tol x (value range), probed at the midpoint and at one seeded-random
/// interior point per interval to avoid aliasing on periodic functions.
/// Non-finite values become gap markers. xs is strictly increasing and
/// contains lo and hi; at most max_points samples.
inline SampledCurve sample_function(const ScalarFn& f, double lo, double hi,
                                    int max_points = 200, double tol = 1e-3) {
    if (!(lo < hi)) throw InvalidRange(lo, hi);
    std::mt19937 rng(0x5eed5eed);
    std::uniform_real_distribution<double> jitter(0.35, 0.65);

    auto eval = [&](double x) {
        double v = f(x);
        return std::isfinite(v) ? v : missing_value();
    };

    std::map<double, double> points;
    const int initial = std::min(max_points, 21);
    for (int i = 0; i < initial; ++i) {
        double x = lo + (hi - lo) * i / (initial - 1);
        points.emplace(x, eval(x));
    }

    double vmin = 0, vmax = 0;
    bool have_range = false;
    auto widen = [&](double v) {
        if (!std::isfinite(v)) return;
        if (!have_range) {
            vmin = vmax = v;
            have_range = true;
        } else {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    };
    for (const auto& [x, v] : points) widen(v);

    const double min_width = (hi - lo) * 1e-7;
    struct Interval {
        double a, fa, b, fb;
        int depth;
    };
    std::vector<Interval> work;
    {
        auto it = points.begin();
        auto next = std::next(it);
        for (; next != points.end(); ++it, ++next)
            work.push_back({it->first, it->second, next->first, next->second, 0});
    }

    while (!work.empty() && static_cast<int>(points.size()) < max_points) {
        Interval iv = work.back();
        work.pop_back();
        if (iv.b - iv.a < min_width || iv.depth > 40) continue;

        double m = 0.5 * (iv.a + iv.b);
        double fm = eval(m);
        double probe = iv.a + jitter(rng) * (iv.b - iv.a);
        double fp = eval(probe);
        widen(fm);
        widen(fp);
        double range = have_range ? std::max(vmax - vmin, 1e-300) : 1.0;

        auto chord = [&](double x) {
            return iv.fa + (iv.fb - iv.fa) * (x - iv.a) / (iv.b - iv.a);
        };
        auto deviation = [&](double x, double fx) {
            if (!std::isfinite(iv.fa) || !std::isfinite(iv.fb))
                return std::isfinite(fx) ? range : 0.0;
            if (!std::isfinite(fx)) return range;
            return std::abs(fx - chord(x));
        };
        double dev = std::max(deviation(m, fm), deviation(probe, fp));
        // Half the requested tolerance so the piecewise-linear error bound
        // holds away from the probed points too.
        if (dev > 0.5 * tol * range) {
            points.emplace(m, fm);
            work.push_back({iv.a, iv.fa, m, fm, iv.depth + 1});
            work.push_back({m, fm, iv.b, iv.fb, iv.depth + 1});
        }
    }

    SampledCurve out;
    out.xs.values.reserve(points.size());
    out.ys.values.reserve(points.size());
    for (const auto& [x, v] : points) {
        out.xs.values.push_back(x);
        out.ys.values.push_back(v);
    }
    return out;
}

namespace detail {

inline DataColumn apply_fn(const ScalarFn& f, const DataColumn& x) {
    DataColumn y;
    y.values.reserve(x.size());
    for (double v : x.values) {
        if (std::isfinite(v)) {
            double r = f(v);
            y.values.push_back(std::isfinite(r) ? r : missing_value());
        } else {
            y.values.push_back(missing_value());
        }
    }
    return y;
}

inline SeriesPrototype from_xy(DataColumn x, DataColumn y) {
    SeriesPrototype p;
    DataColumn ys = sanitize_data(y);
    DataColumn xs = sanitize_data(x);
    if (ys.empty()) xs.values.clear();
    if (xs.size() != ys.size())
        throw LengthMismatch("x", xs.size(), "y", ys.size());
    p.x = std::move(xs);
    p.y = std::move(ys);
    return p;
}

inline SeriesPrototype from_y(DataColumn y) {
    DataColumn ys = sanitize_data(y);
    DataColumn xs = iota_column(ys.size());
    SeriesPrototype p;
    p.x = std::move(xs);
    p.y = std::move(ys);
    return p;
}

inline const char* accepted_forms() {
    return "accepted argument forms: (); (n); (y); (x, y); (Y_matrix); "
           "(Y_matrix, x); (f, x); (f, lo, hi); ([f...], lo, hi); "
           "(x, [y_or_f...]); (domain_value); (x, domain_value); (plot, plot, ...)";
}

} // namespace detail

/// Interpret the positional arguments of a plot call into series
/// prototypes (or, for nested plots, a layout composition). The dispatch
/// table is closed: anything else raises ArgumentError.
inline InterpretResult interpret_args(const ArgList& args) {
    using V = std::vector<SeriesPrototype>;

    auto is = [&](std::size_t i, auto tag) {
        using T = decltype(tag);
        return i < args.size() && std::holds_alternative<T>(args[i].value);
    };
    auto all_plots = [&] {
        if (args.empty()) return false;
        for (const auto& a : args)
            if (!std::holds_alternative<PlotSpec>(a.value)) return false;
        return true;
    };

    if (args.empty()) return V{};

    if (all_plots()) {
        LayoutComposition lc;
        for (const auto& a : args) lc.children.push_back(std::get<PlotSpec>(a.value));
        return lc;
    }

    if (args.size() == 1) {
        if (is(0, Arg::Count{})) {
            int n = std::get<Arg::Count>(args[0].value).n;
            if (n < 1) throw ArgumentError("series count must be >= 1");
            return V(static_cast<std::size_t>(n));
        }
        if (is(0, DataColumn{}))
            return V{detail::from_y(std::get<DataColumn>(args[0].value))};
        if (is(0, DataMatrix{})) {
            const auto& m = std::get<DataMatrix>(args[0].value);
            V out;
            for (const auto& col : m.columns) out.push_back(detail::from_y(col));
            return out;
        }
        if (is(0, DomainPayload{})) {
            SeriesPrototype p;
            p.payload = std::get<DomainPayload>(args[0].value);
            return V{std::move(p)};
        }
    }

    if (args.size() == 2) {
        if (is(0, DataColumn{}) && is(1, DataColumn{}))
            return V{detail::from_xy(std::get<DataColumn>(args[0].value),
                                     std::get<DataColumn>(args[1].value))};
        if (is(0, DataMatrix{}) && is(1, DataColumn{})) {
            const auto& m = std::get<DataMatrix>(args[0].value);
            const auto& x = std::get<DataColumn>(args[1].value);
            V out;
            for (const auto& col : m.columns) {
                if (col.size() != x.size())
                    throw LengthMismatch("matrix column", col.size(), "shared x", x.size());
                out.push_back(detail::from_xy(x, col));
            }
            return out;
        }
        if (is(0, DataColumn{}) && is(1, DomainPayload{})) {
            SeriesPrototype p;
            p.x = sanitize_data(std::get<DataColumn>(args[0].value));
            p.payload = std::get<DomainPayload>(args[1].value);
            return V{std::move(p)};
        }
        if (is(0, ScalarFn{}) && is(1, DataColumn{})) {
            const auto& f = std::get<ScalarFn>(args[0].value);
            DataColumn x = sanitize_data(std::get<DataColumn>(args[1].value));
            SeriesPrototype p;
            p.y = detail::apply_fn(f, x);
            p.x = std::move(x);
            return V{std::move(p)};
        }
        if (is(0, DataColumn{}) && is(1, Arg::MixedList{})) {
            DataColumn x = sanitize_data(std::get<DataColumn>(args[0].value));
            const auto& mixed = std::get<Arg::MixedList>(args[1].value);
            V out;
            for (const auto& item : mixed.items) {
                SeriesPrototype p;
                if (std::holds_alternative<DataColumn>(item)) {
                    const auto& y = std::get<DataColumn>(item);
                    if (y.size() != x.size())
                        throw LengthMismatch("mixed-list vector", y.size(), "x", x.size());
                    p = detail::from_xy(x, y);
                } else {
                    p.x = x;
                    p.y = detail::apply_fn(std::get<ScalarFn>(item), x);
                }
                out.push_back(std::move(p));
            }
            return out;
        }
    }

    if (args.size() == 3 && is(1, Arg::Scalar{}) && is(2, Arg::Scalar{})) {
        double lo = std::get<Arg::Scalar>(args[1].value).v;
        double hi = std::get<Arg::Scalar>(args[2].value).v;
        std::vector<ScalarFn> fns;
        if (is(0, ScalarFn{}))
            fns.push_back(std::get<ScalarFn>(args[0].value));
        else if (is(0, Arg::FunctionList{}))
            fns = std::get<Arg::FunctionList>(args[0].value).fns;
        if (!fns.empty()) {
            V out;
            for (const auto& f : fns) {
                SampledCurve c = sample_function(f, lo, hi);
                SeriesPrototype p;
                p.x = std::move(c.xs);
                p.y = std::move(c.ys);
                out.push_back(std::move(p));
            }
            return out;
        }
    }

    throw ArgumentError(std::string("cannot interpret plot arguments; ") +
                        detail::accepted_forms());
}

} // namespace plotkit
