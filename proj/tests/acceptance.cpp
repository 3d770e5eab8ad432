// Acceptance harness: one pass/fail line per criterion, nonzero exit on
// any failure. Runs from the repository root (fixtures under demo/ and
// tests/golden/).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plotkit/cli.hpp"
#include "plotkit/plotkit.hpp"

using namespace plotkit;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

const std::vector<std::string> kDemoNames = {
    "line",    "scatter", "multiseries", "bar",      "histogram",
    "boxplot", "heatmap", "subplots",    "logscale", "errorbars"};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------- criteria

// Every alias spelling of the series color lands on the same resolved spec.
void criterion_aliases() {
    auto kw = [](const std::string& key, AttrValue v) {
        AttrMap m;
        m.set(key, std::move(v));
        return m;
    };
    ArgList lone = {Arg::vector({2, 3, 4})};
    ArgList xy = {Arg::vector({1, 2, 3}), Arg::vector({2, 3, 4})};
    std::vector<PlotSpec> specs = {
        resolve(new_plot(lone, kw("c", AttrValue::name("steelblue")))),
        resolve(new_plot(lone, kw("color", AttrValue::integer(1)))),
        resolve(new_plot(xy, kw("colour", AttrValue::auto_()))),
        resolve(new_plot(xy, kw("seriescolors", AttrValue::integer(1)))),
        resolve(new_plot(xy, kw("seriescolor",
                                AttrValue::color({0.275, 0.51, 0.706, 1.0})))),
    };
    for (std::size_t i = 1; i < specs.size(); ++i)
        require(specs[i] == specs[0], "resolved specs differ at call " +
                                          std::to_string(i + 1));
    ColorSpec c = specs[0].series[0].attrs.get("seriescolor").as_color();
    require(c == ColorSpec{0.275, 0.51, 0.706, 1.0},
            "seriescolor did not resolve to the first palette entry");
}

// The closed table of positional input forms, checked by series count.
void criterion_input_forms() {
    auto series_count = [](const ArgList& args) {
        return new_plot(args).series.size();
    };
    auto f = [](double x) { return std::sin(x); };
    auto g = [](double x) { return std::cos(x); };

    require(series_count({Arg::vector({1, 2, 3})}) == 1, "lone y");
    DataMatrix m4;
    for (int c = 0; c < 4; ++c) m4.columns.push_back(DataColumn{{1, 2, 3}, {}});
    require(series_count({Arg::matrix(m4)}) == 4, "matrix columns");
    require(series_count({Arg::vector({1, 2}), Arg::vector({3, 4})}) == 1, "x,y");
    DataMatrix m5;
    for (int c = 0; c < 5; ++c) m5.columns.push_back(DataColumn{{1, 2, 3}, {}});
    require(series_count({Arg::matrix(m5), Arg::vector({0, 1, 2})}) == 5,
            "matrix with shared x");
    require(series_count({Arg::function(f), Arg::vector({0, 1, 2})}) == 1,
            "function over x");
    require(series_count({Arg::functions({f, g}), Arg::scalar(0),
                          Arg::scalar(3.14159)}) == 2,
            "function list over range");
    require(series_count({Arg::vector({0, 1, 2}),
                          Arg::mixed({DataColumn{{5, 6, 7}, {}}, ScalarFn(f)})}) == 2,
            "mixed vector/function list");
    require(series_count({Arg::payload(measurement_payload(
                {{1, 0.1}, {2, 0.2}}))}) == 1,
            "domain payload");
    PlotSpec a = new_plot({Arg::vector({1, 2})});
    PlotSpec nested = new_plot({Arg::plot_ref(a), Arg::plot_ref(a)});
    require(nested.subplots.size() == 2 && nested.series.size() == 2,
            "nested plots compose a two-subplot layout");
}

// Recursive recipe composition: a solution of measurement states expands
// through two recipe passes into plain columns with error channels.
void criterion_composition() {
    SampledSolution sol;
    sol.timestamps = {0, 1, 2, 3, 4};
    sol.labels = {"u", "v"};
    sol.states.resize(2);
    for (int i = 0; i < 5; ++i) {
        sol.states[0].push_back({std::sin(i * 0.5), 0.05 + 0.01 * i});
        sol.states[1].push_back({std::cos(i * 0.5), 0.02 * (i + 1)});
    }
    PlotSpec r = resolve(shorthand("scatter", {Arg::payload(solution_payload(sol))}));
    require(r.series.size() == 2, "expected one series per variable");
    for (std::size_t v = 0; v < 2; ++v) {
        const SeriesSpec& s = r.series[v];
        require(s.seriestype == "scatter", "seriestype survives expansion");
        require(s.x && s.x->values == sol.timestamps, "x is the timestamps");
        require(s.y && s.yerror, "y and yerror channels present");
        for (int i = 0; i < 5; ++i) {
            require(s.y->values[static_cast<std::size_t>(i)] ==
                        sol.states[v][static_cast<std::size_t>(i)].value,
                    "y matches the hand-unrolled values");
            require(s.yerror->values[static_cast<std::size_t>(i)] ==
                        sol.states[v][static_cast<std::size_t>(i)].uncertainty,
                    "yerror matches the hand-unrolled uncertainties");
        }
        require(s.attrs.get("label").as_text() == sol.labels[v], "variable label");
    }
}

// Force/Default directive semantics on randomized attribute maps.
void criterion_directives() {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> nkeys(0, 5);
    std::uniform_int_distribution<int> val(0, 99);
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        AttrMap attrs;
        int n = nkeys(rng);
        for (int i = 0; i < n; ++i) {
            if (coin(rng))
                attrs.set("k" + std::to_string(i), AttrValue::integer(val(rng)));
            else if (coin(rng))
                attrs.set("k" + std::to_string(i), AttrValue::unset());
        }
        std::string key = "k" + std::to_string(nkeys(rng));
        AttrValue incoming = AttrValue::integer(1000 + val(rng));
        bool is_force = coin(rng) == 1;
        AttrMap before = attrs;
        AttrMap after = apply_attr_directive(
            attrs, is_force ? force(key, incoming) : fallback(key, incoming));

        const AttrValue* prior = before.find(key);
        bool had_value = prior && !prior->is_unset();
        const AttrValue expected =
            is_force || !had_value ? incoming : *prior;
        if (!(after.get(key) == expected)) ++violations;
        for (const auto& [k, v] : before)
            if (k != key && !(after.get(k) == v)) ++violations;
    }
    require(violations == 0, std::to_string(violations) + " directive violations");
}

// Seriestype-conditioned defaults and color inheritance.
void criterion_defaults() {
    PlotSpec bar = resolve(shorthand("bar", {Arg::vector({3, 1, 4})}));
    require(!bar.series.empty(), "bar expanded to primitives");
    ColorSpec line = bar.series[0].attrs.get("linecolor").as_color();
    require(line == ColorSpec{0, 0, 0, 1.0}, "bar linecolor defaults to black");
    ColorSpec fill = bar.series[0].attrs.get("fillcolor").as_color();
    require(fill == default_palette().colors[0], "bar fill keeps the series color");

    PlotSpec path = resolve(new_plot({Arg::vector({1, 2, 3})}));
    ColorSpec sc = path.series[0].attrs.get("seriescolor").as_color();
    for (const char* key : {"linecolor", "fillcolor", "markercolor"})
        require(path.series[0].attrs.get(key).as_color() == sc,
                std::string(key) + " inherits seriescolor");
}

// Numeric kernels against independent oracles.
void criterion_numerics() {
    // ticks: exhaustive candidate enumeration over {1,2,5} x 10^k
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> loc(-1000, 1000);
    std::uniform_real_distribution<double> logspan(-3, 3);
    std::uniform_int_distribution<int> target(2, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        double lo = loc(rng);
        double hi = lo + std::pow(10.0, logspan(rng));
        int tgt = target(rng);
        double best_step = 0;
        long long best_count = -1, best_score = -1;
        for (int k = -12; k <= 12; ++k)
            for (int m : {1, 2, 5}) {
                double step = m * std::pow(10.0, k);
                double eps = 1e-9 * std::max({std::abs(lo), std::abs(hi), hi - lo});
                long long i0 = static_cast<long long>(std::ceil((lo - eps) / step));
                long long i1 = static_cast<long long>(std::floor((hi + eps) / step));
                long long count = i1 - i0 + 1;
                if (count < 2) continue;
                long long score = std::llabs(count - tgt);
                bool better = best_score < 0 || score < best_score ||
                              (score == best_score &&
                               (count < best_count ||
                                (count == best_count && step > best_step)));
                if (better) {
                    best_score = score;
                    best_count = count;
                    best_step = step;
                }
            }
        TickSet t = optimize_ticks(lo, hi, tgt);
        require(static_cast<long long>(t.positions.size()) == best_count,
                "tick count disagrees with the oracle");
    }

    // histogram: brute-force counting with right-open bins, last closed
    std::uniform_int_distribution<int> dsize(1, 200);
    std::uniform_real_distribution<double> dval(-50, 50);
    for (int trial = 0; trial < 100; ++trial) {
        DataColumn data;
        int n = dsize(rng);
        for (int i = 0; i < n; ++i) data.values.push_back(dval(rng));
        HistogramSpec h = compute_histogram(data);
        std::vector<std::int64_t> expected(h.counts.size(), 0);
        for (double x : data.values) {
            if (x < h.edges.front() || x > h.edges.back()) continue;
            std::size_t bin = h.counts.size() - 1; // default: last (closed) bin
            for (std::size_t b = 0; b + 1 < h.edges.size(); ++b)
                if (x >= h.edges[b] && x < h.edges[b + 1]) {
                    bin = b;
                    break;
                }
            ++expected[bin];
        }
        require(h.counts == expected, "histogram counts disagree with brute force");
    }

    // boxplot: direct type-7 quantile formula
    for (int trial = 0; trial < 100; ++trial) {
        DataColumn data;
        int n = dsize(rng) + 3;
        for (int i = 0; i < n; ++i) data.values.push_back(dval(rng));
        std::vector<double> sorted = data.values;
        std::sort(sorted.begin(), sorted.end());
        auto q = [&](double p) {
            double h = p * (static_cast<double>(sorted.size()) - 1);
            std::size_t lo = static_cast<std::size_t>(std::floor(h));
            std::size_t hi = std::min(lo + 1, sorted.size() - 1);
            return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
        };
        BoxStats s = compute_box_stats(data);
        require(std::abs(s.q1 - q(0.25)) <= 1e-12, "q1 oracle mismatch");
        require(std::abs(s.median - q(0.5)) <= 1e-12, "median oracle mismatch");
        require(std::abs(s.q3 - q(0.75)) <= 1e-12, "q3 oracle mismatch");
    }
}

// Adaptive function sampling: interpolant error bound and sample budget.
void criterion_sampling() {
    struct Case {
        ScalarFn f;
        double lo, hi;
    };
    for (const Case& c : {Case{[](double x) { return std::sin(x); }, 0, 3.14159265358979},
                          Case{[](double x) { return std::exp(x); }, 0, 3}}) {
        SampledCurve curve = sample_function(c.f, c.lo, c.hi);
        require(curve.xs.size() <= 200, "sample budget exceeded");
        require(curve.xs.values.front() == c.lo && curve.xs.values.back() == c.hi,
                "endpoints missing");
        double vmin = INFINITY, vmax = -INFINITY, max_err = 0;
        std::vector<double> truth;
        for (int i = 0; i < 10000; ++i) {
            double t = c.lo + (c.hi - c.lo) * i / 9999.0;
            double v = c.f(t);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
            auto it = std::upper_bound(curve.xs.values.begin(),
                                       curve.xs.values.end(), t);
            std::size_t hi_idx = std::min(
                static_cast<std::size_t>(it - curve.xs.values.begin()),
                curve.xs.size() - 1);
            std::size_t lo_idx = hi_idx == 0 ? 0 : hi_idx - 1;
            double x0 = curve.xs.values[lo_idx], x1 = curve.xs.values[hi_idx];
            double y0 = curve.ys.values[lo_idx], y1 = curve.ys.values[hi_idx];
            double interp = x1 == x0 ? y0 : y0 + (y1 - y0) * (t - x0) / (x1 - x0);
            max_err = std::max(max_err, std::abs(interp - v));
        }
        require(max_err <= 1e-3 * (vmax - vmin),
                "interpolant error " + std::to_string(max_err) + " above bound");
    }
}

// Every shipped fixture renders through all four backends; the raster
// backends consume identical scene graphs.
void criterion_backends() {
    for (const std::string& name : kDemoNames) {
        std::string path = "demo/" + name + ".json";
        for (const char* backend : {"svg", "unicode", "plotly", "spec"}) {
            std::ostringstream out, err;
            int code = run_cli({"--input", path, "--backend", backend}, out, err);
            require(code == 0, path + " via " + backend + " exited " +
                                   std::to_string(code) + ": " + err.str());
            require(!out.str().empty(), path + " via " + backend + " produced nothing");
        }
        PlotSpec spec = resolve(
            load_plotfile(nlohmann::json::parse(read_file(path)), "demo"));
        auto [w, h] = plot_size(spec);
        auto boxes = compute_layout(spec.layout, w, h);
        require(scene_hash(lower(spec, boxes)) == scene_hash(lower(spec, boxes)),
                path + ": scene graphs diverge between lowerings");
    }
}

// Serialization: deserialize . serialize is the identity, and a reloaded
// spec renders to the same bytes.
void criterion_serialization() {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> nser(0, 3);
    std::uniform_real_distribution<double> num(-100, 100);
    for (int trial = 0; trial < 500; ++trial) {
        PlotSpec spec;
        spec.layout = LayoutNode::leaf(0);
        spec.subplots.emplace_back();
        if (coin(rng)) spec.attrs.set("window_title", AttrValue::text("t"));
        if (coin(rng)) spec.subplots[0].yaxis.scale = AxisScale::Log10;
        if (coin(rng)) spec.subplots[0].xaxis.set_limits(-1, 1);
        int n = nser(rng);
        for (int i = 0; i < n; ++i) {
            SeriesSpec s;
            s.seriestype = coin(rng) ? "path" : "scatter";
            DataColumn y;
            int len = nser(rng) + 1;
            for (int j = 0; j < len; ++j)
                y.values.push_back(coin(rng) && coin(rng) ? NAN : num(rng));
            s.y = y;
            s.x = iota_column(y.size());
            if (coin(rng)) s.attrs.set("linewidth", AttrValue::number(num(rng)));
            if (coin(rng)) s.attrs.set("label", AttrValue::text("s" + std::to_string(i)));
            if (coin(rng)) s.attrs.set("marker", AttrValue::unset());
            spec.subplots[0].series_indices.push_back(i);
            spec.series.push_back(std::move(s));
        }
        require(deserialize_spec(serialize_spec(spec)) == spec,
                "round trip broke at trial " + std::to_string(trial));
    }

    PlotSpec plot = resolve(shorthand("bar", {Arg::vector({2, 7, 1, 8})}));
    PlotSpec reloaded = deserialize_spec(serialize_spec(plot));
    require(render_with_backend(plot, "svg") == render_with_backend(reloaded, "svg"),
            "reloaded spec renders differently");
}

// Checked-in SVG goldens stay byte-stable.
void criterion_goldens() {
    for (const std::string& name : kDemoNames) {
        std::ostringstream out, err;
        int code = run_cli({"--input", "demo/" + name + ".json"}, out, err);
        require(code == 0, name + ": render failed: " + err.str());
        std::string golden = read_file("tests/golden/" + name + ".svg");
        require(out.str() == golden, name + ": SVG differs from the golden file");
    }
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Entry> criteria = {
        {"alias spellings resolve identically", criterion_aliases},
        {"positional input forms", criterion_input_forms},
        {"recursive recipe composition", criterion_composition},
        {"directive force/default semantics", criterion_directives},
        {"conditional defaults and color inheritance", criterion_defaults},
        {"ticks/histogram/boxplot oracles", criterion_numerics},
        {"adaptive sampling error bound", criterion_sampling},
        {"all fixtures through all backends", criterion_backends},
        {"serialization round trip", criterion_serialization},
        {"golden SVG stability", criterion_goldens},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        try {
            criteria[i].fn();
        } catch (const std::exception& e) {
            detail = e.what();
        }
        if (detail.empty()) {
            std::printf("[PASS] criterion %zu: %s\n", i + 1, criteria[i].name);
        } else {
            std::printf("[FAIL] criterion %zu: %s -- %s\n", i + 1, criteria[i].name,
                        detail.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
