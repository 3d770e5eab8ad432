#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plotkit/api.hpp"
#include "plotkit/backend_counters.hpp"

using namespace plotkit;

TEST_CASE("new_plot builds one subplot and routes data") {
    PlotSpec p = new_plot({Arg::vector({1, 2, 3})});
    REQUIRE(p.subplots.size() == 1);
    REQUIRE(p.series.size() == 1);
    CHECK(p.series[0].seriestype == "path");
    CHECK(p.series[0].y->values == std::vector<double>{1, 2, 3});
    CHECK(p.subplots[0].series_indices == std::vector<int>{0});
    CHECK_FALSE(p.resolved);
}

TEST_CASE("construction never touches a backend") {
    backend_counters().reset();
    PlotSpec p = new_plot({Arg::vector({1, 2, 3})}, [] {
        AttrMap m;
        m.set("title", AttrValue::text("t"));
        return m;
    }());
    plot_mut(p, {Arg::vector({4, 5, 6})}, {});
    PlotSpec r = resolve(p);
    (void)r;
    CHECK(backend_counters().total() == 0);
}

TEST_CASE("kwargs are canonicalized before storage") {
    AttrMap kw;
    kw.set("lw", AttrValue::number(3));
    kw.set("colour", AttrValue::name("red"));
    PlotSpec p = new_plot({Arg::vector({1, 2})}, kw);
    CHECK(p.series[0].attrs.get("linewidth").as_number() == 3);
    CHECK(p.series[0].attrs.get("seriescolor").as_name() == "red");
    CHECK_FALSE(p.series[0].attrs.contains("lw"));
}

TEST_CASE("attribute levels route to the right scope") {
    AttrMap kw;
    kw.set("size", AttrValue::list({AttrValue::integer(800), AttrValue::integer(600)}));
    kw.set("title", AttrValue::text("hello"));
    kw.set("xlabel", AttrValue::text("time"));
    kw.set("ylimits", AttrValue::list({AttrValue::number(0), AttrValue::number(5)}));
    kw.set("yscale", AttrValue::name("log10"));
    kw.set("linewidth", AttrValue::number(2));
    PlotSpec p = new_plot({Arg::vector({1, 2})}, kw);
    CHECK(p.attrs.get("size").as_list()[0].as_int() == 800);
    CHECK(p.subplots[0].attrs.get("title").as_text() == "hello");
    CHECK(p.subplots[0].xaxis.label == "time");
    CHECK(p.subplots[0].yaxis.limits == std::pair<double, double>{0.0, 5.0});
    CHECK(p.subplots[0].yaxis.scale == AxisScale::Log10);
    CHECK(p.series[0].attrs.get("linewidth").as_number() == 2);
    CHECK_FALSE(p.series[0].attrs.contains("title"));
}

TEST_CASE("explicit ticks and auto reset") {
    AttrMap kw;
    kw.set("xticks", AttrValue::list({AttrValue::number(0), AttrValue::number(5),
                                      AttrValue::number(10)}));
    PlotSpec p = new_plot({Arg::vector({1, 2})}, kw);
    REQUIRE(p.subplots[0].xaxis.ticks);
    CHECK(p.subplots[0].xaxis.ticks->positions == std::vector<double>{0, 5, 10});
    CHECK(p.subplots[0].xaxis.ticks->labels.size() == 3);

    AttrMap reset;
    reset.set("xticks", AttrValue::auto_());
    plot_mut(p, {}, reset);
    CHECK_FALSE(p.subplots[0].xaxis.ticks);
}

TEST_CASE("shorthand sets the seriestype unless the caller overrides") {
    PlotSpec sc = shorthand("scatter", {Arg::vector({1, 2})});
    CHECK(sc.series[0].seriestype == "scatter");

    AttrMap kw;
    kw.set("seriestype", AttrValue::name("path"));
    PlotSpec forced = shorthand("scatter", {Arg::vector({1, 2})}, kw);
    CHECK(forced.series[0].seriestype == "path");

    CHECK_THROWS_AS(shorthand("nonesuch", {}), UnknownSeriestype);
    AttrMap bad;
    bad.set("seriestype", AttrValue::name("nonesuch"));
    CHECK_THROWS_AS(new_plot({Arg::vector({1, 2})}, bad), UnknownSeriestype);
}

TEST_CASE("plot_mut appends series and targets subplots") {
    PlotSpec p = new_plot({Arg::vector({1, 2})});
    plot_mut(p, {Arg::vector({3, 4})}, {});
    CHECK(p.series.size() == 2);
    CHECK(p.subplots[0].series_indices == std::vector<int>{0, 1});

    AttrMap kw;
    kw.set("subplot", AttrValue::integer(5));
    CHECK_THROWS_AS(plot_mut(p, {Arg::vector({5, 6})}, kw), ArgumentError);
}

TEST_CASE("kwargs apply only to series created by the same call") {
    PlotSpec p = new_plot({Arg::vector({1, 2})});
    AttrMap kw;
    kw.set("linewidth", AttrValue::number(7));
    plot_mut(p, {Arg::vector({3, 4})}, kw);
    CHECK_FALSE(p.series[0].attrs.contains("linewidth"));
    CHECK(p.series[1].attrs.get("linewidth").as_number() == 7);
}

TEST_CASE("nested plot args compose a fresh layout by value") {
    PlotSpec a = new_plot({Arg::vector({1, 2})});
    PlotSpec b = new_plot({Arg::vector({3, 4})});
    PlotSpec combined = new_plot({Arg::plot_ref(a), Arg::plot_ref(b)});
    REQUIRE(combined.subplots.size() == 2);
    REQUIRE(combined.series.size() == 2);
    CHECK(combined.series[0].subplot_index == 0);
    CHECK(combined.series[1].subplot_index == 1);
    CHECK(combined.subplots[1].series_indices == std::vector<int>{1});
    // children were copied: mutating the composition leaves the originals alone
    combined.series[0].attrs.set("label", AttrValue::text("x"));
    CHECK_FALSE(a.series[0].attrs.contains("label"));

    PlotSpec busy = new_plot({Arg::vector({1, 2})});
    CHECK_THROWS_AS(plot_mut(busy, {Arg::plot_ref(a), Arg::plot_ref(b)}, {}),
                    ArgumentError);
}

TEST_CASE("resolve produces only primitives with no unset values") {
    RecipeRegistry& reg = standard_registry();
    PlotSpec p = shorthand("bar", {Arg::vector({3, 1, 4})});
    PlotSpec r = resolve(p);
    CHECK(r.resolved);
    for (const auto& s : r.series) {
        CHECK(reg.is_primitive(s.seriestype));
        for (const auto& [k, v] : s.attrs) CHECK_FALSE(v.is_unset());
    }
    // resolve of a resolved spec is the identity
    CHECK(resolve(r) == r);
    // resolving twice from scratch is deterministic
    CHECK(resolve(p) == r);
    // the input stays unresolved
    CHECK_FALSE(p.resolved);
}

TEST_CASE("kwarg application order does not matter") {
    AttrMap ab, ba;
    ab.set("lw", AttrValue::number(2));
    ab.set("label", AttrValue::text("s"));
    ba.set("label", AttrValue::text("s"));
    ba.set("lw", AttrValue::number(2));
    PlotSpec p1 = new_plot({Arg::vector({1, 2})}, ab);
    PlotSpec p2 = new_plot({Arg::vector({1, 2})}, ba);
    CHECK(p1 == p2);
    CHECK(resolve(p1) == resolve(p2));
}

TEST_CASE("attr_level classification") {
    CHECK(attr_level("size") == AttrLevel::Plot);
    CHECK(attr_level("dpi") == AttrLevel::Plot);
    CHECK(attr_level("title") == AttrLevel::Subplot);
    CHECK(attr_level("legend") == AttrLevel::Subplot);
    CHECK(attr_level("xlimits") == AttrLevel::Axis);
    CHECK(attr_level("yscale") == AttrLevel::Axis);
    CHECK(attr_level("linewidth") == AttrLevel::Series);
    CHECK(attr_level("anything_else") == AttrLevel::Series);
}

TEST_CASE("unknown attribute keys warn but are preserved") {
    WarningCapture cap;
    AttrMap kw;
    kw.set("mystery_attr", AttrValue::number(1));
    PlotSpec p = new_plot({Arg::vector({1, 2})}, kw);
    CHECK(p.series[0].attrs.contains("mystery_attr"));
    REQUIRE(cap.messages.size() == 1);
    CHECK(cap.messages[0].find("mystery_attr") != std::string::npos);
}
