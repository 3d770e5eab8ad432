#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "plotkit/layout.hpp"
#include "plotkit/warnings.hpp"

using namespace plotkit;

TEST_CASE("default_grid is near-square, row-major, blank-padded") {
    struct Case {
        int n, rows, cols;
    };
    // rows = floor(sqrt(n)), cols = ceil(n / rows)
    for (Case c : {Case{1, 1, 1}, Case{2, 1, 2}, Case{3, 1, 3}, Case{4, 2, 2},
                   Case{5, 2, 3}, Case{6, 2, 3}, Case{7, 2, 4}, Case{9, 3, 3},
                   Case{10, 3, 4}, Case{12, 3, 4}}) {
        LayoutNode g = default_grid(c.n);
        const auto& grid = std::get<LayoutNode::Grid>(g.node);
        CHECK(grid.rows == c.rows);
        CHECK(grid.cols == c.cols);
        REQUIRE(static_cast<int>(grid.children.size()) == c.rows * c.cols);
        for (int i = 0; i < c.rows * c.cols; ++i) {
            if (i < c.n) {
                const auto* leaf = std::get_if<LayoutNode::Leaf>(&grid.children[i].node);
                REQUIRE(leaf != nullptr);
                CHECK(leaf->subplot_index == i);
            } else {
                CHECK(std::holds_alternative<LayoutNode::Blank>(grid.children[i].node));
            }
        }
    }
    CHECK_THROWS_AS(default_grid(0), ArgumentError);
}

TEST_CASE("grid cells tile the canvas exactly") {
    Margin zero{0, 0, 0, 0};
    auto boxes = compute_layout(default_grid(4), 640, 480, {}, zero);
    REQUIRE(boxes.size() == 4);
    for (const auto& [idx, b] : boxes) {
        CHECK(b.w == doctest::Approx(320));
        CHECK(b.h == doctest::Approx(240));
    }
    // row-major placement
    CHECK(boxes[0].x0 == doctest::Approx(0));
    CHECK(boxes[0].y0 == doctest::Approx(0));
    CHECK(boxes[1].x0 == doctest::Approx(320));
    CHECK(boxes[1].y0 == doctest::Approx(0));
    CHECK(boxes[2].x0 == doctest::Approx(0));
    CHECK(boxes[2].y0 == doctest::Approx(240));
    CHECK(boxes[3].x0 == doctest::Approx(320));
    CHECK(boxes[3].y0 == doctest::Approx(240));
    // no overlap, total area covered
    double area = 0;
    for (const auto& [idx, b] : boxes) area += b.w * b.h;
    CHECK(area == doctest::Approx(640.0 * 480.0));
}

TEST_CASE("margins shrink leaves into plot areas") {
    Margin m{10, 20, 30, 40};
    auto boxes = compute_layout(LayoutNode::leaf(0), 600, 400, {}, m);
    REQUIRE(boxes.size() == 1);
    CHECK(boxes[0].x0 == 10);
    CHECK(boxes[0].y0 == 20);
    CHECK(boxes[0].w == 600 - 10 - 30);
    CHECK(boxes[0].h == 400 - 20 - 40);
    // per-leaf override beats the default margin
    auto boxes2 = compute_layout(LayoutNode::leaf(0), 600, 400,
                                 {{0, Margin{0, 0, 0, 0}}}, m);
    CHECK(boxes2[0].w == 600);
}

TEST_CASE("nested grids and relative sizes") {
    LayoutNode::Grid outer;
    outer.rows = 1;
    outer.cols = 2;
    outer.widths = {0.25, 0.75};
    outer.heights = {1.0};
    outer.children = {LayoutNode::leaf(0), LayoutNode::leaf(1)};
    Margin zero{0, 0, 0, 0};
    auto boxes = compute_layout({outer}, 400, 100, {}, zero);
    CHECK(boxes[0].w == doctest::Approx(100));
    CHECK(boxes[1].w == doctest::Approx(300));
    CHECK(boxes[1].x0 == doctest::Approx(100));
}

TEST_CASE("mis-normalized sizes are rescaled with a warning") {
    LayoutNode::Grid g;
    g.rows = 1;
    g.cols = 2;
    g.widths = {1.0, 3.0}; // sums to 4, not 1
    g.heights = {1.0};
    g.children = {LayoutNode::leaf(0), LayoutNode::leaf(1)};
    WarningCapture cap;
    auto boxes = compute_layout({g}, 400, 100, {}, Margin{0, 0, 0, 0});
    CHECK(boxes[0].w == doctest::Approx(100));
    CHECK(boxes[1].w == doctest::Approx(300));
    CHECK(cap.messages.size() == 1);

    g.widths = {-1.0, 2.0};
    CHECK_THROWS_AS(compute_layout({g}, 400, 100), ArgumentError);
    CHECK_THROWS_AS(compute_layout(LayoutNode::leaf(0), 0, 100), ArgumentError);
}

TEST_CASE("grid child count must match rows x cols") {
    LayoutNode::Grid g;
    g.rows = 2;
    g.cols = 2;
    g.children = {LayoutNode::leaf(0)};
    CHECK_THROWS_AS(compute_layout({g}, 100, 100), ArgumentError);
}

TEST_CASE("optimize_ticks on simple ranges") {
    TickSet t = optimize_ticks(0, 10, 5);
    CHECK(t.positions == std::vector<double>{0, 2, 4, 6, 8, 10});
    CHECK(t.labels == std::vector<std::string>{"0", "2", "4", "6", "8", "10"});

    // step 0.2 gives six ticks (|6-5| = 1), the closest candidate to target 5
    TickSet u = optimize_ticks(0, 1, 5);
    CHECK(u.positions.size() == 6);
    CHECK(u.labels.front() == "0.0");
    CHECK_THROWS_AS(optimize_ticks(1, 0, 5), InvalidRange);
    CHECK_THROWS_AS(optimize_ticks(0, 1, 1), ArgumentError);
}

TEST_CASE("optimize_ticks matches the exhaustive oracle on random ranges") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> loc(-1000, 1000);
    std::uniform_real_distribution<double> logspan(-3, 3);
    std::uniform_int_distribution<int> target(2, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        double lo = loc(rng);
        double hi = lo + std::pow(10.0, logspan(rng));
        int tgt = target(rng);

        // Exhaustive oracle over every candidate step {1,2,5} x 10^k:
        // minimize |count - target|, ties -> fewer ticks, then larger step.
        double best_step = 0;
        long long best_count = -1, best_score = -1;
        for (int k = -12; k <= 12; ++k) {
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
        }
        REQUIRE(best_score >= 0);

        TickSet t = optimize_ticks(lo, hi, tgt);
        REQUIRE(static_cast<long long>(t.positions.size()) == best_count);
        for (std::size_t i = 0; i < t.positions.size(); ++i) {
            double expected =
                (std::ceil((lo - 1e-9 * std::max({std::abs(lo), std::abs(hi), hi - lo})) /
                           best_step) +
                 static_cast<double>(i)) *
                best_step;
            CHECK(t.positions[i] == doctest::Approx(expected).epsilon(1e-9));
        }
        // positions lie inside the range (within rounding slack)
        CHECK(t.positions.front() >= lo - 1e-6 * (hi - lo) - 1e-12);
        CHECK(t.positions.back() <= hi + 1e-6 * (hi - lo) + 1e-12);
        // labels are pairwise distinct
        for (std::size_t i = 1; i < t.labels.size(); ++i)
            CHECK(t.labels[i] != t.labels[i - 1]);
    }
}

TEST_CASE("tick labels pick minimal decimals and scientific extremes") {
    TickSet t = optimize_ticks(0, 1, 5);
    // step 0.25 or 0.2: labels need fractional digits but stay short
    for (const auto& lab : t.labels) CHECK(lab.size() <= 5);

    TickSet big = optimize_ticks(0, 1e6, 5);
    bool scientific = false;
    for (const auto& lab : big.labels)
        if (lab.find('e') != std::string::npos) scientific = true;
    CHECK(scientific);

    TickSet tiny = optimize_ticks(0, 2e-5, 4);
    bool tiny_sci = false;
    for (const auto& lab : tiny.labels)
        if (lab.find('e') != std::string::npos) tiny_sci = true;
    CHECK(tiny_sci);

    // negative zero never leaks into labels
    TickSet z = optimize_ticks(-1, 1, 5);
    for (const auto& lab : z.labels) CHECK(lab.find("-0.0") == std::string::npos);
}

TEST_CASE("infer_limits pads five percent and handles edge cases") {
    AxisSpec axis;
    auto [lo, hi] = infer_limits({0, 10}, axis);
    CHECK(lo == doctest::Approx(-0.5));
    CHECK(hi == doctest::Approx(10.5));

    CHECK(infer_limits({}, axis) == std::pair<double, double>{0.0, 1.0});
    CHECK(infer_limits({NAN, INFINITY}, axis) == std::pair<double, double>{0.0, 1.0});

    // single value gets symmetric padding
    auto [slo, shi] = infer_limits({4, 4, 4}, axis);
    CHECK(slo < 4);
    CHECK(shi > 4);

    // explicit limits pass through untouched
    axis.set_limits(-3, 3);
    CHECK(infer_limits({100, 200}, axis) == std::pair<double, double>{-3.0, 3.0});
}

TEST_CASE("infer_limits is multiplicative on log axes") {
    AxisSpec axis;
    axis.scale = AxisScale::Log10;
    auto [lo, hi] = infer_limits({1, 1000}, axis);
    double factor = std::pow(1000.0, 0.05);
    CHECK(lo == doctest::Approx(1.0 / factor));
    CHECK(hi == doctest::Approx(1000.0 * factor));
    // non-positive samples are ignored on log axes
    auto [plo, phi] = infer_limits({-5, 0, 10, 100}, axis);
    CHECK(plo > 0);
    CHECK(phi > 100);
    CHECK_THROWS_AS(axis.set_limits(0, 10), ArgumentError); // log needs lo > 0
}

TEST_CASE("axis limits validation") {
    AxisSpec axis;
    CHECK_THROWS_AS(axis.set_limits(2, 2), InvalidRange);
    CHECK_THROWS_AS(axis.set_limits(3, 1), InvalidRange);
    axis.set_limits(1, 3);
    CHECK(axis.limits == std::pair<double, double>{1.0, 3.0});
}
