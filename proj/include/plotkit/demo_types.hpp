#pragma once

#include <any>
#include <string>
#include <vector>

#include "plotkit/errors.hpp"
#include "plotkit/recipes.hpp"

// Demo domain types showing recipe composition: a value-with-uncertainty
// type and a sampled time-series solution whose states are made of them.
// Neither recipe knows about the other; composition happens through the
// recursive dispatch in apply_recipes.

namespace plotkit {

/// a +/- b: a is the value, b the uncertainty (>= 0).
struct Measurement {
    double value = 0;
    double uncertainty = 0;

    Measurement() = default;
    Measurement(double v, double u) : value(v), uncertainty(u) {
        if (u < 0) throw ArgumentError("uncertainty must be >= 0");
    }
};

inline DomainPayload measurement_payload(std::vector<Measurement> values) {
    return {"MeasurementVector", "Measurement", std::any(std::move(values))};
}

/// Time series of per-variable Measurement states.
struct SampledSolution {
    std::vector<double> timestamps;
    std::vector<std::vector<Measurement>> states; // one inner vector per variable
    std::vector<std::string> labels;
};

inline DomainPayload solution_payload(SampledSolution sol) {
    for (const auto& var : sol.states)
        if (var.size() != sol.timestamps.size())
            throw LengthMismatch("variable states", var.size(), "timestamps",
                                 sol.timestamps.size());
    return {"SampledSolution", "", std::any(std::move(sol))};
}

namespace detail {

/// Type recipe: elementwise split of a Measurement column into plain
/// values plus a forced yerror channel.
inline std::vector<RecipeOutput> measurement_recipe(const SeriesSpec& s) {
    const auto& ms = std::any_cast<const std::vector<Measurement>&>(s.payload->value);
    DataColumn y, err;
    y.values.reserve(ms.size());
    err.values.reserve(ms.size());
    for (const auto& m : ms) {
        y.values.push_back(m.value);
        err.values.push_back(m.uncertainty);
    }
    RecipeOutput out;
    out.y = std::move(y);
    out.yerror = std::move(err);
    return {out};
}

/// User recipe: one child per solution variable, re-dispatchable as a
/// Measurement vector with the solution timestamps as x.
inline std::vector<RecipeOutput> solution_recipe(const SeriesSpec& s) {
    const auto& sol = std::any_cast<const SampledSolution&>(s.payload->value);
    std::vector<RecipeOutput> outs;
    for (std::size_t v = 0; v < sol.states.size(); ++v) {
        RecipeOutput out;
        out.payload = measurement_payload(sol.states[v]);
        out.x = DataColumn{sol.timestamps, {}};
        if (v < sol.labels.size())
            out.directives.push_back(fallback("label", AttrValue::text(sol.labels[v])));
        outs.push_back(std::move(out));
    }
    return outs;
}

} // namespace detail

inline void register_demo_recipes(RecipeRegistry& reg) {
    reg.register_recipe({RecipeKind::TypeRecipe, "Measurement", detail::measurement_recipe});
    reg.register_recipe({RecipeKind::UserRecipe, "SampledSolution", detail::solution_recipe});
}

} // namespace plotkit
