#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plotkit/attr.hpp"
#include "plotkit/data.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/plot.hpp"
#include "plotkit/warnings.hpp"

// Recipe-author surface. This header depends only on the plot model; a
// recipe author never sees layout or backend code.

namespace plotkit {

enum class RecipeKind { UserRecipe, TypeRecipe, PlotRecipe, SeriesRecipe };

enum class DirectiveMode { Force, Default };

/// An attribute assignment emitted by a recipe. Force overrides any
/// present value; Default yields to call-site values.
struct AttrDirective {
    std::string key; // canonical
    AttrValue value;
    DirectiveMode mode = DirectiveMode::Default;
};

inline AttrDirective force(std::string key, AttrValue v) {
    return {std::move(key), std::move(v), DirectiveMode::Force};
}
inline AttrDirective fallback(std::string key, AttrValue v) {
    return {std::move(key), std::move(v), DirectiveMode::Default};
}

/// Force: attrs[key] = value unconditionally.
/// Default: only when the key is absent or Unset.
inline AttrMap apply_attr_directive(AttrMap attrs, const AttrDirective& d) {
    if (d.mode == DirectiveMode::Force) {
        attrs.set(d.key, d.value);
    } else {
        const AttrValue* present = attrs.find(d.key);
        if (!present || present->is_unset()) attrs.set(d.key, d.value);
    }
    return attrs;
}

/// One child produced by a recipe expansion. Unset channels inherit the
/// parent series' channels; a payload makes the child re-dispatchable.
struct RecipeOutput {
    std::optional<DomainPayload> payload;
    std::optional<DataColumn> x, y, z, yerror, xerror;
    std::optional<GridData> grid;
    bool clear_payload = true; // children drop the parent's payload unless re-set
    std::vector<AttrDirective> directives;
};

/// Matcher semantics by kind: Type/User recipes match a domain type tag
/// (element type vs whole container); Plot/Series recipes match a
/// seriestype name. Transforms must be pure.
struct Recipe {
    RecipeKind kind = RecipeKind::SeriesRecipe;
    std::string matcher;
    std::function<std::vector<RecipeOutput>(const SeriesSpec&)> transform;
};

inline constexpr int kRecipeRecursionLimit = 64;

class RecipeRegistry {
public:
    RecipeRegistry()
        : primitives_{"path", "scatter", "shape", "heatmap-grid", "text-annotation"} {}

    void register_recipe(Recipe r) {
        auto& table = table_for(r.kind);
        std::string key = r.matcher;
        if (table.count(key))
            warn("replacing existing " + kind_name(r.kind) + " for '" + key + "'");
        table[key] = std::move(r);
    }

    bool is_primitive(const std::string& seriestype) const {
        return primitives_.count(seriestype) > 0;
    }
    const std::set<std::string>& primitives() const { return primitives_; }

    /// A seriestype is usable if it is drawable directly or expandable.
    bool has_seriestype(const std::string& seriestype) const {
        return is_primitive(seriestype) || plot_.count(seriestype) ||
               series_.count(seriestype);
    }

    const Recipe* find(RecipeKind kind, const std::string& matcher) const {
        const auto& table = table_for(kind);
        auto it = table.find(matcher);
        return it == table.end() ? nullptr : &it->second;
    }

    /// Lookup order for a series pending expansion: type recipe for the
    /// payload element type, user recipe for the container, then plot
    /// recipe and series recipe for the seriestype.
    const Recipe* dispatch(const SeriesSpec& s) const {
        if (s.payload) {
            if (!s.payload->element_tag.empty())
                if (const Recipe* r = find(RecipeKind::TypeRecipe, s.payload->element_tag))
                    return r;
            if (const Recipe* r = find(RecipeKind::UserRecipe, s.payload->type_tag))
                return r;
            return nullptr;
        }
        if (is_primitive(s.seriestype)) return nullptr;
        if (const Recipe* r = find(RecipeKind::PlotRecipe, s.seriestype)) return r;
        return find(RecipeKind::SeriesRecipe, s.seriestype);
    }

private:
    static std::string kind_name(RecipeKind k) {
        switch (k) {
        case RecipeKind::UserRecipe: return "user recipe";
        case RecipeKind::TypeRecipe: return "type recipe";
        case RecipeKind::PlotRecipe: return "plot recipe";
        default: return "series recipe";
        }
    }

    std::map<std::string, Recipe>& table_for(RecipeKind k) {
        switch (k) {
        case RecipeKind::UserRecipe: return user_;
        case RecipeKind::TypeRecipe: return type_;
        case RecipeKind::PlotRecipe: return plot_;
        default: return series_;
        }
    }
    const std::map<std::string, Recipe>& table_for(RecipeKind k) const {
        return const_cast<RecipeRegistry*>(this)->table_for(k);
    }

    std::map<std::string, Recipe> user_, type_, plot_, series_;
    std::set<std::string> primitives_;
};

namespace detail {

inline std::string join_chain(const std::vector<std::string>& chain) {
    std::string out;
    for (const auto& c : chain) {
        if (!out.empty()) out += " -> ";
        out += c;
    }
    return out;
}

/// Directive application with outer-pin semantics: a Force applied by an
/// outer recipe pins the key; an inner Force on a pinned key is demoted
/// to Default. The seriestype route is exempt from pinning: every recipe
/// in a chain must be able to retype its own children or expansion could
/// never reach a primitive.
inline void apply_directives(SeriesSpec& s, const std::vector<AttrDirective>& ds,
                             std::set<std::string>& pinned) {
    for (const auto& d : ds) {
        if (d.key == "seriestype") {
            if (d.mode == DirectiveMode::Force) s.seriestype = d.value.as_name();
            continue;
        }
        bool demote = d.mode == DirectiveMode::Force && pinned.count(d.key);
        AttrDirective eff = d;
        if (demote) eff.mode = DirectiveMode::Default;
        s.attrs = apply_attr_directive(std::move(s.attrs), eff);
        if (d.mode == DirectiveMode::Force && !demote) pinned.insert(d.key);
    }
}

inline void expand_series(const RecipeRegistry& reg, const SeriesSpec& s, int depth,
                          std::set<std::string> pinned, std::vector<std::string> chain,
                          std::vector<SeriesSpec>& out) {
    const Recipe* recipe = reg.dispatch(s);
    if (!recipe) {
        if (s.payload)
            throw NoRecipeFound("domain type '" + s.payload->type_tag + "'");
        if (!reg.is_primitive(s.seriestype))
            throw NoRecipeFound("seriestype '" + s.seriestype + "'");
        SeriesSpec done = s;
        if (done.y && !done.x) done.x = iota_column(done.y->size());
        out.push_back(std::move(done));
        return;
    }
    if (depth >= kRecipeRecursionLimit)
        throw RecursionLimitExceeded(kRecipeRecursionLimit, join_chain(chain));
    chain.push_back(recipe->matcher);

    std::vector<RecipeOutput> children = recipe->transform(s);
    for (const auto& c : children) {
        SeriesSpec child = s;
        if (c.clear_payload) child.payload.reset();
        if (c.payload) child.payload = c.payload;
        if (c.x) child.x = c.x;
        if (c.y) child.y = c.y;
        if (c.z) child.z = c.z;
        if (c.yerror) child.yerror = c.yerror;
        if (c.xerror) child.xerror = c.xerror;
        if (c.grid) child.grid = c.grid;
        std::set<std::string> child_pinned = pinned;
        apply_directives(child, c.directives, child_pinned);
        expand_series(reg, child, depth + 1, std::move(child_pinned), chain, out);
    }
}

} // namespace detail

/// Recursively expand every series until all carry primitive seriestypes
/// and plain data columns. Pure: returns a new spec.
inline PlotSpec apply_recipes(const RecipeRegistry& reg, const PlotSpec& spec) {
    PlotSpec out = spec;
    out.series.clear();
    for (auto& sp : out.subplots) sp.series_indices.clear();

    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const SeriesSpec& s = spec.series[i];
        std::vector<SeriesSpec> expanded;
        detail::expand_series(reg, s, 0, {}, {}, expanded);
        for (auto& e : expanded) {
            int idx = static_cast<int>(out.series.size());
            int subplot = e.subplot_index;
            if (subplot < 0 || subplot >= static_cast<int>(out.subplots.size()))
                subplot = 0;
            out.subplots[static_cast<std::size_t>(subplot)].series_indices.push_back(idx);
            out.series.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace plotkit
