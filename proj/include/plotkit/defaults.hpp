#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "plotkit/attr.hpp"
#include "plotkit/colors.hpp"
#include "plotkit/errors.hpp"
#include "plotkit/plot.hpp"

namespace plotkit {

/// A fallback for one attribute: either a constant or a reference to
/// another attribute's (already filled) value. Optionally conditioned on
/// the seriestype; conditioned rules beat unconditioned ones.
struct DefaultRule {
    std::string attribute;
    std::variant<AttrValue, std::string> fallback; // constant | referenced attribute
    std::optional<std::string> seriestype;
};

class DefaultRuleSet {
public:
    explicit DefaultRuleSet(std::vector<DefaultRule> rules) : rules_(std::move(rules)) {
        check_acyclic();
    }

    const std::vector<DefaultRule>& rules() const { return rules_; }

    /// Fill every Unset/absent rule attribute in `attrs`, resolving
    /// reference fallbacks transitively. User-set values are never touched.
    void fill(AttrMap& attrs, const std::string& seriestype) const {
        for (const auto& r : rules_)
            fill_one(attrs, seriestype, r.attribute, {});
        // Unset entries with no governing rule behave as absent.
        std::vector<std::string> dead;
        for (const auto& [k, v] : attrs)
            if (v.is_unset()) dead.push_back(k);
        for (const auto& k : dead) attrs.erase(k);
    }

private:
    const DefaultRule* pick(const std::string& attribute,
                            const std::string& seriestype) const {
        const DefaultRule* unconditioned = nullptr;
        for (const auto& r : rules_) {
            if (r.attribute != attribute) continue;
            if (r.seriestype) {
                if (*r.seriestype == seriestype) return &r;
            } else if (!unconditioned) {
                unconditioned = &r;
            }
        }
        return unconditioned;
    }

    void fill_one(AttrMap& attrs, const std::string& seriestype,
                  const std::string& attribute, std::set<std::string> chain) const {
        const AttrValue* present = attrs.find(attribute);
        if (present && !present->is_unset()) return;
        if (!chain.insert(attribute).second)
            throw CyclicDefault(attribute);
        const DefaultRule* r = pick(attribute, seriestype);
        if (!r) return;
        if (std::holds_alternative<AttrValue>(r->fallback)) {
            attrs.set(attribute, std::get<AttrValue>(r->fallback));
        } else {
            const std::string& ref = std::get<std::string>(r->fallback);
            fill_one(attrs, seriestype, ref, chain);
            AttrValue v = attrs.get(ref);
            if (!v.is_unset()) attrs.set(attribute, v);
        }
    }

    void check_acyclic() const {
        // Cycles in the reference graph are a configuration bug; fail fast.
        for (const auto& r : rules_) {
            std::set<std::string> seen{r.attribute};
            const DefaultRule* cur = &r;
            std::string chain = r.attribute;
            while (cur && std::holds_alternative<std::string>(cur->fallback)) {
                const std::string& next = std::get<std::string>(cur->fallback);
                chain += " -> " + next;
                if (!seen.insert(next).second) throw CyclicDefault(chain);
                const DefaultRule* follow = nullptr;
                for (const auto& cand : rules_)
                    if (cand.attribute == next) {
                        follow = &cand;
                        break;
                    }
                cur = follow;
            }
        }
    }

    std::vector<DefaultRule> rules_;
};

inline const DefaultRuleSet& series_default_rules() {
    static const DefaultRuleSet set{{
        {"seriescolor", AttrValue::auto_(), std::nullopt},
        {"linecolor", AttrValue::name("black"), std::string("bar")},
        {"linecolor", std::string("seriescolor"), std::nullopt},
        {"fillcolor", std::string("seriescolor"), std::nullopt},
        {"markercolor", std::string("seriescolor"), std::nullopt},
        {"linewidth", AttrValue::number(1.0), std::nullopt},
        {"markersize", AttrValue::number(4.0), std::nullopt},
        {"marker", AttrValue::name("circle"), std::nullopt},
        {"linestyle", AttrValue::name("solid"), std::nullopt},
        {"label", AttrValue::text(""), std::nullopt},
    }};
    return set;
}

inline const DefaultRuleSet& plot_default_rules() {
    static const DefaultRuleSet set{{
        {"size", AttrValue::list({AttrValue::integer(600), AttrValue::integer(400)}),
         std::nullopt},
        {"dpi", AttrValue::integer(96), std::nullopt},
        {"window_title", AttrValue::text(""), std::nullopt},
    }};
    return set;
}

inline const DefaultRuleSet& subplot_default_rules() {
    static const DefaultRuleSet set{{
        {"title", AttrValue::text(""), std::nullopt},
        {"legend", AttrValue::name("topright"), std::nullopt},
        {"background", AttrValue::color({1, 1, 1, 1}), std::nullopt},
    }};
    return set;
}

inline void drop_unset(AttrMap& attrs) {
    std::vector<std::string> dead;
    for (const auto& [k, v] : attrs)
        if (v.is_unset()) dead.push_back(k);
    for (const auto& k : dead) attrs.erase(k);
}

inline bool is_color_attr(const std::string& key) {
    return key == "seriescolor" || key == "linecolor" || key == "fillcolor" ||
           key == "markercolor";
}

/// Apply the hierarchical default system to every attribute level, then
/// resolve color attributes to concrete colors (palette lookups use the
/// series' 1-based position within its subplot). Idempotent; explicitly
/// set values are never overwritten.
inline PlotSpec apply_defaults(PlotSpec spec) {
    plot_default_rules().fill(spec.attrs, "");
    for (auto& sp : spec.subplots) {
        subplot_default_rules().fill(sp.attrs, "");
        // Axis attr maps carry no rule-governed keys; drop stray Unsets.
        drop_unset(sp.xaxis.attrs);
        drop_unset(sp.yaxis.attrs);
    }
    const Palette& palette = default_palette();
    for (auto& sp : spec.subplots) {
        int position = 0;
        for (int idx : sp.series_indices) {
            ++position;
            SeriesSpec& s = spec.series[static_cast<std::size_t>(idx)];
            // Domain-payload series are still awaiting recipe dispatch;
            // filling defaults now would shadow the fallbacks their
            // recipes emit (e.g. per-variable labels). They get defaults
            // after expansion, when the pipeline runs this pass again.
            if (s.payload) continue;
            series_default_rules().fill(s.attrs, s.seriestype);
            for (const char* key :
                 {"seriescolor", "linecolor", "fillcolor", "markercolor"}) {
                const AttrValue* v = s.attrs.find(key);
                if (v && v->kind() != AttrValue::Kind::Color)
                    s.attrs.set(key, AttrValue::color(resolve_color(*v, palette, position)));
            }
        }
    }
    return spec;
}

} // namespace plotkit
