#pragma once

#include <map>
#include <set>
#include <string>

#include "plotkit/warnings.hpp"

namespace plotkit {

struct CanonicalKey {
    std::string key;
    bool known = true;
};

/// Maps alternative attribute spellings to one canonical key.
/// Canonical keys map to themselves; lookup is always a single step.
class AliasTable {
public:
    void add_canonical(const std::string& key) {
        table_[key] = key;
        canonical_.insert(key);
    }

    void add_alias(const std::string& alias, const std::string& canonical) {
        add_canonical(canonical);
        table_[alias] = canonical;
    }

    bool is_canonical(const std::string& key) const { return canonical_.count(key) > 0; }

    /// Resolution order: exact hit; then the singular form if the key is a
    /// plural ("...s") of a known key or alias; otherwise the key itself,
    /// flagged unknown.
    CanonicalKey canonicalize(const std::string& key) const {
        auto it = table_.find(key);
        if (it != table_.end()) return {it->second, true};
        if (key.size() > 1 && key.back() == 's') {
            auto singular = table_.find(key.substr(0, key.size() - 1));
            if (singular != table_.end()) return {singular->second, true};
        }
        return {key, false};
    }

    /// Convenience form emitting a warning for unknown keys.
    std::string canonicalize_key(const std::string& key) const {
        CanonicalKey c = canonicalize(key);
        if (!c.known) warn("unknown attribute key: " + key);
        return c.key;
    }

private:
    std::map<std::string, std::string> table_;
    std::set<std::string> canonical_;
};

/// The shipped alias table. Extensible: grab a mutable reference at startup
/// to register further aliases before plotting begins.
inline AliasTable make_default_aliases() {
    AliasTable t;
    for (const char* key :
         {"seriescolor", "linecolor",  "fillcolor",   "markercolor", "linewidth",
          "marker",      "markersize", "label",       "seriestype",  "xlimits",
          "ylimits",     "zlimits",    "climits",     "xlabel",      "ylabel",
          "xscale",      "yscale",     "xticks",      "yticks",      "title",
          "legend",      "background", "size",        "dpi",         "window_title",
          "bins",        "bar_width",  "fillalpha",   "linealpha",   "markeralpha",
          "linestyle",   "subplot",    "text"})
        t.add_canonical(key);

    t.add_alias("c", "seriescolor");
    t.add_alias("color", "seriescolor");
    t.add_alias("colour", "seriescolor");
    t.add_alias("lc", "linecolor");
    t.add_alias("fc", "fillcolor");
    t.add_alias("mc", "markercolor");
    t.add_alias("lw", "linewidth");
    t.add_alias("width", "linewidth");
    t.add_alias("m", "marker");
    t.add_alias("markershape", "marker");
    t.add_alias("ms", "markersize");
    t.add_alias("lab", "label");
    t.add_alias("st", "seriestype");
    t.add_alias("t", "seriestype");
    t.add_alias("xlims", "xlimits");
    t.add_alias("xlim", "xlimits");
    t.add_alias("ylims", "ylimits");
    t.add_alias("ylim", "ylimits");
    t.add_alias("zlims", "zlimits");
    t.add_alias("zlim", "zlimits");
    t.add_alias("clims", "climits");
    t.add_alias("clim", "climits");
    t.add_alias("bg", "background");
    t.add_alias("ls", "linestyle");
    t.add_alias("windowtitle", "window_title");
    return t;
}

inline AliasTable& default_aliases() {
    static AliasTable table = make_default_aliases();
    return table;
}

/// Canonicalize against the shipped table.
inline std::string canonicalize_key(const std::string& key) {
    return default_aliases().canonicalize_key(key);
}

} // namespace plotkit
