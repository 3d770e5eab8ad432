#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "plotkit/errors.hpp"

namespace plotkit {

/// RGBA color, each channel in [0,1].
struct ColorSpec {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    double a = 1.0;

    friend bool operator==(const ColorSpec&, const ColorSpec&) = default;
};

/// Tagged attribute value. Auto asks the pipeline to infer a value,
/// Unset falls through to the default system; the two are distinct.
class AttrValue {
public:
    enum class Kind { Number, Int, Text, Color, Name, List, Bool, Auto, Unset };

    AttrValue() : value_(UnsetTag{}) {}

    static AttrValue number(double v) { return AttrValue(v); }
    static AttrValue integer(std::int64_t v) { return AttrValue(v); }
    static AttrValue text(std::string v) { return AttrValue(TextTag{std::move(v)}); }
    static AttrValue color(ColorSpec c) { return AttrValue(c); }
    static AttrValue name(std::string v) { return AttrValue(NameTag{std::move(v)}); }
    static AttrValue boolean(bool v) { return AttrValue(v); }
    static AttrValue auto_() { return AttrValue(AutoTag{}); }
    static AttrValue unset() { return AttrValue(); }

    static AttrValue list(std::vector<AttrValue> items) {
        // Lists are homogeneous in variant tag.
        for (std::size_t i = 1; i < items.size(); ++i) {
            if (items[i].kind() != items[0].kind())
                throw ArgumentError("attribute lists must be homogeneous");
        }
        return AttrValue(ListTag{std::make_shared<std::vector<AttrValue>>(std::move(items))});
    }

    Kind kind() const { return static_cast<Kind>(value_.index()); }

    bool is_unset() const { return kind() == Kind::Unset; }
    bool is_auto() const { return kind() == Kind::Auto; }

    double as_number() const {
        if (kind() == Kind::Number) return std::get<double>(value_);
        if (kind() == Kind::Int) return static_cast<double>(std::get<std::int64_t>(value_));
        throw BadAttrAccess("a number");
    }
    std::int64_t as_int() const {
        if (kind() != Kind::Int) throw BadAttrAccess("an integer");
        return std::get<std::int64_t>(value_);
    }
    const std::string& as_text() const {
        if (kind() != Kind::Text) throw BadAttrAccess("text");
        return std::get<TextTag>(value_).value;
    }
    const ColorSpec& as_color() const {
        if (kind() != Kind::Color) throw BadAttrAccess("a color");
        return std::get<ColorSpec>(value_);
    }
    const std::string& as_name() const {
        if (kind() != Kind::Name) throw BadAttrAccess("a name");
        return std::get<NameTag>(value_).value;
    }
    const std::vector<AttrValue>& as_list() const {
        if (kind() != Kind::List) throw BadAttrAccess("a list");
        return *std::get<ListTag>(value_).items;
    }
    bool as_bool() const {
        if (kind() != Kind::Bool) throw BadAttrAccess("a bool");
        return std::get<bool>(value_);
    }

    friend bool operator==(const AttrValue& a, const AttrValue& b) {
        return a.value_ == b.value_;
    }

private:
    struct TextTag {
        std::string value;
        friend bool operator==(const TextTag&, const TextTag&) = default;
    };
    struct NameTag {
        std::string value;
        friend bool operator==(const NameTag&, const NameTag&) = default;
    };
    // Shared-pointer indirection keeps the variant's special members
    // instantiable while AttrValue is still an incomplete type. Lists are
    // immutable after construction, so sharing the buffer is safe.
    struct ListTag {
        std::shared_ptr<const std::vector<AttrValue>> items;
        friend bool operator==(const ListTag& a, const ListTag& b) {
            return a.items == b.items || *a.items == *b.items;
        }
    };
    struct AutoTag {
        friend bool operator==(const AutoTag&, const AutoTag&) = default;
    };
    struct UnsetTag {
        friend bool operator==(const UnsetTag&, const UnsetTag&) = default;
    };

    using Storage = std::variant<double, std::int64_t, TextTag, ColorSpec, NameTag,
                                 ListTag, bool, AutoTag, UnsetTag>;

    template <typename T>
    explicit AttrValue(T&& v) : value_(std::forward<T>(v)) {}

    Storage value_;
};

/// Insertion-ordered map from canonical attribute key to AttrValue.
/// Canonicality of keys is the caller's contract; the public plot API
/// canonicalizes before storing.
class AttrMap {
public:
    using Entry = std::pair<std::string, AttrValue>;
    using const_iterator = std::vector<Entry>::const_iterator;

    void set(const std::string& key, AttrValue value) {
        for (auto& e : entries_) {
            if (e.first == key) {
                e.second = std::move(value);
                return;
            }
        }
        entries_.emplace_back(key, std::move(value));
    }

    bool contains(const std::string& key) const { return find(key) != nullptr; }

    const AttrValue* find(const std::string& key) const {
        for (const auto& e : entries_)
            if (e.first == key) return &e.second;
        return nullptr;
    }

    /// Unset when absent.
    AttrValue get(const std::string& key) const {
        const AttrValue* v = find(key);
        return v ? *v : AttrValue::unset();
    }

    AttrValue get_or(const std::string& key, const AttrValue& fallback) const {
        const AttrValue* v = find(key);
        return (v && !v->is_unset()) ? *v : fallback;
    }

    void erase(const std::string& key) {
        entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                      [&](const Entry& e) { return e.first == key; }),
                       entries_.end());
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const_iterator begin() const { return entries_.begin(); }
    const_iterator end() const { return entries_.end(); }

    /// Key-set equality with per-key value equality; insertion order ignored.
    friend bool operator==(const AttrMap& a, const AttrMap& b) {
        if (a.size() != b.size()) return false;
        for (const auto& [k, v] : a.entries_) {
            const AttrValue* other = b.find(k);
            if (!other || !(*other == v)) return false;
        }
        return true;
    }

private:
    std::vector<Entry> entries_;
};

} // namespace plotkit
