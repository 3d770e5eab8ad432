#pragma once

#include <stdexcept>
#include <string>

namespace plotkit {

struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnknownColorName : std::invalid_argument {
    explicit UnknownColorName(const std::string& name)
        : std::invalid_argument("unknown color name: " + name) {}
};

struct UnknownSeriestype : std::invalid_argument {
    explicit UnknownSeriestype(const std::string& name)
        : std::invalid_argument("unknown seriestype: " + name) {}
};

struct CyclicDefault : std::logic_error {
    explicit CyclicDefault(const std::string& chain)
        : std::logic_error("cyclic default rule: " + chain) {}
};

struct LengthMismatch : std::invalid_argument {
    LengthMismatch(const std::string& what_a, std::size_t len_a,
                   const std::string& what_b, std::size_t len_b)
        : std::invalid_argument("length mismatch: " + what_a + " has " +
                                std::to_string(len_a) + " entries but " + what_b +
                                " has " + std::to_string(len_b)) {}
};

struct InvalidRange : std::invalid_argument {
    InvalidRange(double lo, double hi)
        : std::invalid_argument("invalid range: lo=" + std::to_string(lo) +
                                " must be < hi=" + std::to_string(hi)) {}
};

struct EmptyData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoRecipeFound : std::runtime_error {
    explicit NoRecipeFound(const std::string& what_for)
        : std::runtime_error("no recipe found for " + what_for) {}
};

struct RecursionLimitExceeded : std::runtime_error {
    RecursionLimitExceeded(int depth, const std::string& chain)
        : std::runtime_error("recipe recursion limit (" + std::to_string(depth) +
                             ") exceeded; expansion chain: " + chain) {}
};

struct UnresolvedSpec : std::logic_error {
    UnresolvedSpec() : std::logic_error("plot spec must be resolved before lowering") {}
};

struct VersionMismatch : std::runtime_error {
    explicit VersionMismatch(const std::string& got)
        : std::runtime_error("unsupported plot container version: " + got) {}
};

struct MalformedContainer : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadAttrAccess : std::logic_error {
    explicit BadAttrAccess(const std::string& wanted)
        : std::logic_error("attribute value does not hold " + wanted) {}
};

} // namespace plotkit
