#pragma once

#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace plotkit {

// Non-fatal diagnostics (unknown attribute keys, recipe re-registration)
// go through a swappable sink so tests can capture them.
using WarningSink = std::function<void(const std::string&)>;

inline WarningSink& warning_sink() {
    static WarningSink sink = [](const std::string& msg) {
        std::cerr << "[plotkit] warning: " << msg << '\n';
    };
    return sink;
}

inline void warn(const std::string& msg) { warning_sink()(msg); }

// RAII capture of warnings, for tests.
class WarningCapture {
public:
    WarningCapture() : previous_(warning_sink()) {
        warning_sink() = [this](const std::string& m) { messages.push_back(m); };
    }
    ~WarningCapture() { warning_sink() = previous_; }
    WarningCapture(const WarningCapture&) = delete;
    WarningCapture& operator=(const WarningCapture&) = delete;

    std::vector<std::string> messages;

private:
    WarningSink previous_;
};

} // namespace plotkit
