#pragma once

#include <atomic>

namespace plotkit {

/// Per-backend invocation counters. Construction-side code must never
/// touch a backend, which tests assert through these.
struct BackendCounters {
    std::atomic<long> svg{0};
    std::atomic<long> unicode{0};
    std::atomic<long> plotly{0};
    std::atomic<long> serialize{0};

    long total() const { return svg + unicode + plotly + serialize; }
    void reset() { svg = unicode = plotly = serialize = 0; }
};

inline BackendCounters& backend_counters() {
    static BackendCounters c;
    return c;
}

} // namespace plotkit
