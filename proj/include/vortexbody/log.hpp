#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace vortexbody::log {

enum class Level { quiet = 0, info = 1, debug = 2 };

inline Level level() {
    static Level lv = [] {
        const char* env = std::getenv("VORTEXBODY_LOG");
        if (!env) return Level::info;
        if (std::strcmp(env, "quiet") == 0) return Level::quiet;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        return Level::info;
    }();
    return lv;
}

template <typename... Args>
void info(const char* fmt, Args... args) {
    if (level() >= Level::info) {
        std::fprintf(stderr, "[vortex-body] ");
        std::fprintf(stderr, fmt, args...);
        std::fprintf(stderr, "\n");
    }
}

template <typename... Args>
void debug(const char* fmt, Args... args) {
    if (level() >= Level::debug) {
        std::fprintf(stderr, "[vortex-body:debug] ");
        std::fprintf(stderr, fmt, args...);
        std::fprintf(stderr, "\n");
    }
}

} // namespace vortexbody::log
