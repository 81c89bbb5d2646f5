#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace starworlds {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Controlled by STARWORLDS_LOG={error|warn|info|debug}; default warn.
inline LogLevel log_level() {
    static LogLevel lvl = [] {
        const char* env = std::getenv("STARWORLDS_LOG");
        if (!env) return LogLevel::Warn;
        if (!std::strcmp(env, "error")) return LogLevel::Error;
        if (!std::strcmp(env, "info")) return LogLevel::Info;
        if (!std::strcmp(env, "debug")) return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return lvl;
}

template <typename... Args>
void log(LogLevel lvl, const char* fmt, Args... args) {
    if (lvl > log_level()) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "[starworlds:%s] ", names[int(lvl)]);
    std::fprintf(stderr, fmt, args...);
    std::fprintf(stderr, "\n");
}

inline void log(LogLevel lvl, const char* msg) { log(lvl, "%s", msg); }

}  // namespace starworlds
