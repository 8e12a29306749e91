#pragma once

#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace gifsent {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Minimal stderr logger. No timestamps so that captured logs diff cleanly
/// between runs.
class Log {
public:
    static LogLevel& level() {
        static LogLevel lvl = LogLevel::Warn;
        return lvl;
    }

    static void set_level(LogLevel lvl) { level() = lvl; }

    static LogLevel parse_level(const std::string& name) {
        if (name == "error") return LogLevel::Error;
        if (name == "warn") return LogLevel::Warn;
        if (name == "info") return LogLevel::Info;
        if (name == "debug") return LogLevel::Debug;
        throw std::invalid_argument("unknown log level: " + name);
    }

    template <typename... Args>
    static void write(LogLevel lvl, Args&&... args) {
        if (lvl > level()) return;
        static std::mutex mu;
        std::ostringstream os;
        os << prefix(lvl);
        (os << ... << args);
        os << '\n';
        std::lock_guard<std::mutex> lock(mu);
        std::cerr << os.str();
    }

    template <typename... Args>
    static void error(Args&&... args) { write(LogLevel::Error, std::forward<Args>(args)...); }
    template <typename... Args>
    static void warn(Args&&... args) { write(LogLevel::Warn, std::forward<Args>(args)...); }
    template <typename... Args>
    static void info(Args&&... args) { write(LogLevel::Info, std::forward<Args>(args)...); }
    template <typename... Args>
    static void debug(Args&&... args) { write(LogLevel::Debug, std::forward<Args>(args)...); }

private:
    static const char* prefix(LogLevel lvl) {
        switch (lvl) {
            case LogLevel::Error: return "[error] ";
            case LogLevel::Warn: return "[warn] ";
            case LogLevel::Info: return "[info] ";
            default: return "[debug] ";
        }
    }
};

} // namespace gifsent
