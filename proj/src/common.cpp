#include "mvstream/common.hpp"

#include <cstring>
#include <iostream>

namespace mvstream {

std::atomic<std::uint64_t>& quality_clamp_count() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("MVSTREAM_LOG");
        if (env == nullptr) return LogLevel::quiet;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        if (std::strcmp(env, "info") == 0) return LogLevel::info;
        return LogLevel::quiet;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[mvstream] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << "[mvstream:debug] " << msg << "\n";
}

}  // namespace mvstream
