#pragma once

#include <iostream>
#include <mutex>
#include <string>

namespace rolemine {

namespace detail {
inline std::mutex& log_mutex() {
    static std::mutex m;
    return m;
}
inline bool& verbose_flag() {
    static bool v = false;
    return v;
}
} // namespace detail

inline void set_verbose(bool v) { detail::verbose_flag() = v; }

inline void log_warn(const std::string& msg) {
    std::lock_guard lock(detail::log_mutex());
    std::cerr << "[warn] " << msg << '\n';
}

inline void log_info(const std::string& msg) {
    if (!detail::verbose_flag()) return;
    std::lock_guard lock(detail::log_mutex());
    std::cerr << "[info] " << msg << '\n';
}

} // namespace rolemine
