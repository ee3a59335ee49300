#pragma once

#include "rolemine/civil_time.hpp"

#include <cstdint>
#include <string_view>

namespace rolemine {

/// Half-open observation window [start, end) split into calendar quarters.
/// Both endpoints must fall on quarter boundaries (Jan/Apr/Jul/Oct 1st,
/// 00:00:00 UTC). Period indices are 1-based.
class TimeWindow {
public:
    TimeWindow(std::int64_t start_epoch, std::int64_t end_epoch);

    static TimeWindow from_iso(std::string_view start, std::string_view end);

    std::int64_t start() const { return start_; }
    std::int64_t end() const { return end_; }

    /// Number of whole quarters in [start, end).
    int periods() const;

    /// 1-based quarter ordinal of ts relative to the window start.
    /// Throws OutOfWindowError when ts is outside [start, end).
    int period_of(std::int64_t ts) const;

    bool contains(std::int64_t ts) const { return ts >= start_ && ts < end_; }

private:
    std::int64_t start_;
    std::int64_t end_;
};

} // namespace rolemine
