#include "rolemine/time_window.hpp"

#include "rolemine/errors.hpp"

#include <string>

namespace rolemine {

namespace {

bool on_quarter_boundary(const CivilTime& c) {
    return (c.month == 1 || c.month == 4 || c.month == 7 || c.month == 10) &&
           c.day == 1 && c.hour == 0 && c.minute == 0 && c.second == 0;
}

// Quarters since year 0 for the quarter containing the instant.
std::int64_t absolute_quarter(std::int64_t ts) {
    const CivilTime c = civil_from_seconds(ts);
    return static_cast<std::int64_t>(c.year) * 4 + (c.month - 1) / 3;
}

} // namespace

TimeWindow::TimeWindow(std::int64_t start_epoch, std::int64_t end_epoch)
    : start_(start_epoch), end_(end_epoch) {
    if (start_ >= end_) {
        throw ConfigError("time window start must precede end");
    }
    if (!on_quarter_boundary(civil_from_seconds(start_)) ||
        !on_quarter_boundary(civil_from_seconds(end_))) {
        throw ConfigError("time window endpoints must be quarter boundaries "
                          "(Jan/Apr/Jul/Oct 1st, midnight UTC)");
    }
}

TimeWindow TimeWindow::from_iso(std::string_view start, std::string_view end) {
    return TimeWindow(parse_iso8601_utc(start), parse_iso8601_utc(end));
}

int TimeWindow::periods() const {
    return static_cast<int>(absolute_quarter(end_) - absolute_quarter(start_));
}

int TimeWindow::period_of(std::int64_t ts) const {
    if (!contains(ts)) {
        throw OutOfWindowError("timestamp " + format_iso8601_utc(ts) +
                               " outside window [" + format_iso8601_utc(start_) +
                               ", " + format_iso8601_utc(end_) + ")");
    }
    return static_cast<int>(absolute_quarter(ts) - absolute_quarter(start_)) + 1;
}

} // namespace rolemine
