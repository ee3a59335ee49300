#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rolemine {

// Proleptic Gregorian calendar date/time, always UTC.
struct CivilTime {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;
};

// Days since 1970-01-01 for a civil date.
std::int64_t days_from_civil(int year, int month, int day);

CivilTime civil_from_seconds(std::int64_t epoch_seconds);
std::int64_t seconds_from_civil(const CivilTime& c);

// Accepts "YYYY-MM-DDThh:mm:ssZ" (optional fractional seconds, dropped)
// and bare dates "YYYY-MM-DD" (midnight). Throws rolemine::Error on
// anything else.
std::int64_t parse_iso8601_utc(std::string_view text);

// "YYYY-MM-DDThh:mm:ssZ"
std::string format_iso8601_utc(std::int64_t epoch_seconds);

} // namespace rolemine
