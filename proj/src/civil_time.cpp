#include "rolemine/civil_time.hpp"

#include "rolemine/errors.hpp"

#include <charconv>
#include <cstdio>

namespace rolemine {

namespace {

bool parse_int(std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilTime civil_from_seconds(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    const std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);

    CivilTime c;
    c.year = static_cast<int>(y + (m <= 2));
    c.month = static_cast<int>(m);
    c.day = static_cast<int>(d);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

std::int64_t seconds_from_civil(const CivilTime& c) {
    return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 +
           c.minute * 60 + c.second;
}

std::int64_t parse_iso8601_utc(std::string_view text) {
    CivilTime c;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-' ||
        !parse_int(text.substr(0, 4), c.year) ||
        !parse_int(text.substr(5, 2), c.month) ||
        !parse_int(text.substr(8, 2), c.day)) {
        throw Error("invalid ISO 8601 timestamp: " + std::string(text));
    }
    if (text.size() > 10) {
        if (text[10] != 'T' || text.size() < 20 || text[13] != ':' ||
            text[16] != ':' ||
            !parse_int(text.substr(11, 2), c.hour) ||
            !parse_int(text.substr(14, 2), c.minute) ||
            !parse_int(text.substr(17, 2), c.second)) {
            throw Error("invalid ISO 8601 timestamp: " + std::string(text));
        }
        std::string_view rest = text.substr(19);
        if (!rest.empty() && rest[0] == '.') {
            size_t i = 1;
            while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
            rest = rest.substr(i);
        }
        if (rest != "Z" && rest != "+00:00") {
            throw Error("expected UTC timestamp, got: " + std::string(text));
        }
    }
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour > 23 ||
        c.minute > 59 || c.second > 60) {
        throw Error("timestamp fields out of range: " + std::string(text));
    }
    return seconds_from_civil(c);
}

std::string format_iso8601_utc(std::int64_t t) {
    const CivilTime c = civil_from_seconds(t);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year,
                  c.month, c.day, c.hour, c.minute, c.second);
    return buf;
}

} // namespace rolemine
