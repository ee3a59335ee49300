#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rolemine {

struct BodyFacts {
    std::vector<std::string> mentions; // one entry per occurrence
    int references = 0;
    long long length = 0; // Unicode code points
};

/// Extracts "@login" mentions (word-boundary delimited, login must be in
/// known_logins; GitHub logins compare case-insensitively), "#123" issue
/// references plus full issue/PR URLs on `host`, and the body length in
/// code points.
BodyFacts parse_body(std::string_view body,
                     const std::set<std::string>& known_logins,
                     std::string_view host = "github.com");

} // namespace rolemine
