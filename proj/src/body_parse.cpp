#include "rolemine/body_parse.hpp"

#include <algorithm>
#include <cctype>

namespace rolemine {

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

// GitHub login characters: alphanumeric and hyphen.
bool is_login_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

long long count_codepoints(std::string_view s) {
    long long n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

} // namespace

BodyFacts parse_body(std::string_view body,
                     const std::set<std::string>& known_logins,
                     std::string_view host) {
    BodyFacts facts;
    facts.length = count_codepoints(body);
    if (body.empty()) return facts;

    std::set<std::string> known_lower;
    for (const auto& l : known_logins) known_lower.insert(lower(l));

    const std::string issue_url = "https://" + std::string(host) + "/";

    for (size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (c == '@') {
            if (i > 0 && is_word_char(body[i - 1])) continue;
            size_t j = i + 1;
            while (j < body.size() && is_login_char(body[j])) ++j;
            if (j == i + 1) continue;
            std::string login(body.substr(i + 1, j - i - 1));
            if (known_lower.count(lower(login))) {
                facts.mentions.push_back(std::move(login));
            }
            i = j - 1;
        } else if (c == '#') {
            if (i > 0 && is_word_char(body[i - 1])) continue;
            size_t j = i + 1;
            while (j < body.size() &&
                   std::isdigit(static_cast<unsigned char>(body[j]))) {
                ++j;
            }
            if (j > i + 1) {
                ++facts.references;
                i = j - 1;
            }
        } else if (c == 'h' && body.compare(i, issue_url.size(), issue_url) == 0) {
            // https://host/owner/repo/{issues|pull}/N
            size_t j = i + issue_url.size();
            int segment = 0;
            bool is_ref_path = false;
            size_t seg_start = j;
            while (j <= body.size()) {
                if (j == body.size() || body[j] == '/' || body[j] == '#' ||
                    std::isspace(static_cast<unsigned char>(body[j]))) {
                    std::string_view seg = body.substr(seg_start, j - seg_start);
                    if (segment == 2) {
                        if (seg != "issues" && seg != "pull") break;
                    } else if (segment == 3) {
                        is_ref_path = !seg.empty() &&
                                      std::all_of(seg.begin(), seg.end(), [](char d) {
                                          return std::isdigit(
                                              static_cast<unsigned char>(d));
                                      });
                        break;
                    }
                    if (j == body.size() || body[j] != '/') break;
                    ++segment;
                    seg_start = j + 1;
                }
                ++j;
            }
            if (is_ref_path) {
                ++facts.references;
                i = j - 1;
            }
        }
    }
    return facts;
}

} // namespace rolemine
