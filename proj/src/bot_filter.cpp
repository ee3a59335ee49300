#include "rolemine/bot_filter.hpp"

#include <algorithm>
#include <cctype>

namespace rolemine {

namespace {

bool ends_with_bot_suffix(const std::string& login) {
    static constexpr std::string_view suffix = "[bot]";
    if (login.size() < suffix.size()) return false;
    const auto tail = login.substr(login.size() - suffix.size());
    return std::equal(tail.begin(), tail.end(), suffix.begin(), suffix.end(),
                      [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) == b;
                      });
}

} // namespace

bool is_bot(const std::string& login, bool api_bot_type,
            const std::set<std::string>& denylist) {
    return api_bot_type || ends_with_bot_suffix(login) || denylist.count(login) > 0;
}

std::vector<ActionEvent> filter_bots(std::vector<ActionEvent> events,
                                     const std::set<std::string>& denylist) {
    std::erase_if(events, [&](const ActionEvent& e) {
        return is_bot(e.actor, e.actor_bot, denylist);
    });
    return events;
}

} // namespace rolemine
