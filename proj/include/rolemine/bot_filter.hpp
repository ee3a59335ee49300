#pragma once

#include "rolemine/event.hpp"

#include <set>
#include <string>
#include <vector>

namespace rolemine {

/// True when the login belongs to an automated account: API account type
/// Bot, a "[bot]" login suffix, or membership in the configured denylist.
bool is_bot(const std::string& login, bool api_bot_type,
            const std::set<std::string>& denylist);

/// Pure filter: drops bot events, keeps everything else untouched and in
/// order.
std::vector<ActionEvent> filter_bots(std::vector<ActionEvent> events,
                                     const std::set<std::string>& denylist);

} // namespace rolemine
