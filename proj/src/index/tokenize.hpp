#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rumortrack::index {

// Lowercases canonical text and splits it on whitespace and on '.', ',' and
// '?'. Tokens made only of '#' are dropped; a leading '#' stays on hashtag
// tokens.
std::vector<std::string> tokenize(std::string_view canonical_text);

inline bool is_hashtag(std::string_view token) { return token.size() > 1 && token.front() == '#'; }

// "#zika" -> "zika"; other tokens unchanged.
std::string_view strip_hash(std::string_view token);

}  // namespace rumortrack::index
