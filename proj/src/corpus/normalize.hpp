#pragma once

#include <string>
#include <string_view>

namespace rumortrack::corpus {

// Canonical text used for duplicate detection and token features.
//
// Removes, in order: URL tokens (http:// or https://), a leading retweet
// marker ("RT " case-insensitively, optionally followed by one @mention and a
// colon), @mention tokens, and every character that is not a letter, a digit,
// whitespace, '#', '.', ',' or '?'. Whitespace runs collapse to one space and
// the result is trimmed. The steps repeat until nothing changes, so the
// function is idempotent.
std::string normalize(std::string_view text);

// Character filter only (no URL/RT/mention handling), lowercased. Query terms
// go through this so that they match what the tokenizer emits.
std::string filter_token_chars(std::string_view text);

bool starts_with_retweet_marker(std::string_view text);

}  // namespace rumortrack::corpus
