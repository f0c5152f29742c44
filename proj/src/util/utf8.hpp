#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small UTF-8 toolkit. Character classes cover the scripts seen in the
// collected corpus (Latin, Greek, Cyrillic, Hebrew, Arabic, Devanagari, Thai,
// kana, CJK, Hangul); the exact ranges are listed in docs/text-rules.md.
namespace rumortrack::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes `text`; malformed sequences become U+FFFD, one per offending byte.
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_digit(char32_t cp);  // ASCII 0-9 only
bool is_space(char32_t cp);

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

std::size_t length(std::string_view text);

}  // namespace rumortrack::utf8
