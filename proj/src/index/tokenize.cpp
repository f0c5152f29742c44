#include "index/tokenize.hpp"

#include "util/utf8.hpp"

namespace rumortrack::index {

std::vector<std::string> tokenize(std::string_view canonical_text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.find_first_not_of('#') != std::string::npos) tokens.push_back(current);
        current.clear();
    };
    for (char32_t cp : utf8::decode(canonical_text)) {
        if (utf8::is_space(cp) || cp == '.' || cp == ',' || cp == '?') {
            flush();
            continue;
        }
        utf8::append(current, utf8::to_lower(cp));
    }
    flush();
    return tokens;
}

std::string_view strip_hash(std::string_view token) {
    while (!token.empty() && token.front() == '#') token.remove_prefix(1);
    return token;
}

}  // namespace rumortrack::index
