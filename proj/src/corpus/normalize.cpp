#include "corpus/normalize.hpp"

#include <vector>

#include "util/utf8.hpp"

namespace rumortrack::corpus {

namespace {

using Text = std::vector<char32_t>;

bool is_name_char(char32_t c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool matches_ci(const Text& t, std::size_t pos, std::string_view lit) {
    if (pos + lit.size() > t.size()) return false;
    for (std::size_t k = 0; k < lit.size(); ++k) {
        if (utf8::to_lower(t[pos + k]) != static_cast<char32_t>(lit[k])) return false;
    }
    return true;
}

Text strip_urls(const Text& in) {
    Text out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        if (matches_ci(in, i, "http://") || matches_ci(in, i, "https://")) {
            while (i < in.size() && !utf8::is_space(in[i])) ++i;
            continue;
        }
        out.push_back(in[i++]);
    }
    return out;
}

// Length of a leading "RT " [@name [:]] marker, 0 if absent.
std::size_t retweet_marker_length(const Text& t) {
    std::size_t i = 0;
    while (i < t.size() && utf8::is_space(t[i])) ++i;
    if (!matches_ci(t, i, "rt")) return 0;
    i += 2;
    if (i >= t.size() || !utf8::is_space(t[i])) return 0;
    while (i < t.size() && utf8::is_space(t[i])) ++i;
    if (i < t.size() && t[i] == '@') {
        std::size_t j = i + 1;
        while (j < t.size() && is_name_char(t[j])) ++j;
        if (j > i + 1) {
            std::size_t k = j;
            while (k < t.size() && utf8::is_space(t[k])) ++k;
            if (k < t.size() && t[k] == ':') i = k + 1;
        }
    }
    return i;
}

Text strip_mentions(const Text& in) {
    Text out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        const bool boundary = i == 0 || !is_name_char(in[i - 1]);
        if (in[i] == '@' && boundary && i + 1 < in.size() && is_name_char(in[i + 1])) {
            ++i;
            while (i < in.size() && is_name_char(in[i])) ++i;
            continue;
        }
        out.push_back(in[i++]);
    }
    return out;
}

bool kept_char(char32_t c) {
    return utf8::is_letter(c) || utf8::is_digit(c) || c == '#' || c == '.' || c == ',' || c == '?';
}

Text filter_and_collapse(const Text& in) {
    Text out;
    out.reserve(in.size());
    bool pending_space = false;
    for (char32_t c : in) {
        if (utf8::is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (!kept_char(c)) continue;
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

Text normalize_once(const Text& in) {
    Text t = strip_urls(in);
    if (const std::size_t n = retweet_marker_length(t); n > 0) t.erase(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n));
    t = strip_mentions(t);
    return filter_and_collapse(t);
}

}  // namespace

std::string normalize(std::string_view text) {
    Text current = utf8::decode(text);
    while (true) {
        Text next = normalize_once(current);
        if (next == current) break;
        current = std::move(next);
    }
    return utf8::encode(current);
}

std::string filter_token_chars(std::string_view text) {
    Text lowered;
    for (char32_t c : utf8::decode(text)) lowered.push_back(utf8::to_lower(c));
    return utf8::encode(filter_and_collapse(lowered));
}

bool starts_with_retweet_marker(std::string_view text) { return retweet_marker_length(utf8::decode(text)) > 0; }

}  // namespace rumortrack::corpus
