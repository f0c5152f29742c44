#include "util/utf8.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace rumortrack::utf8 {

namespace {

struct Range {
    char32_t lo;
    char32_t hi;
};

// Letters outside the cased ranges handled by is_upper/is_lower.
constexpr std::array<Range, 16> kUncasedLetters{{
    {0x00AA, 0x00AA},  // feminine ordinal
    {0x00BA, 0x00BA},  // masculine ordinal
    {0x00DF, 0x00DF},  // sharp s
    {0x0180, 0x024F},  // Latin Extended-B
    {0x0250, 0x02AF},  // IPA
    {0x05D0, 0x05EA},  // Hebrew
    {0x0620, 0x064A},  // Arabic
    {0x0904, 0x0939},  // Devanagari
    {0x0E01, 0x0E30},  // Thai
    {0x3041, 0x3096},  // Hiragana
    {0x30A1, 0x30FA},  // Katakana
    {0x3400, 0x4DBF},  // CJK extension A
    {0x4E00, 0x9FFF},  // CJK unified
    {0xAC00, 0xD7A3},  // Hangul syllables
    {0x0138, 0x0138},  // kra
    {0x0149, 0x0149},  // n preceded by apostrophe
}};

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

// Latin Extended-A alternates upper/lower in three runs with different parity.
int latin_ext_a_case(char32_t cp) {
    if (in(cp, 0x0100, 0x0137)) return (cp % 2 == 0) ? 1 : -1;
    if (in(cp, 0x0139, 0x0148)) return (cp % 2 == 1) ? 1 : -1;
    if (in(cp, 0x014A, 0x0177)) return (cp % 2 == 0) ? 1 : -1;
    if (cp == 0x0178) return 1;
    if (in(cp, 0x0179, 0x017E)) return (cp % 2 == 1) ? 1 : -1;
    if (cp == 0x017F) return -1;
    return 0;
}

}  // namespace

std::vector<char32_t> decode(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(text[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int extra;
        char32_t cp;
        char32_t min;
        if ((b0 & 0xE0) == 0xC0) {
            extra = 1;
            cp = b0 & 0x1F;
            min = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            extra = 2;
            cp = b0 & 0x0F;
            min = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            extra = 3;
            cp = b0 & 0x07;
            min = 0x10000;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + extra >= n) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (int k = 1; k <= extra; ++k) {
            const auto b = static_cast<unsigned char>(text[i + k]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!ok || cp < min || cp > 0x10FFFF || in(cp, 0xD800, 0xDFFF)) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += extra + 1;
    }
    return out;
}

void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append(out, cp);
    return out;
}

bool is_upper(char32_t cp) {
    if (in(cp, 'A', 'Z')) return true;
    if (cp < 0x80) return false;
    if (in(cp, 0x00C0, 0x00DE) && cp != 0x00D7) return true;
    if (in(cp, 0x0100, 0x017F)) return latin_ext_a_case(cp) > 0;
    if (in(cp, 0x0391, 0x03A9) && cp != 0x03A2) return true;
    if (in(cp, 0x0400, 0x042F)) return true;
    return false;
}

bool is_lower(char32_t cp) {
    if (in(cp, 'a', 'z')) return true;
    if (cp < 0x80) return false;
    if (in(cp, 0x00E0, 0x00FF) && cp != 0x00F7) return true;
    if (in(cp, 0x0100, 0x017F)) return latin_ext_a_case(cp) < 0;
    if (in(cp, 0x03AC, 0x03CE)) return true;
    if (in(cp, 0x0430, 0x045F)) return true;
    return false;
}

bool is_letter(char32_t cp) {
    if (is_upper(cp) || is_lower(cp)) return true;
    if (cp < 0x80) return false;
    return std::any_of(kUncasedLetters.begin(), kUncasedLetters.end(),
                       [cp](const Range& r) { return in(cp, r.lo, r.hi); });
}

bool is_digit(char32_t cp) { return in(cp, '0', '9'); }

bool is_space(char32_t cp) {
    switch (cp) {
        case ' ':
        case '\t':
        case '\n':
        case '\r':
        case '\v':
        case '\f':
        case 0x00A0:
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return in(cp, 0x2000, 0x200A);
    }
}

char32_t to_lower(char32_t cp) {
    if (in(cp, 'A', 'Z')) return cp + 0x20;
    if (cp < 0x80) return cp;
    if (in(cp, 0x00C0, 0x00DE) && cp != 0x00D7) return cp + 0x20;
    if (in(cp, 0x0100, 0x017F) && latin_ext_a_case(cp) > 0) return cp == 0x0178 ? 0x00FF : cp + 1;
    if (in(cp, 0x0391, 0x03A9) && cp != 0x03A2) return cp + 0x20;
    if (in(cp, 0x0410, 0x042F)) return cp + 0x20;
    if (in(cp, 0x0400, 0x040F)) return cp + 0x50;
    return cp;
}

std::string to_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : decode(text)) append(out, to_lower(cp));
    return out;
}

std::size_t length(std::string_view text) { return decode(text).size(); }

}  // namespace rumortrack::utf8
