#include "util/time.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

#include "util/error.hpp"

namespace rumortrack {

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t count) {
    if (pos + count > s.size()) fail(ErrorKind::Parse, "truncated timestamp");
    int v = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            fail(ErrorKind::Parse, "bad digit in timestamp '" + std::string(s) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

void expect(std::string_view s, std::size_t pos, char c) {
    if (pos >= s.size() || s[pos] != c)
        fail(ErrorKind::Parse, "malformed timestamp '" + std::string(s) + "'");
}

std::int64_t day_number(int y, int m, int d, std::string_view src) {
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) fail(ErrorKind::Parse, "invalid calendar date '" + std::string(src) + "'");
    return sys_days{ymd}.time_since_epoch().count();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::int64_t parse_date(std::string_view s) {
    const int y = digits(s, 0, 4);
    expect(s, 4, '-');
    const int mo = digits(s, 5, 2);
    expect(s, 7, '-');
    const int d = digits(s, 8, 2);
    if (s.size() != 10) fail(ErrorKind::Parse, "trailing characters in date '" + std::string(s) + "'");
    return day_number(y, mo, d, s);
}

Timestamp parse_timestamp(std::string_view s) {
    if (s.size() == 10) return parse_date(s) * 86400;
    const int y = digits(s, 0, 4);
    expect(s, 4, '-');
    const int mo = digits(s, 5, 2);
    expect(s, 7, '-');
    const int d = digits(s, 8, 2);
    if (s.size() < 19 || (s[10] != 'T' && s[10] != ' '))
        fail(ErrorKind::Parse, "malformed timestamp '" + std::string(s) + "'");
    const int hh = digits(s, 11, 2);
    expect(s, 13, ':');
    const int mm = digits(s, 14, 2);
    expect(s, 16, ':');
    const int ss = digits(s, 17, 2);
    if (hh > 23 || mm > 59 || ss > 60) fail(ErrorKind::Parse, "time out of range '" + std::string(s) + "'");
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::int64_t offset = 0;
    if (pos < s.size()) {
        if (s[pos] == 'Z' && pos + 1 == s.size()) {
            ++pos;
        } else if ((s[pos] == '+' || s[pos] == '-') && pos + 6 == s.size()) {
            const int sign = s[pos] == '+' ? 1 : -1;
            const int oh = digits(s, pos + 1, 2);
            expect(s, pos + 3, ':');
            const int om = digits(s, pos + 4, 2);
            offset = sign * (oh * 3600 + om * 60);
            pos += 6;
        }
    }
    if (pos != s.size()) fail(ErrorKind::Parse, "trailing characters in timestamp '" + std::string(s) + "'");
    return day_number(y, mo, d, s) * 86400 + hh * 3600 + mm * 60 + ss - offset;
}

std::int64_t utc_day(Timestamp t) { return floor_div(t, 86400); }

std::string format_date(std::int64_t day) {
    using namespace std::chrono;
    const year_month_day ymd{sys_days{days{day}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string format_timestamp(Timestamp t) {
    const std::int64_t day = utc_day(t);
    const std::int64_t sec = t - day * 86400;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(day).c_str(),
                  static_cast<int>(sec / 3600), static_cast<int>(sec / 60 % 60),
                  static_cast<int>(sec % 60));
    return buf;
}

int iso_weekday(Timestamp t) {
    // 1970-01-01 was a Thursday (ISO 4).
    const std::int64_t day = utc_day(t);
    const std::int64_t w = ((day % 7) + 7 + 3) % 7;  // 0 = Monday
    return static_cast<int>(w) + 1;
}

}  // namespace rumortrack
