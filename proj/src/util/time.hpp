#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rumortrack {

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

// Accepts "YYYY-MM-DDTHH:MM:SSZ", "YYYY-MM-DD HH:MM:SS" (taken as UTC),
// offsets "+HH:MM"/"-HH:MM", and a bare date "YYYY-MM-DD" (midnight UTC).
// Fractional seconds are truncated. Throws Error(Parse) on anything else.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// Days since 1970-01-01 for the UTC day containing `t`.
std::int64_t utc_day(Timestamp t);
std::string format_date(std::int64_t day);
std::int64_t parse_date(std::string_view text);

// 1 = Monday ... 7 = Sunday.
int iso_weekday(Timestamp t);

}  // namespace rumortrack
