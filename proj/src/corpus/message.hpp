#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "util/time.hpp"

namespace rumortrack::corpus {

struct GeoPoint {
    double latitude = 0.0;
    double longitude = 0.0;
};

struct Message {
    std::string id;
    std::string text;
    Timestamp created_at = 0;
    std::string language;
    bool is_retweet = false;
    std::int64_t retweet_count = 0;
    std::string author_id;
    std::int64_t author_followers = 0;
    std::int64_t author_following = 0;
    std::int64_t author_status_count = 0;
    Timestamp author_account_created = 0;
    std::optional<std::string> author_profile_location;
    std::optional<GeoPoint> gps;
    std::optional<std::string> place_name;
    std::vector<std::string> mentions;
    std::vector<std::string> hashtags;
    std::vector<std::string> urls;
};

// Whole days between account creation and posting.
inline std::int64_t account_age_days(const Message& m) {
    return (m.created_at - m.author_account_created) / 86400;
}

}  // namespace rumortrack::corpus
