#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corpus/geolocate.hpp"
#include "corpus/message.hpp"

namespace rumortrack::corpus {

struct LanguageRow {
    std::string language;
    std::size_t total_messages = 0;
    std::size_t distinct_users = 0;
    std::size_t geolocated = 0;
    double messages_per_user() const {
        return distinct_users == 0 ? 0.0 : static_cast<double>(total_messages) / static_cast<double>(distinct_users);
    }
};

struct CorpusStats {
    std::vector<LanguageRow> languages;  // sorted by total desc, then tag
    // Totals row: users are summed over languages (a user active in two
    // languages counts twice), matching the per-language table layout.
    LanguageRow total;
    std::size_t unique_users = 0;  // authors counted once across languages
    double geolocation_coverage() const {
        return total.total_messages == 0 ? 0.0
                                         : static_cast<double>(total.geolocated) / static_cast<double>(total.total_messages);
    }
};

// `geo` is optional and parallel to `messages` when given.
CorpusStats corpus_stats(const std::vector<Message>& messages,
                         const std::vector<std::optional<GeoResult>>* geo = nullptr);

std::string stats_to_json(const CorpusStats& stats);
std::string stats_to_table(const CorpusStats& stats);

}  // namespace rumortrack::corpus
