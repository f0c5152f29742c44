#include "corpus/stats.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "util/text_io.hpp"

namespace rumortrack::corpus {

CorpusStats corpus_stats(const std::vector<Message>& messages, const std::vector<std::optional<GeoResult>>* geo) {
    struct Acc {
        std::size_t total = 0;
        std::size_t geolocated = 0;
        std::set<std::string> users;
    };
    std::map<std::string, Acc> acc;
    std::set<std::string> all_users;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        auto& a = acc[messages[i].language];
        ++a.total;
        a.users.insert(messages[i].author_id);
        all_users.insert(messages[i].author_id);
        if (geo && (*geo)[i]) ++a.geolocated;
    }

    CorpusStats stats;
    stats.total.language = "total";
    for (const auto& [lang, a] : acc) {
        stats.languages.push_back({lang, a.total, a.users.size(), a.geolocated});
        stats.total.total_messages += a.total;
        stats.total.distinct_users += a.users.size();
        stats.total.geolocated += a.geolocated;
    }
    std::sort(stats.languages.begin(), stats.languages.end(), [](const LanguageRow& a, const LanguageRow& b) {
        if (a.total_messages != b.total_messages) return a.total_messages > b.total_messages;
        return a.language < b.language;
    });
    stats.unique_users = all_users.size();
    return stats;
}

namespace {

nlohmann::json row_json(const LanguageRow& r) {
    return {{"language", r.language},
            {"total_messages", r.total_messages},
            {"distinct_users", r.distinct_users},
            {"messages_per_user", format_fixed(r.messages_per_user(), 2)},
            {"geolocated", r.geolocated}};
}

}  // namespace

std::string stats_to_json(const CorpusStats& stats) {
    nlohmann::json j;
    j["languages"] = nlohmann::json::array();
    for (const auto& r : stats.languages) j["languages"].push_back(row_json(r));
    j["total"] = row_json(stats.total);
    j["unique_users"] = stats.unique_users;
    j["geolocation_coverage"] = format_fixed(stats.geolocation_coverage(), 4);
    return j.dump(2) + "\n";
}

std::string stats_to_table(const CorpusStats& stats) {
    std::string out = "language\ttotal_messages\tusers\tmessages_per_user\tgeolocated\n";
    auto line = [&](const LanguageRow& r) {
        out += r.language + '\t' + std::to_string(r.total_messages) + '\t' + std::to_string(r.distinct_users) + '\t' +
               format_fixed(r.messages_per_user(), 2) + '\t' + std::to_string(r.geolocated) + '\n';
    };
    for (const auto& r : stats.languages) line(r);
    line(stats.total);
    out += "unique_users\t" + std::to_string(stats.unique_users) + '\n';
    out += "geolocation_coverage\t" + format_fixed(stats.geolocation_coverage(), 4) + '\n';
    return out;
}

}  // namespace rumortrack::corpus
