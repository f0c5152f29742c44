#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "corpus/message.hpp"

namespace rumortrack::corpus {

struct CountryBox {
    std::string country;  // ISO-3166 alpha-2
    double min_lat, min_lon, max_lat, max_lon;
};

// Offline replacement for the border-polygon and place-name services.
class Gazetteer {
public:
    // `places`: place<TAB>country_code; `boxes`: code<TAB>min_lat<TAB>min_lon<TAB>max_lat<TAB>max_lon.
    // Throws Error(Config) when either file is missing or malformed.
    static Gazetteer load(const std::filesystem::path& places, const std::filesystem::path& boxes);

    void add_place(const std::string& place, const std::string& country);
    void add_box(CountryBox box);

    // Smallest box containing the point; ties by country code.
    std::optional<std::string> country_at(const GeoPoint& p) const;
    // Case-insensitive whole-string match, then comma-separated parts from last to first.
    std::optional<std::string> country_of_place(const std::string& place) const;

    // Sorted, de-duplicated country codes from both tables.
    std::vector<std::string> countries() const;

private:
    std::unordered_map<std::string, std::string> places_;
    std::vector<CountryBox> boxes_;
};

enum class GeoStage { Gps = 1, Place = 2, Profile = 3, UserHistory = 4 };

struct GeoResult {
    std::string country;
    GeoStage stage;
};

struct HistoryEntry {
    Timestamp created_at;
    std::string message_id;
    std::string country;
};
using UserHistory = std::unordered_map<std::string, std::vector<HistoryEntry>>;

// Stages 1-3 only: direct evidence carried by the message itself.
std::optional<GeoResult> geolocate_direct(const Message& m, const Gazetteer& gaz);

// Full cascade. Stage 4 takes the most frequent country among the author's
// history entries; ties go to the country of the most recent entry.
std::optional<GeoResult> geolocate(const Message& m, const UserHistory& history, const Gazetteer& gaz);

// Runs stages 1-3 over the whole corpus, builds per-author histories from the
// hits, then resolves the remaining messages with stage 4. Independent of
// input order.
std::vector<std::optional<GeoResult>> geolocate_all(const std::vector<Message>& messages, const Gazetteer& gaz);

std::string geo_to_tsv(const std::vector<Message>& messages, const std::vector<std::optional<GeoResult>>& geo);
// message id -> country code, from a geo TSV.
std::map<std::string, std::string> geo_from_tsv(const std::string& content);

}  // namespace rumortrack::corpus
