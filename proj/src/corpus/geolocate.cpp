#include "corpus/geolocate.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "util/error.hpp"
#include "util/text_io.hpp"
#include "util/utf8.hpp"

namespace rumortrack::corpus {

namespace {

std::string place_key(std::string_view s) {
    std::string lowered = utf8::to_lower(trim(s));
    std::string out;
    bool space = false;
    for (char c : lowered) {
        if (c == ' ' || c == '\t') {
            space = !out.empty();
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace

Gazetteer Gazetteer::load(const std::filesystem::path& places, const std::filesystem::path& boxes) {
    if (!std::filesystem::exists(places)) fail(ErrorKind::Config, "gazetteer place table not found: " + places.string());
    if (!std::filesystem::exists(boxes)) fail(ErrorKind::Config, "gazetteer box table not found: " + boxes.string());
    Gazetteer g;
    for (const auto& row : read_tsv(places)) {
        if (row.size() != 2) fail(ErrorKind::Config, "gazetteer place row must be place<TAB>country");
        g.add_place(row[0], row[1]);
    }
    for (const auto& row : read_tsv(boxes)) {
        if (row.size() != 5) fail(ErrorKind::Config, "gazetteer box row must have 5 columns");
        try {
            g.add_box({row[0], parse_double(row[1]), parse_double(row[2]), parse_double(row[3]), parse_double(row[4])});
        } catch (const Error& e) {
            fail(ErrorKind::Config, std::string("gazetteer box table: ") + e.what());
        }
    }
    return g;
}

void Gazetteer::add_place(const std::string& place, const std::string& country) {
    places_[place_key(place)] = country;
}

void Gazetteer::add_box(CountryBox box) { boxes_.push_back(std::move(box)); }

std::optional<std::string> Gazetteer::country_at(const GeoPoint& p) const {
    const CountryBox* best = nullptr;
    double best_area = 0.0;
    for (const auto& b : boxes_) {
        if (p.latitude < b.min_lat || p.latitude > b.max_lat || p.longitude < b.min_lon || p.longitude > b.max_lon)
            continue;
        const double area = (b.max_lat - b.min_lat) * (b.max_lon - b.min_lon);
        if (!best || area < best_area || (area == best_area && b.country < best->country)) {
            best = &b;
            best_area = area;
        }
    }
    if (!best) return std::nullopt;
    return best->country;
}

std::optional<std::string> Gazetteer::country_of_place(const std::string& place) const {
    const std::string key = place_key(place);
    if (key.empty()) return std::nullopt;
    if (auto it = places_.find(key); it != places_.end()) return it->second;
    auto parts = split(key, ',');
    if (parts.size() < 2) return std::nullopt;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        const std::string part = place_key(*it);
        if (part.empty()) continue;
        if (auto hit = places_.find(part); hit != places_.end()) return hit->second;
    }
    return std::nullopt;
}

std::vector<std::string> Gazetteer::countries() const {
    std::set<std::string> all;
    for (const auto& [_, c] : places_) all.insert(c);
    for (const auto& b : boxes_) all.insert(b.country);
    return {all.begin(), all.end()};
}

std::optional<GeoResult> geolocate_direct(const Message& m, const Gazetteer& gaz) {
    if (m.gps) {
        if (auto c = gaz.country_at(*m.gps)) return GeoResult{*c, GeoStage::Gps};
    }
    if (m.place_name) {
        if (auto c = gaz.country_of_place(*m.place_name)) return GeoResult{*c, GeoStage::Place};
    }
    if (m.author_profile_location) {
        if (auto c = gaz.country_of_place(*m.author_profile_location)) return GeoResult{*c, GeoStage::Profile};
    }
    return std::nullopt;
}

std::optional<GeoResult> geolocate(const Message& m, const UserHistory& history, const Gazetteer& gaz) {
    if (auto direct = geolocate_direct(m, gaz)) return direct;
    const auto it = history.find(m.author_id);
    if (it == history.end() || it->second.empty()) return std::nullopt;

    struct Tally {
        std::size_t count = 0;
        Timestamp latest = 0;
        std::string latest_id;
    };
    std::map<std::string, Tally> tallies;
    for (const auto& e : it->second) {
        auto& t = tallies[e.country];
        if (t.count == 0 || std::tie(e.created_at, e.message_id) > std::tie(t.latest, t.latest_id)) {
            t.latest = e.created_at;
            t.latest_id = e.message_id;
        }
        ++t.count;
    }
    const auto best = std::max_element(tallies.begin(), tallies.end(), [](const auto& a, const auto& b) {
        return std::tie(a.second.count, a.second.latest, a.second.latest_id) <
               std::tie(b.second.count, b.second.latest, b.second.latest_id);
    });
    return GeoResult{best->first, GeoStage::UserHistory};
}

std::vector<std::optional<GeoResult>> geolocate_all(const std::vector<Message>& messages, const Gazetteer& gaz) {
    std::vector<std::optional<GeoResult>> out(messages.size());
    UserHistory history;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        out[i] = geolocate_direct(messages[i], gaz);
        if (out[i]) history[messages[i].author_id].push_back({messages[i].created_at, messages[i].id, out[i]->country});
    }
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (!out[i]) out[i] = geolocate(messages[i], history, gaz);
    }
    return out;
}

std::string geo_to_tsv(const std::vector<Message>& messages, const std::vector<std::optional<GeoResult>>& geo) {
    std::string out = "message_id\tcountry\tstage\n";
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (!geo[i]) continue;
        out += messages[i].id + '\t' + geo[i]->country + '\t' + std::to_string(static_cast<int>(geo[i]->stage)) + '\n';
    }
    return out;
}

std::map<std::string, std::string> geo_from_tsv(const std::string& content) {
    std::map<std::string, std::string> out;
    std::size_t start = content.find('\n');
    start = start == std::string::npos ? content.size() : start + 1;
    while (start < content.size()) {
        auto end = content.find('\n', start);
        if (end == std::string::npos) end = content.size();
        auto cols = split(std::string_view(content).substr(start, end - start), '\t');
        start = end + 1;
        if (cols.size() >= 2) out[cols[0]] = cols[1];
    }
    return out;
}

}  // namespace rumortrack::corpus
