#include "corpus/ingest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "util/error.hpp"
#include "util/text_io.hpp"

namespace rumortrack::corpus {

using nlohmann::json;

namespace {

// Raised for a single bad record; caught per line and turned into a Rejection.
struct RecordError {
    std::string reason;
};

class RecordReader {
public:
    RecordReader(const json& record, const SchemaConfig& schema) : record_(record), schema_(schema) {}

    const json* find(const std::string& name) const {
        const auto it = schema_.field_names.find(name);
        const std::string& key = it == schema_.field_names.end() ? name : it->second;
        const auto found = record_.find(key);
        if (found == record_.end() || found->is_null()) return nullptr;
        return &*found;
    }

    const json& require(const std::string& name) const {
        const json* v = find(name);
        if (!v) throw RecordError{"missing field '" + name + "'"};
        return *v;
    }

    std::string string_field(const std::string& name) const {
        const json& v = require(name);
        if (!v.is_string()) throw RecordError{"field '" + name + "' must be a string"};
        return v.get<std::string>();
    }

    std::optional<std::string> optional_string(const std::string& name) const {
        const json* v = find(name);
        if (!v) return std::nullopt;
        if (!v->is_string()) throw RecordError{"field '" + name + "' must be a string"};
        return v->get<std::string>();
    }

    Timestamp timestamp_field(const std::string& name) const {
        const std::string raw = string_field(name);
        try {
            return parse_timestamp(raw);
        } catch (const Error& e) {
            throw RecordError{"field '" + name + "': " + e.what()};
        }
    }

    std::int64_t count_field(const std::string& name) const {
        const json* v = find(name);
        if (!v) return 0;
        if (!v->is_number_integer()) throw RecordError{"field '" + name + "' must be an integer"};
        const auto n = v->get<std::int64_t>();
        if (n < 0) throw RecordError{"range violation: '" + name + "' is negative (" + std::to_string(n) + ")"};
        return n;
    }

    bool bool_field(const std::string& name) const {
        const json* v = find(name);
        if (!v) return false;
        if (!v->is_boolean()) throw RecordError{"field '" + name + "' must be a boolean"};
        return v->get<bool>();
    }

    std::vector<std::string> string_list(const std::string& name) const {
        const json* v = find(name);
        if (!v) return {};
        if (!v->is_array()) throw RecordError{"field '" + name + "' must be an array of strings"};
        std::vector<std::string> out;
        for (const auto& item : *v) {
            if (!item.is_string()) throw RecordError{"field '" + name + "' must be an array of strings"};
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    std::optional<GeoPoint> gps_field() const {
        const json* v = find("gps");
        if (!v) return std::nullopt;
        if (!v->is_object() || !v->contains("lat") || !v->contains("lon") || !(*v)["lat"].is_number() ||
            !(*v)["lon"].is_number())
            throw RecordError{"field 'gps' must be an object {lat, lon} of numbers"};
        GeoPoint p{(*v)["lat"].get<double>(), (*v)["lon"].get<double>()};
        if (!(p.latitude >= -90.0 && p.latitude <= 90.0))
            throw RecordError{"range violation: latitude " + format_double(p.latitude) + " outside [-90, 90]"};
        if (!(p.longitude >= -180.0 && p.longitude <= 180.0))
            throw RecordError{"range violation: longitude " + format_double(p.longitude) + " outside [-180, 180]"};
        return p;
    }

private:
    const json& record_;
    const SchemaConfig& schema_;
};

Message parse_record(const json& record, const SchemaConfig& schema) {
    if (!record.is_object()) throw RecordError{"record is not a JSON object"};
    RecordReader r(record, schema);
    Message m;
    m.id = r.string_field("id");
    if (m.id.empty()) throw RecordError{"field 'id' is empty"};
    if (m.id.find_first_of("\t\r\n") != std::string::npos) throw RecordError{"field 'id' contains a tab or line break"};
    m.text = r.string_field("text");
    m.created_at = r.timestamp_field("created_at");
    m.language = r.string_field("language");
    m.is_retweet = r.bool_field("is_retweet");
    m.retweet_count = r.count_field("retweet_count");
    m.author_id = r.string_field("author_id");
    m.author_followers = r.count_field("author_followers");
    m.author_following = r.count_field("author_following");
    m.author_status_count = r.count_field("author_status_count");
    m.author_account_created = r.timestamp_field("author_account_created");
    m.author_profile_location = r.optional_string("author_profile_location");
    m.gps = r.gps_field();
    m.place_name = r.optional_string("place_name");
    m.mentions = r.string_list("mentions");
    m.hashtags = r.string_list("hashtags");
    m.urls = r.string_list("urls");
    if (m.created_at < m.author_account_created)
        throw RecordError{"created_at precedes author_account_created"};
    return m;
}

std::string readable_id(const json& record, const SchemaConfig& schema) {
    if (!record.is_object()) return {};
    const auto it = schema.field_names.find("id");
    const std::string key = it == schema.field_names.end() ? "id" : it->second;
    const auto found = record.find(key);
    if (found != record.end() && found->is_string()) return found->get<std::string>();
    return {};
}

}  // namespace

IngestResult ingest(std::istream& source, const SchemaConfig& schema) {
    IngestResult result;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            result.rejected.push_back({line_no, "", std::string("invalid JSON: ") + e.what()});
            continue;
        }
        try {
            Message m = parse_record(record, schema);
            if (!seen.insert(m.id).second) throw RecordError{"duplicate id '" + m.id + "'"};
            result.accepted.push_back(std::move(m));
        } catch (const RecordError& e) {
            result.rejected.push_back({line_no, readable_id(record, schema), e.reason});
        } catch (const json::exception& e) {
            result.rejected.push_back({line_no, readable_id(record, schema), e.what()});
        }
    }
    if (source.bad()) fail(ErrorKind::Io, "read error in record stream at line " + std::to_string(line_no));
    return result;
}

IngestResult ingest_file(const std::filesystem::path& path, const SchemaConfig& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open corpus file " + path.string());
    return ingest(in, schema);
}

std::string message_to_json_line(const Message& m) {
    json j;
    j["id"] = m.id;
    j["text"] = m.text;
    j["created_at"] = format_timestamp(m.created_at);
    j["language"] = m.language;
    j["is_retweet"] = m.is_retweet;
    j["retweet_count"] = m.retweet_count;
    j["author_id"] = m.author_id;
    j["author_followers"] = m.author_followers;
    j["author_following"] = m.author_following;
    j["author_status_count"] = m.author_status_count;
    j["author_account_created"] = format_timestamp(m.author_account_created);
    j["author_profile_location"] = m.author_profile_location ? json(*m.author_profile_location) : json();
    j["gps"] = m.gps ? json{{"lat", m.gps->latitude}, {"lon", m.gps->longitude}} : json();
    j["place_name"] = m.place_name ? json(*m.place_name) : json();
    j["mentions"] = m.mentions;
    j["hashtags"] = m.hashtags;
    j["urls"] = m.urls;
    return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

void write_snapshot(const std::filesystem::path& path, const std::vector<Message>& messages) {
    std::string out;
    for (const auto& m : messages) {
        out += message_to_json_line(m);
        out += '\n';
    }
    write_file(path, out);
}

std::vector<Message> read_snapshot(const std::filesystem::path& path) {
    auto result = ingest_file(path);
    if (!result.rejected.empty()) {
        const auto& r = result.rejected.front();
        fail(ErrorKind::Parse, "corrupt snapshot " + path.string() + " line " + std::to_string(r.line) + ": " + r.reason);
    }
    return std::move(result.accepted);
}

std::string rejections_to_tsv(const std::vector<Rejection>& rejected) {
    auto cell = [](std::string s) {
        for (auto& c : s) {
            if (c == '\t' || c == '\n' || c == '\r') c = ' ';
        }
        return s;
    };
    std::string out = "line\tid\treason\n";
    for (const auto& r : rejected) {
        out += std::to_string(r.line) + '\t' + cell(r.id) + '\t' + cell(r.reason) + '\n';
    }
    return out;
}

}  // namespace rumortrack::corpus
