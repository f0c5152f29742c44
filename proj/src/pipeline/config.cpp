#include "pipeline/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>

#include "index/query.hpp"
#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace rumortrack::pipeline {

using nlohmann::json;

std::uint64_t Config::hash() const { return fnv1a64(canonical_json); }

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    fail(ErrorKind::Config, "config: " + field + ": " + why);
}

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) bad(where, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, _] : j.items()) {
        if (!ok.count(k)) bad(where.empty() ? k : where + "." + k, "unknown key");
    }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        bad(where.empty() ? key : where + "." + key, "wrong type");
    }
}

void read_path(const json& j, const char* key, std::filesystem::path& out, const std::filesystem::path& base,
               const std::string& where) {
    if (!j.contains(key)) return;
    std::string s;
    read(j, key, s, where);
    out = std::filesystem::path(s).is_absolute() ? std::filesystem::path(s) : base / s;
}

}  // namespace

Config parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(j, "", {"run_id", "seed", "language", "corpus", "schema", "gazetteer", "rumors", "annotation", "lexicon",
                      "features", "learn", "query_top", "timeline"});
    Config c;
    c.base_dir = base_dir;
    read(j, "run_id", c.run_id, "");
    if (c.run_id.empty() || c.run_id.find_first_of("/\\ \t") != std::string::npos) bad("run_id", "must be a plain name");
    read(j, "seed", c.seed, "");
    read(j, "language", c.language, "");
    read_path(j, "corpus", c.corpus, base_dir, "");
    if (c.corpus.empty()) bad("corpus", "required");
    if (j.contains("schema")) {
        only_keys(j["schema"], "schema", {"field_names"});
        read(j["schema"], "field_names", c.schema.field_names, "schema");
    }
    if (!j.contains("gazetteer")) bad("gazetteer", "required");
    only_keys(j["gazetteer"], "gazetteer", {"places", "boxes"});
    read_path(j["gazetteer"], "places", c.gazetteer_places, base_dir, "gazetteer");
    read_path(j["gazetteer"], "boxes", c.gazetteer_boxes, base_dir, "gazetteer");
    read(j, "query_top", c.query_top, "");

    if (!j.contains("rumors") || !j["rumors"].is_array() || j["rumors"].empty()) bad("rumors", "need a non-empty list");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < j["rumors"].size(); ++i) {
        const auto& r = j["rumors"][i];
        const std::string where = "rumors[" + std::to_string(i) + "]";
        only_keys(r, where, {"id", "description", "query", "provenance"});
        RumorConfig rc;
        read(r, "id", rc.id, where);
        read(r, "description", rc.description, where);
        read(r, "query", rc.query, where);
        read(r, "provenance", rc.provenance, where);
        if (rc.id.empty() || rc.id.find_first_of("/\\ \t,") != std::string::npos) bad(where + ".id", "must be a plain name");
        if (!ids.insert(rc.id).second) bad(where + ".id", "duplicate rumor id '" + rc.id + "'");
        try {
            index::parse_query(rc.query);
        } catch (const Error& e) {
            bad(where + ".query", rc.id + ": " + e.what());
        }
        c.rumors.push_back(std::move(rc));
    }

    if (j.contains("annotation")) {
        const auto& a = j["annotation"];
        only_keys(a, "annotation", {"mode", "truth", "workers", "judgments_dir", "gold_count", "cap", "head", "min_gold",
                                    "min_accuracy_percent", "min_gold_attempts", "min_judgments", "max_judgments",
                                    "gold_interval"});
        auto& s = c.annotation;
        read(a, "mode", s.mode, "annotation");
        if (s.mode != "simulate" && s.mode != "import") bad("annotation.mode", "must be simulate or import");
        read_path(a, "truth", s.truth, base_dir, "annotation");
        read_path(a, "judgments_dir", s.judgments_dir, base_dir, "annotation");
        read(a, "gold_count", s.gold_count, "annotation");
        read(a, "cap", s.cap, "annotation");
        read(a, "head", s.head, "annotation");
        read(a, "min_gold", s.task.min_gold, "annotation");
        read(a, "min_accuracy_percent", s.task.min_accuracy_percent, "annotation");
        read(a, "min_gold_attempts", s.task.min_gold_attempts, "annotation");
        read(a, "min_judgments", s.task.min_judgments, "annotation");
        read(a, "max_judgments", s.task.max_judgments, "annotation");
        read(a, "gold_interval", s.task.gold_interval, "annotation");
        if (a.contains("workers")) {
            for (const auto& w : a["workers"]) {
                only_keys(w, "annotation.workers[]", {"id", "accuracy"});
                SimulatedWorker sw;
                read(w, "id", sw.id, "annotation.workers[]");
                read(w, "accuracy", sw.accuracy, "annotation.workers[]");
                if (sw.accuracy < 0.0 || sw.accuracy > 1.0) bad("annotation.workers[].accuracy", "must be in [0, 1]");
                s.workers.push_back(sw);
            }
        }
        if (s.head > s.cap) bad("annotation.head", "exceeds annotation.cap");
        if (s.gold_count < s.task.min_gold) bad("annotation.gold_count", "below annotation.min_gold");
        if (s.mode == "simulate" && (s.truth.empty() || s.workers.empty()))
            bad("annotation", "simulate mode needs truth and workers");
        if (s.mode == "import" && s.judgments_dir.empty()) bad("annotation", "import mode needs judgments_dir");
    } else {
        bad("annotation", "required");
    }

    if (!j.contains("lexicon")) bad("lexicon", "required");
    only_keys(j["lexicon"], "lexicon", {"corpus_m", "corpus_w", "keep", "truncate_general"});
    read_path(j["lexicon"], "corpus_m", c.lexicon.corpus_m, base_dir, "lexicon");
    read_path(j["lexicon"], "corpus_w", c.lexicon.corpus_w, base_dir, "lexicon");
    read(j["lexicon"], "keep", c.lexicon.keep, "lexicon");
    read(j["lexicon"], "truncate_general", c.lexicon.truncate_general, "lexicon");

    if (!j.contains("features")) bad("features", "required");
    const auto& f = j["features"];
    only_keys(f, "features", {"sentiment", "tags", "vocabulary", "domains", "wikipedia_domains", "redirects"});
    read_path(f, "sentiment", c.features.sentiment, base_dir, "features");
    read_path(f, "tags", c.features.tags, base_dir, "features");
    read_path(f, "vocabulary", c.features.vocabulary, base_dir, "features");
    read_path(f, "domains", c.features.domains, base_dir, "features");
    read_path(f, "wikipedia_domains", c.features.wikipedia_domains, base_dir, "features");
    read_path(f, "redirects", c.features.redirects, base_dir, "features");

    if (j.contains("learn")) {
        const auto& l = j["learn"];
        only_keys(l, "learn", {"algorithms", "gbe_algorithm", "nested_selector", "folds", "gbe_target",
                               "gbe_inner_folds", "ig_top", "forest_size", "min_leaf", "k_features", "max_depth",
                               "bootstrap", "variance_floor"});
        auto& s = c.learn;
        try {
            if (l.contains("algorithms")) {
                s.algorithms.clear();
                for (const auto& a : l["algorithms"]) s.algorithms.push_back(learn::parse_algorithm(a.get<std::string>()));
            }
            if (l.contains("gbe_algorithm")) s.gbe_algorithm = learn::parse_algorithm(l["gbe_algorithm"].get<std::string>());
            if (l.contains("nested_selector"))
                s.nested_selector = learn::parse_selector(l["nested_selector"].get<std::string>());
        } catch (const Error& e) {
            bad("learn", e.what());
        } catch (const json::exception&) {
            bad("learn", "wrong type");
        }
        read(l, "folds", s.folds, "learn");
        read(l, "gbe_target", s.gbe_target, "learn");
        read(l, "gbe_inner_folds", s.gbe_inner_folds, "learn");
        read(l, "ig_top", s.ig_top, "learn");
        read(l, "forest_size", s.params.forest_size, "learn");
        read(l, "min_leaf", s.params.min_leaf, "learn");
        read(l, "k_features", s.params.k_features, "learn");
        read(l, "max_depth", s.params.max_depth, "learn");
        read(l, "bootstrap", s.params.bootstrap, "learn");
        read(l, "variance_floor", s.params.variance_floor, "learn");
        if (s.folds < 2) bad("learn.folds", "must be at least 2");
        if (s.algorithms.empty()) bad("learn.algorithms", "must not be empty");
    }
    if (j.contains("timeline")) {
        only_keys(j["timeline"], "timeline", {"start", "end"});
        std::string s;
        if (j["timeline"].contains("start")) {
            read(j["timeline"], "start", s, "timeline");
            parse_date(s);
            c.timeline_start = s;
        }
        if (j["timeline"].contains("end")) {
            read(j["timeline"], "end", s, "timeline");
            parse_date(s);
            c.timeline_end = s;
        }
    }
    c.canonical_json = j.dump();
    return c;
}

Config load_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorKind::Config, "config file not found: " + path.string());
    auto c = parse_config(read_file(path), std::filesystem::absolute(path).parent_path());
    apply_environment(c);
    return c;
}

void apply_environment(Config& c) {
    if (const char* s = std::getenv("RUMORTRACK_SEED"); s && *s) {
        try {
            c.seed = static_cast<std::uint64_t>(parse_int(s));
        } catch (const Error&) {
            fail(ErrorKind::Config, "RUMORTRACK_SEED is not an integer");
        }
        auto j = json::parse(c.canonical_json);
        j["seed"] = c.seed;
        c.canonical_json = j.dump();
    }
}

}  // namespace rumortrack::pipeline
