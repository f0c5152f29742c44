#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <set>

#include "annotation/workflow.hpp"
#include "corpus/normalize.hpp"
#include "corpus/stats.hpp"
#include "index/query.hpp"
#include "index/tokenize.hpp"
#include "json.hpp"
#include "learn/evaluate.hpp"
#include "lexicon/lexicon.hpp"
#include "pipeline/engine.hpp"
#include "pipeline/service.hpp"
#include "pipeline/views.hpp"
#include "rumortrack/rumortrack.h"
#include "timeline/timeline.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

using namespace rumortrack;
using nlohmann::json;

struct rt_config {
    pipeline::Config config;
};

struct rt_corpus {
    corpus::IngestResult ingested;
    std::string language;
    pipeline::CorpusState state;
};

struct rt_task {
    annotation::AnnotationTask task;
};

struct rt_dataset {
    learn::Dataset data;
    std::vector<std::string> ids;  // labeled rows, parallel to data
};

struct rt_model {
    learn::TrainedModel model;
};

struct rt_service {
    std::unique_ptr<pipeline::Service> service;
};

namespace {

thread_local std::string g_error;
thread_local long g_position = -1;

rt_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::Io: return RT_ERR_IO;
        case ErrorKind::Parse: return RT_ERR_PARSE;
        case ErrorKind::Config: return RT_ERR_CONFIG;
        case ErrorKind::InvalidArgument: return RT_ERR_INVALID_ARGUMENT;
        case ErrorKind::NotFound: return RT_ERR_NOT_FOUND;
        case ErrorKind::State: return RT_ERR_STATE;
    }
    return RT_ERR_INTERNAL;
}

template <typename Fn>
rt_status guard(Fn&& fn) {
    g_error.clear();
    g_position = -1;
    try {
        fn();
        return RT_OK;
    } catch (const index::QuerySyntaxError& e) {
        g_error = e.what();
        g_position = static_cast<long>(e.position());
        return RT_ERR_PARSE;
    } catch (const Error& e) {
        g_error = e.what();
        return status_of(e.kind());
    } catch (const json::exception& e) {
        g_error = std::string("malformed JSON argument: ") + e.what();
        return RT_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return RT_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return RT_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorKind::InvalidArgument, std::string(what) + " must not be NULL");
}

void put(char** out, const std::string& s) {
    need(out, "output pointer");
    *out = dup(s);
}

std::string str(const char* s) { return s ? std::string(s) : std::string(); }

json parse_json_arg(const char* text, const char* what) {
    if (!text || !*text) return json::object();
    json j = json::parse(text);
    if (!j.is_object()) fail(ErrorKind::InvalidArgument, std::string(what) + " must be a JSON object");
    return j;
}

std::optional<corpus::Gazetteer> maybe_gazetteer(const char* places, const char* boxes) {
    if (!places && !boxes) return std::nullopt;
    if (!places || !boxes) fail(ErrorKind::InvalidArgument, "gazetteer needs both places and boxes");
    return corpus::Gazetteer::load(places, boxes);
}

rt_corpus* make_corpus(corpus::IngestResult ingested, const std::string& language) {
    auto c = std::make_unique<rt_corpus>();
    c->ingested = std::move(ingested);
    c->language = language;
    c->state = pipeline::build_corpus_state(pipeline::filter_language(c->ingested.accepted, language));
    return c.release();
}

struct LearnOptions {
    learn::ClassifierSpec spec;
    std::vector<std::size_t> features;
    std::size_t folds = 10, target = 10, inner_folds = 5, threads = 0, k = 0;
    std::uint64_t seed = 1;
};

LearnOptions learn_options(const learn::Dataset& d, const char* text) {
    const json j = parse_json_arg(text, "options");
    LearnOptions o;
    auto& p = o.spec.params;
    for (const auto& [key, v] : j.items()) {
        if (key == "algorithm") o.spec.algorithm = learn::parse_algorithm(v.get<std::string>());
        else if (key == "features") {
            for (const auto& name : v) {
                const auto it = std::find(d.names.begin(), d.names.end(), name.get<std::string>());
                if (it == d.names.end()) fail(ErrorKind::NotFound, "unknown feature '" + name.get<std::string>() + "'");
                o.features.push_back(static_cast<std::size_t>(it - d.names.begin()));
            }
        } else if (key == "folds") o.folds = v.get<std::size_t>();
        else if (key == "seed") o.seed = v.get<std::uint64_t>();
        else if (key == "target") o.target = v.get<std::size_t>();
        else if (key == "inner_folds") o.inner_folds = v.get<std::size_t>();
        else if (key == "threads") o.threads = v.get<std::size_t>();
        else if (key == "k") o.k = v.get<std::size_t>();
        else if (key == "forest_size") p.forest_size = v.get<std::size_t>();
        else if (key == "min_leaf") p.min_leaf = v.get<std::size_t>();
        else if (key == "k_features") p.k_features = v.get<std::size_t>();
        else if (key == "max_depth") p.max_depth = v.get<std::size_t>();
        else if (key == "bootstrap") p.bootstrap = v.get<bool>();
        else if (key == "variance_floor") p.variance_floor = v.get<double>();
        else fail(ErrorKind::InvalidArgument, "unknown option '" + key + "'");
    }
    std::sort(o.features.begin(), o.features.end());
    o.features.erase(std::unique(o.features.begin(), o.features.end()), o.features.end());
    return o;
}

std::vector<std::vector<std::string>> tsv_rows(const std::filesystem::path& path, const char* first_header) {
    auto rows = read_tsv(path);
    if (!rows.empty() && !rows.front().empty() && rows.front().front() == first_header) rows.erase(rows.begin());
    return rows;
}

std::string url_decode(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '+') {
            out += ' ';
        } else if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
                   std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
            out += static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16));
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

}  // namespace

extern "C" {

const char* rt_last_error(void) { return g_error.c_str(); }
long rt_last_error_position(void) { return g_position; }
const char* rt_version(void) { return "1.0.0"; }
void rt_string_free(char* s) { std::free(s); }

uint64_t rt_derive_seed(uint64_t seed, const char* label) { return derive_seed(seed, str(label)); }

const char* rt_status_name(rt_status s) {
    switch (s) {
        case RT_OK: return "ok";
        case RT_ERR_IO: return "io";
        case RT_ERR_PARSE: return "parse";
        case RT_ERR_CONFIG: return "config";
        case RT_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case RT_ERR_NOT_FOUND: return "not_found";
        case RT_ERR_STATE: return "state";
        case RT_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

rt_status rt_config_load(const char* path, rt_config** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new rt_config{pipeline::load_config(path)};
    });
}

void rt_config_free(rt_config* c) { delete c; }

rt_status rt_config_info(const rt_config* c, char** out) {
    return guard([&] {
        need(c, "config");
        json rumors = json::array();
        for (const auto& r : c->config.rumors)
            rumors.push_back({{"id", r.id}, {"description", r.description}, {"query", r.query}, {"provenance", r.provenance}});
        const auto& a = c->config.annotation;
        const json task{{"min_gold", a.task.min_gold},
                        {"min_accuracy_percent", a.task.min_accuracy_percent},
                        {"min_gold_attempts", a.task.min_gold_attempts},
                        {"min_judgments", a.task.min_judgments},
                        {"max_judgments", a.task.max_judgments},
                        {"gold_interval", a.task.gold_interval}};
        put(out, json{{"run_id", c->config.run_id},
                      {"seed", c->config.seed},
                      {"language", c->config.language},
                      {"annotation", {{"cap", a.cap}, {"head", a.head}, {"config", task}}},
                      {"config_hash", pipeline::hash_hex(c->config.hash())},
                      {"data_dir", pipeline::data_dir_for(c->config).string()},
                      {"gazetteer",
                       {{"places", c->config.gazetteer_places.string()}, {"boxes", c->config.gazetteer_boxes.string()}}},
                      {"rumors", rumors}}
                     .dump());
    });
}

rt_status rt_run(const rt_config* c, const char* data_dir, char** report_json) {
    return guard([&] {
        need(c, "config");
        const std::filesystem::path dir = data_dir ? std::filesystem::path(data_dir) : pipeline::data_dir_for(c->config);
        const auto report = pipeline::run_pipeline(c->config, dir / c->config.run_id);
        if (report_json) *report_json = dup(report);
    });
}

rt_status rt_normalize(const char* text, char** out) {
    return guard([&] {
        need(text, "text");
        put(out, corpus::normalize(text));
    });
}

rt_status rt_tokenize(const char* canonical_text, char** out) {
    return guard([&] {
        need(canonical_text, "text");
        put(out, json(index::tokenize(canonical_text)).dump());
    });
}

rt_status rt_query_parse(const char* query, char** out) {
    return guard([&] {
        need(query, "query");
        const auto q = index::parse_query(query);
        put(out, json{{"canonical", index::print_query(q)}, {"tree", index::describe(q)}}.dump());
    });
}

rt_status rt_corpus_ingest(const char* path, const char* field_names_json, const char* language, rt_corpus** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        corpus::SchemaConfig schema;
        const json f = parse_json_arg(field_names_json, "field names");
        for (const auto& [k, v] : f.items()) schema.field_names[k] = v.get<std::string>();
        *out = make_corpus(corpus::ingest_file(path, schema), str(language));
    });
}

rt_status rt_corpus_from_config(const rt_config* c, rt_corpus** out) {
    return guard([&] {
        need(c, "config");
        need(out, "out");
        *out = make_corpus(corpus::ingest_file(c->config.corpus, c->config.schema), c->config.language);
    });
}

rt_status rt_corpus_from_snapshot(const char* path, const char* language, rt_corpus** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        corpus::IngestResult r;
        r.accepted = corpus::read_snapshot(path);
        *out = make_corpus(std::move(r), str(language));
    });
}

void rt_corpus_free(rt_corpus* c) { delete c; }

rt_status rt_corpus_summary(const rt_corpus* c, char** out) {
    return guard([&] {
        need(c, "corpus");
        put(out, json{{"accepted", c->ingested.accepted.size()},
                      {"rejected", c->ingested.rejected.size()},
                      {"language", c->language},
                      {"language_messages", c->state.messages.size()},
                      {"duplicate_groups", c->state.dedup.groups.size()}}
                     .dump());
    });
}

rt_status rt_corpus_write(const rt_corpus* c, const char* dir) {
    return guard([&] {
        need(c, "corpus");
        need(dir, "dir");
        const std::filesystem::path d(dir);
        corpus::write_snapshot(d / "snapshot.jsonl", c->ingested.accepted);
        write_file(d / "rejections.tsv", corpus::rejections_to_tsv(c->ingested.rejected));
        write_file(d / "normalized.tsv", corpus::normalized_to_tsv(c->state.dedup.normalized));
        write_file(d / "index.txt", c->state.index.serialize());
    });
}

rt_status rt_corpus_stats(const rt_corpus* c, const char* places, const char* boxes, char** out) {
    return guard([&] {
        need(c, "corpus");
        const auto gaz = maybe_gazetteer(places, boxes);
        if (gaz) {
            const auto geo = corpus::geolocate_all(c->ingested.accepted, *gaz);
            put(out, corpus::stats_to_json(corpus::corpus_stats(c->ingested.accepted, &geo)));
        } else {
            put(out, corpus::stats_to_json(corpus::corpus_stats(c->ingested.accepted, nullptr)));
        }
    });
}

rt_status rt_corpus_geolocate(const rt_corpus* c, const char* places, const char* boxes, char** out) {
    return guard([&] {
        need(c, "corpus");
        need(places, "places");
        need(boxes, "boxes");
        const auto gaz = corpus::Gazetteer::load(places, boxes);
        put(out, corpus::geo_to_tsv(c->ingested.accepted, corpus::geolocate_all(c->ingested.accepted, gaz)));
    });
}

rt_status rt_corpus_query(const rt_corpus* c, const char* query, size_t top_k, char** out) {
    return guard([&] {
        need(c, "corpus");
        need(query, "query");
        const auto a = pipeline::answer_query(c->state, query, top_k);
        put(out, json{{"query", a.canonical}, {"ids", a.ids}, {"count", a.count}}.dump());
    });
}

rt_status rt_corpus_sample(const rt_corpus* c, const char* query, size_t cap, size_t head, uint64_t seed, char** out) {
    return guard([&] {
        need(c, "corpus");
        need(query, "query");
        const auto hits = pipeline::unique_hits(c->state, pipeline::answer_query(c->state, query, 0).ids);
        put(out, json(annotation::sample_candidates(hits, cap, head, seed)).dump());
    });
}

rt_status rt_task_create(const char* definition_json, rt_task** out) {
    return guard([&] {
        need(definition_json, "definition");
        need(out, "out");
        const json j = parse_json_arg(definition_json, "definition");
        annotation::TaskDefinition def;
        def.task_id = j.value("task_id", "");
        def.rumor_id = j.value("rumor_id", "");
        def.instruction = j.value("instruction", "");
        if (def.task_id.empty()) fail(ErrorKind::InvalidArgument, "definition needs a task_id");
        def.candidates = j.value("candidates", std::vector<std::string>{});
        for (const auto& g : j.value("gold", json::array())) {
            const auto l = annotation::parse_label(g.at("label").get<std::string>());
            if (!l) fail(ErrorKind::InvalidArgument, "gold label must be rumor, clarification or other");
            def.gold.push_back({g.at("message_id").get<std::string>(), *l});
        }
        auto& cfg = def.config;
        const json overrides = j.value("config", json::object());
        for (const auto& [k, v] : overrides.items()) {
            if (k == "min_gold") cfg.min_gold = v.get<std::size_t>();
            else if (k == "min_accuracy_percent") cfg.min_accuracy_percent = v.get<int>();
            else if (k == "min_gold_attempts") cfg.min_gold_attempts = v.get<std::size_t>();
            else if (k == "min_judgments") cfg.min_judgments = v.get<std::size_t>();
            else if (k == "max_judgments") cfg.max_judgments = v.get<std::size_t>();
            else if (k == "gold_interval") cfg.gold_interval = v.get<std::size_t>();
            else fail(ErrorKind::InvalidArgument, "unknown config key '" + k + "'");
        }
        *out = new rt_task{annotation::AnnotationTask::create(std::move(def))};
    });
}

rt_status rt_task_load(const char* path, rt_task** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new rt_task{annotation::AnnotationTask::replay(read_file(path))};
    });
}

rt_status rt_task_save(const rt_task* t, const char* path) {
    return guard([&] {
        need(t, "task");
        need(path, "path");
        write_file(path, t->task.event_log());
    });
}

void rt_task_free(rt_task* t) { delete t; }

rt_status rt_task_next(const rt_task* t, const char* worker, char** message_id) {
    return guard([&] {
        need(t, "task");
        need(worker, "worker");
        need(message_id, "message_id");
        const auto n = t->task.next_item(worker);
        *message_id = n ? dup(*n) : nullptr;
    });
}

rt_status rt_task_submit(rt_task* t, const char* worker, const char* message_id, const char* label, const char* token,
                         char** result_json) {
    return guard([&] {
        need(t, "task");
        need(worker, "worker");
        need(message_id, "message_id");
        need(label, "label");
        const auto l = annotation::parse_label(label);
        if (!l) fail(ErrorKind::InvalidArgument, "label must be rumor, clarification or other");
        const auto r = t->task.submit_judgment(worker, message_id, *l, str(token));
        if (result_json) *result_json = dup(pipeline::submit_json(r).dump());
    });
}

rt_status rt_task_close(rt_task* t) {
    return guard([&] {
        need(t, "task");
        t->task.close();
    });
}

rt_status rt_task_import(rt_task* t, const char* judgments_path, char** report_json) {
    return guard([&] {
        need(t, "task");
        need(judgments_path, "path");
        const auto r = annotation::import_judgments(t->task, read_file(judgments_path));
        if (report_json) {
            *report_json = dup(json{{"accepted", r.accepted},
                                    {"rejected", r.rejected},
                                    {"replayed", r.replayed},
                                    {"problems", r.problems}}
                                   .dump());
        }
    });
}

rt_status rt_task_export(const rt_task* t, const rt_corpus* c, char** out) {
    return guard([&] {
        need(t, "task");
        need(c, "corpus");
        std::map<std::string, std::string> texts;
        for (const auto& m : c->state.messages) texts[m.id] = m.text;
        put(out, annotation::export_task(t->task, texts));
    });
}

rt_status rt_task_resolutions(const rt_task* t, char** out) {
    return guard([&] {
        need(t, "task");
        put(out, annotation::resolutions_to_tsv(t->task.resolve_all()));
    });
}

rt_status rt_task_stats(const rt_task* t, char** out) {
    return guard([&] {
        need(t, "task");
        auto j = pipeline::task_stats_json(t->task.stats());
        j["task_id"] = t->task.definition().task_id;
        j["rumor_id"] = t->task.definition().rumor_id;
        j["closed"] = t->task.closed();
        put(out, j.dump());
    });
}

rt_status rt_task_propagate(const rt_task* t, const rt_corpus* c, char** labels_tsv, char** summary_json) {
    return guard([&] {
        need(t, "task");
        need(c, "corpus");
        const auto p = annotation::propagate(t->task.resolve_all(), c->state.dedup.groups);
        if (labels_tsv) *labels_tsv = dup(annotation::labels_to_tsv(p.labeled));
        if (summary_json) *summary_json = dup(pipeline::summary_json(p.summary).dump());
    });
}

rt_status rt_lexicon_build(const char* medical_path, const char* general_path, size_t keep, int truncate_general,
                           char** out) {
    return guard([&] {
        need(medical_path, "medical corpus");
        need(general_path, "general corpus");
        put(out, lexicon::lexicon_to_tsv(lexicon::build_lexicon_files(medical_path, general_path,
                                                                      {keep, truncate_general != 0})));
    });
}

rt_status rt_features_extract(const rt_config* c, const char* ids_path, const char* lexicon_path, char** out) {
    return guard([&] {
        need(c, "config");
        need(ids_path, "ids");
        need(lexicon_path, "lexicon");
        const auto& cfg = c->config;
        const auto ingested = corpus::ingest_file(cfg.corpus, cfg.schema);
        const auto gaz = corpus::Gazetteer::load(cfg.gazetteer_places, cfg.gazetteer_boxes);
        const auto geo = corpus::geolocate_all(ingested.accepted, gaz);
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < ingested.accepted.size(); ++i) pos[ingested.accepted[i].id] = i;
        const auto tables = pipeline::load_feature_tables(cfg.features, lexicon::lexicon_from_tsv(read_file(lexicon_path)),
                                                          gaz.countries());
        std::vector<features::MatrixRow> rows;
        for (const auto& r : tsv_rows(ids_path, "message_id")) {
            if (r.empty() || r[0].empty()) continue;
            const auto it = pos.find(r[0]);
            if (it == pos.end()) fail(ErrorKind::NotFound, "unknown message '" + r[0] + "'");
            features::MatrixRow row;
            row.message_id = r[0];
            std::optional<std::string> country;
            if (geo[it->second]) country = geo[it->second]->country;
            row.values = features::extract(ingested.accepted[it->second], country, tables);
            if (r.size() > 1 && !r[1].empty()) row.label = r[1];
            if (r.size() > 2 && !r[2].empty()) row.topic = r[2];
            rows.push_back(std::move(row));
        }
        put(out, features::matrix_to_csv(rows));
    });
}

rt_status rt_dataset_load(const char* path, rt_dataset** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        const auto rows = features::matrix_from_csv(read_file(path));
        auto d = std::make_unique<rt_dataset>();
        d->data = learn::from_matrix(rows);
        for (const auto& r : rows) {
            if (r.label) d->ids.push_back(r.message_id);
        }
        *out = d.release();
    });
}

void rt_dataset_free(rt_dataset* d) { delete d; }

rt_status rt_dataset_info(const rt_dataset* d, char** out) {
    return guard([&] {
        need(d, "dataset");
        std::set<std::string> topics(d->data.topic.begin(), d->data.topic.end());
        topics.erase("");
        put(out, json{{"rows", d->data.rows()},
                      {"columns", d->data.columns()},
                      {"rumor", d->data.count(learn::kRumor)},
                      {"non_rumor", d->data.count(learn::kNonRumor)},
                      {"names", d->data.names},
                      {"topics", topics}}
                     .dump());
    });
}

rt_status rt_learn_ig(const rt_dataset* d, const char* options_json, char** out) {
    return guard([&] {
        need(d, "dataset");
        const auto o = learn_options(d->data, options_json);
        json ranking = json::array();
        for (const auto& r : learn::rank_by_ig(d->data, o.k == 0 ? d->data.columns() : o.k))
            ranking.push_back({{"feature", d->data.names[r.column]}, {"gain", r.gain}});
        put(out, json{{"ranking", ranking}}.dump());
    });
}

rt_status rt_learn_gbe(const rt_dataset* d, const char* options_json, char** out) {
    return guard([&] {
        need(d, "dataset");
        const auto o = learn_options(d->data, options_json);
        const auto e = learn::greedy_backward_eliminate(d->data, o.spec, o.target, o.seed, o.features, o.inner_folds,
                                                        o.threads);
        json trace = json::array();
        for (const auto& s : e.trace) {
            trace.push_back({{"removed", d->data.names[s.removed]}, {"weighted_f", s.score}, {"remaining", s.before.size() - 1}});
        }
        put(out, json{{"algorithm", learn::to_string(o.spec.algorithm)},
                      {"selected", pipeline::column_names(d->data, e.selected)},
                      {"trace", trace}}
                     .dump());
    });
}

rt_status rt_learn_cv(const rt_dataset* d, const char* options_json, char** out) {
    return guard([&] {
        need(d, "dataset");
        const auto o = learn_options(d->data, options_json);
        auto j = pipeline::eval_report_json(learn::cross_validate(d->data, o.spec, o.features, o.folds, o.seed));
        j["algorithm"] = learn::to_string(o.spec.algorithm);
        j["folds"] = o.folds;
        put(out, j.dump());
    });
}

rt_status rt_learn_loto(const rt_dataset* d, const char* options_json, char** out) {
    return guard([&] {
        need(d, "dataset");
        const auto o = learn_options(d->data, options_json);
        put(out, json{{"algorithm", learn::to_string(o.spec.algorithm)},
                      {"topics", pipeline::topic_results_json(learn::leave_one_topic_out(d->data, o.spec, o.features, o.seed))}}
                     .dump());
    });
}

rt_status rt_model_train(const rt_dataset* d, const char* options_json, rt_model** out) {
    return guard([&] {
        need(d, "dataset");
        need(out, "out");
        const auto o = learn_options(d->data, options_json);
        *out = new rt_model{learn::train(d->data, o.spec.algorithm, o.features, o.spec.params, o.seed)};
    });
}

rt_status rt_model_load(const char* path, rt_model** out) {
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new rt_model{learn::model_from_json(read_file(path))};
    });
}

rt_status rt_model_save(const rt_model* m, const char* path) {
    return guard([&] {
        need(m, "model");
        need(path, "path");
        write_file(path, learn::model_to_json(m->model));
    });
}

void rt_model_free(rt_model* m) { delete m; }

rt_status rt_model_predict(const rt_model* m, const rt_dataset* d, char** out) {
    return guard([&] {
        need(m, "model");
        need(d, "dataset");
        for (std::size_t i = 0; i < m->model.features.size(); ++i) {
            const auto c = m->model.features[i];
            if (c >= d->data.columns() || d->data.names[c] != m->model.feature_names[i])
                fail(ErrorKind::InvalidArgument, "dataset columns do not match the model");
        }
        json rows = json::array();
        for (std::size_t r = 0; r < d->data.rows(); ++r) {
            const auto p = m->model.predict_proba(d->data.x[r]);
            rows.push_back({{"message_id", d->ids[r]},
                            {"rumor_probability", p[learn::kRumor]},
                            {"predicted", learn::class_name(m->model.predict(d->data.x[r]))}});
        }
        put(out, rows.dump());
    });
}

rt_status rt_timeline_build(const char* events_path, const char* start, const char* end, const char* out_dir,
                            char** out) {
    return guard([&] {
        need(events_path, "events");
        need(out_dir, "out_dir");
        std::vector<timeline::LabeledEvent> events;
        for (const auto& r : tsv_rows(events_path, "rumor_id")) {
            if (r.size() != 3) fail(ErrorKind::Parse, "events file: expected rumor_id<TAB>label<TAB>created_at");
            const auto l = annotation::parse_label(r[1]);
            if (!l) fail(ErrorKind::Parse, "events file: bad label '" + r[1] + "'");
            events.push_back({r[0], *l, parse_timestamp(r[2])});
        }
        auto range = timeline::span(events);
        if (!range && (!start || !end)) fail(ErrorKind::InvalidArgument, "no events and no explicit date range");
        if (!range) range = timeline::DateRange{};
        if (start) range->first_day = parse_date(start);
        if (end) range->last_day = parse_date(end);
        const auto binned = timeline::bin_daily(events, *range, {});
        const auto corr = timeline::correlations(binned);
        const std::filesystem::path dir(out_dir);
        json rows = json::array();
        for (std::size_t i = 0; i < corr.size(); ++i) {
            const auto& rs = binned.series[2 * i];
            const auto& cs = binned.series[2 * i + 1];
            write_file(dir / (rs.rumor_id + ".csv"), timeline::series_to_csv(rs, cs));
            write_file(dir / (rs.rumor_id + ".svg"), timeline::plot_svg(rs, cs, corr[i].r));
            rows.push_back({{"rumor_id", corr[i].rumor_id},
                            {"rumor_total", corr[i].rumor_total},
                            {"clarification_total", corr[i].clarification_total},
                            {"pearson_r", pipeline::optional_number(corr[i].r)}});
        }
        write_file(dir / "correlations.csv", timeline::correlations_to_csv(corr));
        if (out) *out = dup(json{{"out_of_range", binned.out_of_range}, {"rumors", rows}}.dump());
    });
}

rt_status rt_pearson(const double* a, const double* b, size_t n, double* r, int* defined) {
    return guard([&] {
        need(r, "r");
        need(defined, "defined");
        if (n > 0) {
            need(a, "a");
            need(b, "b");
        }
        const auto v = timeline::pearson(std::vector<double>(a, a + n), std::vector<double>(b, b + n));
        *defined = v ? 1 : 0;
        *r = v ? *v : 0.0;
    });
}

rt_status rt_service_create(const rt_config* c, const char* data_dir, rt_service** out) {
    return guard([&] {
        need(c, "config");
        need(out, "out");
        const std::filesystem::path dir = data_dir ? std::filesystem::path(data_dir) : pipeline::data_dir_for(c->config);
        *out = new rt_service{std::make_unique<pipeline::Service>(c->config, dir)};
    });
}

void rt_service_free(rt_service* s) { delete s; }

rt_status rt_service_request(rt_service* s, const char* method, const char* path, const char* query_string,
                             const char* body, int* http_status, char** response_body) {
    return guard([&] {
        need(s, "service");
        need(method, "method");
        need(path, "path");
        need(http_status, "http_status");
        std::map<std::string, std::string> params;
        if (query_string) {
            for (const auto& kv : split(query_string, '&')) {
                if (kv.empty()) continue;
                const auto eq = kv.find('=');
                if (eq == std::string::npos) params[url_decode(kv)] = "";
                else params[url_decode(kv.substr(0, eq))] = url_decode(kv.substr(eq + 1));
            }
        }
        const auto r = s->service->handle(method, path, params, str(body));
        *http_status = r.status;
        put(response_body, r.body);
    });
}

rt_status rt_service_listen(rt_service* s, const char* host, int port) {
    return guard([&] {
        need(s, "service");
        s->service->listen(host ? host : "127.0.0.1", port);
    });
}

rt_status rt_service_stop(rt_service* s) {
    return guard([&] {
        need(s, "service");
        s->service->stop();
    });
}

int rt_service_port(const rt_service* s) { return s ? s->service->bound_port() : 0; }

}  // extern "C"
