// Command-line front end. Talks to the library only through the C API.
#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rumortrack/rumortrack.h"

using nlohmann::json;

namespace {

struct Failure {
    rt_status status;
};

void check(rt_status s) {
    if (s != RT_OK) throw Failure{s};
}

// Owns a library string.
std::string take(char* s) {
    if (!s) return {};
    std::string out(s);
    rt_string_free(s);
    return out;
}

template <typename T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
    T** out() { return &p; }
    T* get() const { return p; }
};

using Config = Handle<rt_config, rt_config_free>;
using Corpus = Handle<rt_corpus, rt_corpus_free>;
using Task = Handle<rt_task, rt_task_free>;
using Dataset = Handle<rt_dataset, rt_dataset_free>;
using Model = Handle<rt_model, rt_model_free>;
using Service = Handle<rt_service, rt_service_free>;

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) {
        std::cerr << "error: cannot write " << path << '\n';
        throw Failure{RT_ERR_IO};
    }
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

json config_info(const Config& c) {
    char* s = nullptr;
    check(rt_config_info(c.get(), &s));
    return json::parse(take(s));
}

std::string rumor_query(const json& info, const std::string& id) {
    for (const auto& r : info["rumors"]) {
        if (r["id"] == id) return r["query"];
    }
    std::cerr << "error: no rumor '" << id << "' in the config\n";
    throw Failure{RT_ERR_NOT_FOUND};
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// First column of a TSV, header "message_id" skipped.
std::vector<std::string> id_column(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot read " << path << '\n';
        throw Failure{RT_ERR_IO};
    }
    std::vector<std::string> out;
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto id = line.substr(0, line.find('\t'));
        if (id.empty() || id == "message_id" || id[0] == '#') continue;
        out.push_back(id);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> pair_rows(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "error: cannot read " << path << '\n';
        throw Failure{RT_ERR_IO};
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto tab = line.find('\t');
        if (line.empty() || line[0] == '#' || tab == std::string::npos) continue;
        auto first = line.substr(0, tab);
        if (first == "message_id") continue;
        out.emplace_back(first, line.substr(tab + 1, line.find('\t', tab + 1) - tab - 1));
    }
    return out;
}

struct LearnArgs {
    std::string matrix, algorithm, features, out, model;
    std::size_t folds = 10, target = 10, inner_folds = 5, threads = 0, k = 10;
    std::uint64_t seed = 1;
    std::size_t forest_size = 100, min_leaf = 2, k_features = 0, max_depth = 0;
    bool no_bootstrap = false;
};

std::string learn_options(const LearnArgs& a) {
    json o{{"folds", a.folds}, {"seed", a.seed}, {"target", a.target}, {"inner_folds", a.inner_folds},
           {"threads", a.threads}, {"k", a.k}, {"forest_size", a.forest_size}, {"min_leaf", a.min_leaf},
           {"k_features", a.k_features}, {"max_depth", a.max_depth}, {"bootstrap", !a.no_bootstrap}};
    if (!a.algorithm.empty()) o["algorithm"] = a.algorithm;
    if (!a.features.empty()) o["features"] = split_list(a.features);
    return o.dump();
}

void add_learn_options(CLI::App* c, LearnArgs& a, bool with_model_options) {
    c->add_option("--matrix", a.matrix, "feature matrix CSV")->required();
    c->add_option("--out,-o", a.out, "output file (default stdout)");
    c->add_option("--seed", a.seed);
    if (!with_model_options) return;
    c->add_option("--algorithm,-a", a.algorithm, "naive_bayes | random_tree | random_forest");
    c->add_option("--features", a.features, "comma-separated feature names (default all)");
    c->add_option("--folds", a.folds);
    c->add_option("--forest-size", a.forest_size);
    c->add_option("--min-leaf", a.min_leaf);
    c->add_option("--k-features", a.k_features);
    c->add_option("--max-depth", a.max_depth);
    c->add_flag("--no-bootstrap", a.no_bootstrap);
}

sigset_t stop_signals() {
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    return set;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rumortrack: health rumor tracking pipeline"};
    app.require_subcommand(1);
    std::function<void()> action;

    std::string config_path, out, out_dir, data_dir;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "read raw records into a corpus snapshot");
    std::string input, language = "en", places, boxes, field_names;
    ingest->add_option("--config,-c", config_path, "pipeline config (corpus, schema, gazetteer)");
    ingest->add_option("--input,-i", input, "JSONL records (instead of --config)");
    ingest->add_option("--language", language, "language kept for the index");
    ingest->add_option("--places", places);
    ingest->add_option("--boxes", boxes);
    ingest->add_option("--field-names", field_names, "JSON object mapping canonical to source field names");
    ingest->add_option("--out,-o", out_dir, "output directory")->required();
    ingest->callback([&] {
        action = [&] {
            Corpus corpus;
            if (!config_path.empty()) {
                Config cfg;
                check(rt_config_load(config_path.c_str(), cfg.out()));
                check(rt_corpus_from_config(cfg.get(), corpus.out()));
                const auto info = config_info(cfg);
                if (places.empty()) places = info["gazetteer"]["places"];
                if (boxes.empty()) boxes = info["gazetteer"]["boxes"];
            } else if (!input.empty()) {
                check(rt_corpus_ingest(input.c_str(), opt(field_names), language.c_str(), corpus.out()));
            } else {
                std::cerr << "error: give --config or --input\n";
                throw Failure{RT_ERR_INVALID_ARGUMENT};
            }
            check(rt_corpus_write(corpus.get(), out_dir.c_str()));
            char* s = nullptr;
            check(rt_corpus_stats(corpus.get(), opt(places), opt(boxes), &s));
            write_out(out_dir + "/stats.json", take(s));
            if (!places.empty() && !boxes.empty()) {
                check(rt_corpus_geolocate(corpus.get(), places.c_str(), boxes.c_str(), &s));
                write_out(out_dir + "/geo.tsv", take(s));
            }
            check(rt_corpus_summary(corpus.get(), &s));
            write_out("-", take(s));
        };
    });

    // index
    auto* idx = app.add_subcommand("index", "normalize, deduplicate and index a snapshot");
    std::string snapshot;
    idx->add_option("--snapshot,-s", snapshot, "corpus snapshot JSONL")->required();
    idx->add_option("--language", language);
    idx->add_option("--out,-o", out_dir, "output directory")->required();
    idx->callback([&] {
        action = [&] {
            Corpus corpus;
            check(rt_corpus_from_snapshot(snapshot.c_str(), language.c_str(), corpus.out()));
            check(rt_corpus_write(corpus.get(), out_dir.c_str()));
            char* s = nullptr;
            check(rt_corpus_summary(corpus.get(), &s));
            write_out("-", take(s));
        };
    });

    // query
    auto* query = app.add_subcommand("query", "parse and evaluate rumor queries");
    query->require_subcommand(1);
    std::string query_text, rumor;
    std::size_t top = 0;
    bool as_json = false;
    auto* qparse = query->add_subcommand("parse", "print the canonical form and tree");
    qparse->add_option("query", query_text)->required();
    qparse->callback([&] {
        action = [&] {
            char* s = nullptr;
            check(rt_query_parse(query_text.c_str(), &s));
            write_out("-", take(s));
        };
    });
    auto* qrun = query->add_subcommand("run", "evaluate a query over the configured corpus");
    qrun->add_option("--config,-c", config_path)->required();
    qrun->add_option("--name,-n", rumor, "rumor id from the config");
    qrun->add_option("--query,-q", query_text, "query string");
    qrun->add_option("--top,-k", top, "rank by retweets and keep the first N (0 = all, corpus order)");
    qrun->add_flag("--json", as_json, "print the same JSON as POST /queries/evaluate");
    qrun->add_option("--out,-o", out);
    qrun->callback([&] {
        action = [&] {
            Config cfg;
            check(rt_config_load(config_path.c_str(), cfg.out()));
            const auto info = config_info(cfg);
            std::vector<std::pair<std::string, std::string>> queries;
            if (!query_text.empty()) queries.emplace_back("query", query_text);
            else if (!rumor.empty()) queries.emplace_back(rumor, rumor_query(info, rumor));
            else
                for (const auto& r : info["rumors"]) queries.emplace_back(r["id"], r["query"]);
            Corpus corpus;
            check(rt_corpus_from_config(cfg.get(), corpus.out()));
            std::string text;
            for (const auto& [name, q] : queries) {
                char* s = nullptr;
                check(rt_corpus_query(corpus.get(), q.c_str(), top, &s));
                const auto body = take(s);
                if (as_json) {
                    text += body + '\n';
                    continue;
                }
                const auto hits = json::parse(body);
                for (const auto& id : hits["ids"]) {
                    text += (queries.size() > 1 ? name + '\t' : std::string()) + id.get<std::string>() + '\n';
                }
            }
            write_out(out, text);
        };
    });

    // annot
    auto* annot = app.add_subcommand("annot", "annotation tasks");
    annot->require_subcommand(1);
    std::string task_path, gold, candidates, task_id, judgments, worker, message, label, token;
    auto* acreate = annot->add_subcommand("create", "create a task from a rumor's query hits");
    acreate->add_option("--config,-c", config_path)->required();
    acreate->add_option("--rumor,-r", rumor)->required();
    acreate->add_option("--gold,-g", gold, "TSV message_id<TAB>label")->required();
    acreate->add_option("--candidates", candidates, "explicit candidate ids (default: sampled hits)");
    acreate->add_option("--task-id", task_id);
    acreate->add_option("--out,-o", task_path, "task event log")->required();
    acreate->callback([&] {
        action = [&] {
            Config cfg;
            check(rt_config_load(config_path.c_str(), cfg.out()));
            const auto info = config_info(cfg);
            json def{{"task_id", task_id.empty() ? "task-" + rumor : task_id}, {"rumor_id", rumor}};
            for (const auto& r : info["rumors"]) {
                if (r["id"] == rumor) def["instruction"] = r["description"];
            }
            def["config"] = info["annotation"]["config"];
            if (!candidates.empty()) {
                def["candidates"] = id_column(candidates);
            } else {
                Corpus corpus;
                check(rt_corpus_from_config(cfg.get(), corpus.out()));
                char* s = nullptr;
                const std::uint64_t seed = rt_derive_seed(info["seed"].get<std::uint64_t>(), ("sample:" + rumor).c_str());
                check(rt_corpus_sample(corpus.get(), rumor_query(info, rumor).c_str(), info["annotation"]["cap"],
                                       info["annotation"]["head"], seed, &s));
                def["candidates"] = json::parse(take(s));
            }
            json g = json::array();
            for (const auto& [id, l] : pair_rows(gold)) g.push_back({{"message_id", id}, {"label", l}});
            def["gold"] = g;
            Task t;
            check(rt_task_create(def.dump().c_str(), t.out()));
            check(rt_task_save(t.get(), task_path.c_str()));
            char* s = nullptr;
            check(rt_task_stats(t.get(), &s));
            write_out("-", take(s));
        };
    });
    auto* aexport = annot->add_subcommand("export", "task items for an external platform");
    aexport->add_option("--config,-c", config_path)->required();
    aexport->add_option("--task,-t", task_path)->required();
    aexport->add_option("--out,-o", out);
    aexport->callback([&] {
        action = [&] {
            Config cfg;
            check(rt_config_load(config_path.c_str(), cfg.out()));
            Corpus corpus;
            check(rt_corpus_from_config(cfg.get(), corpus.out()));
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            char* s = nullptr;
            check(rt_task_export(t.get(), corpus.get(), &s));
            write_out(out, take(s));
        };
    });
    auto* aimport = annot->add_subcommand("import", "apply judgments from an external platform");
    aimport->add_option("--task,-t", task_path)->required();
    aimport->add_option("--judgments,-j", judgments, "TSV worker_id, message_id, label[, token]")->required();
    aimport->callback([&] {
        action = [&] {
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            char* s = nullptr;
            check(rt_task_import(t.get(), judgments.c_str(), &s));
            check(rt_task_save(t.get(), task_path.c_str()));
            write_out("-", take(s));
        };
    });
    auto* anext = annot->add_subcommand("next", "next item for a worker");
    anext->add_option("--task,-t", task_path)->required();
    anext->add_option("--worker,-w", worker)->required();
    anext->callback([&] {
        action = [&] {
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            char* s = nullptr;
            check(rt_task_next(t.get(), worker.c_str(), &s));
            write_out("-", s ? take(s) : std::string("none"));
        };
    });
    auto* ajudge = annot->add_subcommand("judge", "record one judgment");
    ajudge->add_option("--task,-t", task_path)->required();
    ajudge->add_option("--worker,-w", worker)->required();
    ajudge->add_option("--message,-m", message)->required();
    ajudge->add_option("--label,-l", label, "rumor | clarification | other")->required();
    ajudge->add_option("--token", token);
    ajudge->callback([&] {
        action = [&] {
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            char* s = nullptr;
            check(rt_task_submit(t.get(), worker.c_str(), message.c_str(), label.c_str(), opt(token), &s));
            check(rt_task_save(t.get(), task_path.c_str()));
            write_out("-", take(s));
        };
    });
    auto* aclose = annot->add_subcommand("close", "stop accepting judgments");
    aclose->add_option("--task,-t", task_path)->required();
    aclose->callback([&] {
        action = [&] {
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            check(rt_task_close(t.get()));
            check(rt_task_save(t.get(), task_path.c_str()));
        };
    });
    auto* aresolve = annot->add_subcommand("resolve", "per-message resolutions");
    aresolve->add_option("--task,-t", task_path)->required();
    aresolve->add_option("--out,-o", out);
    aresolve->callback([&] {
        action = [&] {
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            char* s = nullptr;
            check(rt_task_resolutions(t.get(), &s));
            write_out(out, take(s));
        };
    });
    auto* astats = annot->add_subcommand("stats", "task counters");
    astats->add_option("--task,-t", task_path)->required();
    astats->callback([&] {
        action = [&] {
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            char* s = nullptr;
            check(rt_task_stats(t.get(), &s));
            write_out("-", take(s));
        };
    });
    auto* aprop = annot->add_subcommand("propagate", "copy resolved labels onto duplicate groups");
    aprop->add_option("--config,-c", config_path)->required();
    aprop->add_option("--task,-t", task_path)->required();
    aprop->add_option("--out,-o", out, "labels TSV")->required();
    aprop->callback([&] {
        action = [&] {
            Config cfg;
            check(rt_config_load(config_path.c_str(), cfg.out()));
            Corpus corpus;
            check(rt_corpus_from_config(cfg.get(), corpus.out()));
            Task t;
            check(rt_task_load(task_path.c_str(), t.out()));
            char* labels = nullptr;
            char* summary = nullptr;
            check(rt_task_propagate(t.get(), corpus.get(), &labels, &summary));
            write_out(out, take(labels));
            write_out("-", take(summary));
        };
    });

    // lexicon
    auto* lex = app.add_subcommand("lexicon", "build the medical lexicon");
    std::string medical, general;
    std::size_t keep = 13300;
    bool no_truncate = false;
    lex->add_option("--medical,-m", medical, "specialized corpus, one document per line")->required();
    lex->add_option("--general,-g", general, "general corpus, one document per line")->required();
    lex->add_option("--keep,-k", keep);
    lex->add_flag("--no-truncate", no_truncate, "keep the whole general vocabulary");
    lex->add_option("--out,-o", out);
    lex->callback([&] {
        action = [&] {
            char* s = nullptr;
            check(rt_lexicon_build(medical.c_str(), general.c_str(), keep, no_truncate ? 0 : 1, &s));
            write_out(out, take(s));
        };
    });

    // features
    auto* feat = app.add_subcommand("features", "extract the feature matrix");
    std::string ids, lexicon_path;
    feat->add_option("--config,-c", config_path)->required();
    feat->add_option("--ids", ids, "TSV message_id[, label[, topic]]")->required();
    feat->add_option("--lexicon,-l", lexicon_path)->required();
    feat->add_option("--out,-o", out);
    feat->callback([&] {
        action = [&] {
            Config cfg;
            check(rt_config_load(config_path.c_str(), cfg.out()));
            char* s = nullptr;
            check(rt_features_extract(cfg.get(), ids.c_str(), lexicon_path.c_str(), &s));
            write_out(out, take(s));
        };
    });

    // learn
    auto* learn = app.add_subcommand("learn", "feature selection and classification");
    learn->require_subcommand(1);
    LearnArgs la;
    auto learn_verb = [&](const char* name, const char* help, bool model_opts,
                          std::function<std::string(const Dataset&, const std::string&)> fn) {
        auto* c = learn->add_subcommand(name, help);
        add_learn_options(c, la, model_opts);
        return std::make_pair(c, fn);
    };
    auto run_learn = [&](std::function<std::string(const Dataset&, const std::string&)> fn) {
        return [&, fn] {
            action = [&, fn] {
                Dataset d;
                check(rt_dataset_load(la.matrix.c_str(), d.out()));
                write_out(la.out, fn(d, learn_options(la)));
            };
        };
    };
    {
        auto [c, fn] = learn_verb("ig", "rank features by information gain", false, [](const Dataset& d, const std::string& o) {
            char* s = nullptr;
            check(rt_learn_ig(d.get(), o.c_str(), &s));
            return take(s);
        });
        c->add_option("--top,-k", la.k, "number of features (0 = all)");
        c->callback(run_learn(fn));
    }
    {
        auto [c, fn] = learn_verb("gbe", "greedy backward elimination", true, [](const Dataset& d, const std::string& o) {
            char* s = nullptr;
            check(rt_learn_gbe(d.get(), o.c_str(), &s));
            return take(s);
        });
        c->add_option("--target", la.target);
        c->add_option("--inner-folds", la.inner_folds);
        c->add_option("--threads", la.threads);
        c->callback(run_learn(fn));
    }
    {
        auto [c, fn] = learn_verb("cv", "stratified cross-validation", true, [](const Dataset& d, const std::string& o) {
            char* s = nullptr;
            check(rt_learn_cv(d.get(), o.c_str(), &s));
            return take(s);
        });
        c->callback(run_learn(fn));
    }
    {
        auto [c, fn] = learn_verb("loto", "leave one topic out", true, [](const Dataset& d, const std::string& o) {
            char* s = nullptr;
            check(rt_learn_loto(d.get(), o.c_str(), &s));
            return take(s);
        });
        c->callback(run_learn(fn));
    }
    {
        auto* c = learn->add_subcommand("train", "train a model and save it as JSON");
        add_learn_options(c, la, true);
        c->get_option("--out")->required();
        c->callback([&] {
            action = [&] {
                Dataset d;
                check(rt_dataset_load(la.matrix.c_str(), d.out()));
                Model m;
                check(rt_model_train(d.get(), learn_options(la).c_str(), m.out()));
                check(rt_model_save(m.get(), la.out.c_str()));
            };
        });
    }
    {
        auto* c = learn->add_subcommand("predict", "apply a saved model to a matrix");
        c->add_option("--matrix", la.matrix)->required();
        c->add_option("--model,-m", la.model)->required();
        c->add_option("--out,-o", la.out);
        c->callback([&] {
            action = [&] {
                Dataset d;
                check(rt_dataset_load(la.matrix.c_str(), d.out()));
                Model m;
                check(rt_model_load(la.model.c_str(), m.out()));
                char* s = nullptr;
                check(rt_model_predict(m.get(), d.get(), &s));
                write_out(la.out, take(s));
            };
        });
    }

    // timeline
    auto* tl = app.add_subcommand("timeline", "daily rumor/clarification series and Pearson r");
    std::string events, start, end;
    tl->add_option("--events,-e", events, "TSV rumor_id, label, created_at")->required();
    tl->add_option("--start", start, "YYYY-MM-DD");
    tl->add_option("--end", end, "YYYY-MM-DD");
    tl->add_option("--out,-o", out_dir, "output directory")->required();
    tl->callback([&] {
        action = [&] {
            char* s = nullptr;
            check(rt_timeline_build(events.c_str(), opt(start), opt(end), out_dir.c_str(), &s));
            write_out("-", take(s));
        };
    });

    // run
    auto* run = app.add_subcommand("run", "whole pipeline from a config");
    run->add_option("--config,-c", config_path)->required();
    run->add_option("--data-dir,-d", data_dir, "default: RUMORTRACK_DATA_DIR or <config dir>/runs");
    bool quiet = false;
    run->add_flag("--quiet,-q", quiet, "do not print the report");
    run->callback([&] {
        action = [&] {
            Config cfg;
            check(rt_config_load(config_path.c_str(), cfg.out()));
            char* s = nullptr;
            check(rt_run(cfg.get(), opt(data_dir), &s));
            const auto report = take(s);
            if (!quiet) write_out("-", report);
        };
    });

    // serve
    auto* serve = app.add_subcommand("serve", "HTTP service for the workbench");
    std::string host = "127.0.0.1";
    int port = -1;
    serve->add_option("--config,-c", config_path)->required();
    serve->add_option("--data-dir,-d", data_dir);
    serve->add_option("--host", host);
    serve->add_option("--port,-p", port, "default: RUMORTRACK_PORT or 8080; 0 picks a free port");
    serve->callback([&] {
        action = [&] {
            if (port < 0) {
                const char* p = std::getenv("RUMORTRACK_PORT");
                port = p && *p ? std::atoi(p) : 8080;
            }
            Config cfg;
            check(rt_config_load(config_path.c_str(), cfg.out()));
            Service svc;
            check(rt_service_create(cfg.get(), opt(data_dir), svc.out()));
            sigset_t set = stop_signals();
            pthread_sigmask(SIG_BLOCK, &set, nullptr);
            std::atomic<rt_status> status{RT_OK};
            std::string error;
            std::thread server([&] {
                const rt_status st = rt_service_listen(svc.get(), host.c_str(), port);
                if (st != RT_OK) {
                    error = rt_last_error();
                    status = st;
                    kill(getpid(), SIGTERM);
                }
            });
            while (rt_service_port(svc.get()) == 0 && status == RT_OK) std::this_thread::sleep_for(std::chrono::milliseconds(10));
            if (status == RT_OK) std::cout << "listening on " << host << ':' << rt_service_port(svc.get()) << std::endl;
            int sig = 0;
            sigwait(&set, &sig);
            rt_service_stop(svc.get());
            server.join();
            if (status != RT_OK) {
                std::cerr << "error: " << error << '\n';
                throw Failure{status.load()};
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (action) action();
    } catch (const Failure& f) {
        const char* msg = rt_last_error();
        if (msg && *msg) std::cerr << "error: " << msg << '\n';
        if (long pos = rt_last_error_position(); pos >= 0 && !query_text.empty())
            std::cerr << "  " << query_text << "\n  " << std::string(static_cast<std::size_t>(pos), ' ') << "^\n";
        return 10 + static_cast<int>(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
