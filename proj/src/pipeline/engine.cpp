#include "pipeline/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "corpus/normalize.hpp"
#include "corpus/stats.hpp"
#include "features/extract.hpp"
#include "json.hpp"
#include "learn/evaluate.hpp"
#include "lexicon/lexicon.hpp"
#include "pipeline/views.hpp"
#include "timeline/timeline.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"
#include "util/text_io.hpp"

namespace rumortrack::pipeline {

using nlohmann::json;
using annotation::Label;

std::vector<corpus::Message> filter_language(const std::vector<corpus::Message>& all, const std::string& language) {
    std::vector<corpus::Message> out;
    for (const auto& m : all) {
        if (language.empty() || m.language == language) out.push_back(m);
    }
    return out;
}

CorpusState build_corpus_state(std::vector<corpus::Message> messages) {
    CorpusState s;
    s.messages = std::move(messages);
    s.dedup = corpus::dedup(s.messages);
    std::vector<index::Document> docs;
    docs.reserve(s.messages.size());
    for (std::size_t i = 0; i < s.messages.size(); ++i) {
        s.position.emplace(s.messages[i].id, i);
        docs.push_back({s.messages[i].id, s.dedup.normalized[i].canonical_text});
    }
    s.index = index::InvertedIndex::build(docs);
    return s;
}

QueryAnswer answer_query(const CorpusState& state, const std::string& query, std::size_t top_k) {
    const auto ast = index::parse_query(query);
    QueryAnswer a;
    a.canonical = index::print_query(ast);
    const auto docs = state.index.evaluate(ast);
    a.count = docs.size();
    if (top_k == 0) {
        for (auto d : docs) a.ids.push_back(state.index.message_id(d));
        return a;
    }
    std::vector<index::RankKey> keys;
    for (auto d : docs) {
        const auto& m = state.messages[d];
        keys.push_back({m.id, m.retweet_count, m.created_at});
    }
    a.ids = index::top_k(std::move(keys), top_k);
    return a;
}

std::vector<annotation::Hit> unique_hits(const CorpusState& state, const std::vector<std::string>& hit_ids) {
    std::set<std::string> reps;
    for (const auto& id : hit_ids) reps.insert(state.dedup.normalized[state.position.at(id)].duplicate_group);
    std::vector<annotation::Hit> out;
    for (const auto& r : reps) {
        const auto& m = state.message(r);
        out.push_back({m.id, m.retweet_count, m.created_at});
    }
    return out;
}

features::FeatureTables load_feature_tables(const FeatureSettings& f, const std::vector<lexicon::LexiconEntry>& lex,
                                           std::vector<std::string> countries) {
    features::FeatureTables tables;
    tables.sentiment = features::SentimentLexicon::load(f.sentiment);
    tables.tags = features::TagDictionary::load(f.tags);
    tables.vocabulary = features::load_vocabulary(f.vocabulary);
    tables.medical = lexicon::word_set(lex);
    tables.domains = lexicon::DomainTable::load(f.domains, f.wikipedia_domains);
    if (!f.redirects.empty()) {
        for (const auto& row : read_tsv(f.redirects)) {
            if (row.size() != 2) fail(ErrorKind::Config, "redirect map: expected from<TAB>to");
            tables.redirects[row[0]] = row[1];
        }
    }
    tables.countries = std::move(countries);
    return tables;
}

std::filesystem::path data_dir_for(const Config& config) {
    if (const char* d = std::getenv("RUMORTRACK_DATA_DIR"); d && *d) return d;
    return config.base_dir / "runs";
}

namespace {

class Run {
public:
    Run(const Config& c, std::filesystem::path dir) : config_(c), dir_(std::move(dir)) {}

    template <typename Fn>
    void stage(const std::string& name, Fn&& fn) {
        current_ = name;
        try {
            fn();
            stages_.push_back({{"name", name}, {"status", "ok"}});
        } catch (const std::exception& e) {
            stages_.push_back({{"name", name}, {"status", "failed"}, {"error", e.what()}});
            write_manifest();
            fail(ErrorKind::State, "stage " + name + " failed: " + e.what());
        }
    }

    void put(const std::string& rel, const std::string& content) {
        write_file(dir_ / rel, content);
        artifacts_.push_back({{"path", rel},
                              {"stage", current_},
                              {"bytes", content.size()},
                              {"content_hash", hash_hex(fnv1a64(content))},
                              {"config_hash", hash_hex(config_.hash())}});
    }

    std::uint64_t seed(const std::string& label) {
        const auto s = derive_seed(config_.seed, label);
        seeds_[label] = s;
        return s;
    }

    void write_manifest() {
        json run{{"run_id", config_.run_id},
                 {"config_hash", hash_hex(config_.hash())},
                 {"seed", config_.seed},
                 {"stage_seeds", seeds_},
                 {"stages", stages_},
                 {"artifacts", artifacts_}};
        write_file(dir_ / "run.json", run.dump(2) + '\n');
    }

private:
    const Config& config_;
    std::filesystem::path dir_;
    std::string current_ = "config";
    json stages_ = json::array();
    json artifacts_ = json::array();
    std::map<std::string, std::uint64_t> seeds_;
};

std::map<std::string, Label> load_truth(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorKind::Config, "truth file not found: " + path.string());
    std::map<std::string, Label> out;
    for (const auto& row : read_tsv(path)) {
        const auto l = row.size() == 2 ? annotation::parse_label(row[1]) : std::nullopt;
        if (!l) fail(ErrorKind::Parse, "truth file: expected message_id<TAB>label");
        out[row[0]] = *l;
    }
    return out;
}

struct RumorOutcome {
    RumorConfig rumor;
    std::string canonical_query;
    std::vector<std::string> hits;
    std::size_t unique = 0;
    std::vector<std::string> candidates;
    std::vector<annotation::Resolution> resolutions;
    annotation::Propagation propagation;
    annotation::TaskStats stats;
};

Label simulated_label(Label truth, double accuracy, Rng& rng) {
    if (uniform_unit(rng) < accuracy) return truth;
    const auto other = static_cast<std::size_t>(uniform_below(rng, 2));
    std::vector<Label> rest;
    for (Label l : annotation::kLabels) {
        if (l != truth) rest.push_back(l);
    }
    return rest[other];
}

}  // namespace

std::string run_pipeline(const Config& config, const std::filesystem::path& run_dir) {
    Run run(config, run_dir);
    std::filesystem::create_directories(run_dir);
    run.put("config.json", json::parse(config.canonical_json).dump(2) + '\n');

    corpus::IngestResult ingested;
    std::vector<corpus::Message> filtered;
    CorpusState state;
    std::vector<std::optional<corpus::GeoResult>> geo;
    std::optional<corpus::Gazetteer> gazetteer;
    json report;
    report["run_id"] = config.run_id;
    report["config_hash"] = hash_hex(config.hash());
    report["seed"] = config.seed;

    run.stage("ingest", [&] {
        ingested = corpus::ingest_file(config.corpus, config.schema);
        corpus::write_snapshot(run_dir / "corpus/snapshot.jsonl", ingested.accepted);
        run.put("corpus/snapshot.jsonl", read_file(run_dir / "corpus/snapshot.jsonl"));
        run.put("corpus/rejections.tsv", corpus::rejections_to_tsv(ingested.rejected));
        filtered = filter_language(ingested.accepted, config.language);
        if (filtered.empty()) fail(ErrorKind::InvalidArgument, "no messages in language '" + config.language + "'");
    });

    run.stage("geolocate", [&] {
        gazetteer = corpus::Gazetteer::load(config.gazetteer_places, config.gazetteer_boxes);
        const auto all_geo = corpus::geolocate_all(ingested.accepted, *gazetteer);
        const auto stats = corpus::corpus_stats(ingested.accepted, &all_geo);
        run.put("corpus/geo.tsv", corpus::geo_to_tsv(ingested.accepted, all_geo));
        run.put("corpus/stats.json", corpus::stats_to_json(stats));
        run.put("corpus/stats.txt", corpus::stats_to_table(stats));
        std::map<std::string, std::optional<corpus::GeoResult>> by_id;
        for (std::size_t i = 0; i < ingested.accepted.size(); ++i) by_id[ingested.accepted[i].id] = all_geo[i];
        for (const auto& m : filtered) geo.push_back(by_id[m.id]);
        report["corpus"] = {{"accepted", ingested.accepted.size()},
                            {"rejected", ingested.rejected.size()},
                            {"language", config.language},
                            {"language_messages", filtered.size()},
                            {"stats", json::parse(corpus::stats_to_json(stats))}};
    });

    run.stage("index", [&] {
        state = build_corpus_state(filtered);
        run.put("corpus/normalized.tsv", corpus::normalized_to_tsv(state.dedup.normalized));
        run.put("index/index.txt", state.index.serialize());
        report["corpus"]["duplicate_groups"] = state.dedup.groups.size();
    });

    std::vector<RumorOutcome> outcomes;
    run.stage("query", [&] {
        std::string hits_tsv, top_tsv;
        for (const auto& r : config.rumors) {
            RumorOutcome o;
            o.rumor = r;
            const auto all = answer_query(state, r.query, 0);
            o.canonical_query = all.canonical;
            o.hits = all.ids;
            for (const auto& id : o.hits) hits_tsv += r.id + '\t' + id + '\n';
            for (const auto& id : answer_query(state, r.query, config.query_top).ids) top_tsv += r.id + '\t' + id + '\n';
            outcomes.push_back(std::move(o));
        }
        run.put("queries/hits.tsv", hits_tsv);
        run.put("queries/top.tsv", top_tsv);
    });

    run.stage("annotate", [&] {
        const auto& a = config.annotation;
        std::map<std::string, Label> truth;
        if (a.mode == "simulate") truth = load_truth(a.truth);
        std::map<std::string, std::string> texts;
        for (const auto& m : state.messages) texts[m.id] = m.text;
        json rows = json::array();
        for (auto& o : outcomes) {
            const auto hits = unique_hits(state, o.hits);
            o.unique = hits.size();
            o.candidates = annotation::sample_candidates(hits, a.cap, a.head, run.seed("sample:" + o.rumor.id));

            annotation::TaskDefinition def;
            def.task_id = "task-" + o.rumor.id;
            def.rumor_id = o.rumor.id;
            def.instruction = "Does the message support the rumor \"" + o.rumor.description +
                              "\", debunk it (clarification), or neither (other)?";
            def.candidates = o.candidates;
            def.config = a.task;
            const std::filesystem::path dir = "annotation/" + o.rumor.id;

            if (a.mode == "simulate") {
                std::vector<std::string> with_truth;
                for (const auto& id : o.candidates) {
                    if (truth.count(id)) with_truth.push_back(id);
                }
                std::sort(with_truth.begin(), with_truth.end());
                Rng rng(run.seed("gold:" + o.rumor.id));
                shuffle(with_truth, rng);
                if (with_truth.size() > a.gold_count) with_truth.resize(a.gold_count);
                std::sort(with_truth.begin(), with_truth.end());
                for (const auto& id : with_truth) def.gold.push_back({id, truth.at(id)});
            } else {
                const auto gold_path = a.judgments_dir / (o.rumor.id + ".gold.tsv");
                if (!std::filesystem::exists(gold_path)) fail(ErrorKind::Config, "missing gold file " + gold_path.string());
                for (const auto& row : read_tsv(gold_path)) {
                    const auto l = row.size() == 2 ? annotation::parse_label(row[1]) : std::nullopt;
                    if (!l) fail(ErrorKind::Parse, gold_path.string() + ": expected message_id<TAB>label");
                    def.gold.push_back({row[0], *l});
                }
            }
            auto task = annotation::AnnotationTask::create(def);
            run.put((dir / "export.tsv").string(), annotation::export_task(task, texts));

            if (a.mode == "simulate") {
                Rng rng(run.seed("judge:" + o.rumor.id));
                std::vector<bool> done(a.workers.size(), false);
                std::size_t active = a.workers.size();
                std::size_t n = 0;
                while (active > 0) {
                    for (std::size_t w = 0; w < a.workers.size(); ++w) {
                        if (done[w]) continue;
                        const auto next = task.next_item(a.workers[w].id);
                        if (!next) {
                            done[w] = true;
                            --active;
                            continue;
                        }
                        const auto t = truth.find(*next);
                        const Label real = t == truth.end() ? Label::Other : t->second;
                        task.submit_judgment(a.workers[w].id, *next, simulated_label(real, a.workers[w].accuracy, rng),
                                             "sim-" + std::to_string(++n));
                    }
                }
            } else {
                const auto path = a.judgments_dir / (o.rumor.id + ".tsv");
                const auto rep = annotation::import_judgments(task, read_file(path));
                if (rep.accepted == 0 && rep.rejected > 0)
                    fail(ErrorKind::Parse, path.string() + ": no judgment could be imported");
            }
            task.close();
            o.resolutions = task.resolve_all();
            o.propagation = annotation::propagate(o.resolutions, state.dedup.groups);
            o.stats = task.stats();
            run.put((dir / "events.jsonl").string(), task.event_log());
            run.put((dir / "resolutions.tsv").string(), annotation::resolutions_to_tsv(o.resolutions));
            run.put((dir / "labels.tsv").string(), annotation::labels_to_tsv(o.propagation.labeled));
            const auto& s = o.propagation.summary;
            rows.push_back({{"rumor_id", o.rumor.id},
                            {"hits", o.hits.size()},
                            {"unique_hits", o.unique},
                            {"candidates", o.candidates.size()},
                            {"gold", def.gold.size()},
                            {"unique", tally_json(s.unique)},
                            {"propagated", tally_json(s.propagated)},
                            {"unresolved_groups", s.unresolved_groups},
                            {"unlabeled_messages", s.unlabeled_messages},
                            {"judgments", o.stats.judgments},
                            {"valid_judgments", o.stats.valid_judgments},
                            {"workers", o.stats.workers},
                            {"banned_workers", o.stats.banned_workers},
                            {"agreement", optional_number(o.stats.agreement)}});
        }
        report["annotation"] = rows;
    });

    std::vector<lexicon::LexiconEntry> lex;
    run.stage("lexicon", [&] {
        lex = lexicon::build_lexicon_files(config.lexicon.corpus_m, config.lexicon.corpus_w,
                                           {config.lexicon.keep, config.lexicon.truncate_general});
        run.put("lexicon/lexicon.tsv", lexicon::lexicon_to_tsv(lex));
    });

    learn::Dataset dataset;
    run.stage("features", [&] {
        const auto tables = load_feature_tables(config.features, lex, gazetteer->countries());

        std::vector<features::MatrixRow> rows;
        std::set<std::string> used;
        for (const auto& o : outcomes) {
            for (const auto& r : o.resolutions) {
                if (!r.resolved || !used.insert(r.message_id).second) continue;
                const std::size_t pos = state.position.at(r.message_id);
                std::optional<std::string> country;
                if (geo[pos]) country = geo[pos]->country;
                features::MatrixRow row;
                row.message_id = r.message_id;
                row.values = features::extract(state.messages[pos], country, tables);
                row.label = std::string(annotation::to_string(*r.label));
                row.topic = o.rumor.id;
                rows.push_back(std::move(row));
            }
        }
        run.put("features/matrix.csv", features::matrix_to_csv(rows));
        dataset = learn::from_matrix(rows);
        learn::require_two_classes(dataset, "classification dataset");
    });

    run.stage("learn", [&] {
        const auto& l = config.learn;
        learn::ClassifierSpec gbe_spec{l.gbe_algorithm, l.params};

        const auto ranked = learn::rank_by_ig(dataset, dataset.columns());
        std::string ig_tsv = "rank\tfeature\tgain\n";
        json ig_top = json::array();
        std::vector<std::size_t> ig_cols;
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            ig_tsv += std::to_string(i + 1) + '\t' + dataset.names[ranked[i].column] + '\t' + format_double(ranked[i].gain) + '\n';
            if (i < l.ig_top) {
                ig_top.push_back({{"feature", dataset.names[ranked[i].column]}, {"gain", ranked[i].gain}});
                ig_cols.push_back(ranked[i].column);
            }
        }
        std::sort(ig_cols.begin(), ig_cols.end());
        run.put("learn/ig.tsv", ig_tsv);

        const auto gbe = learn::greedy_backward_eliminate(dataset, gbe_spec, l.gbe_target, run.seed("gbe"), {},
                                                          l.gbe_inner_folds);
        std::string trace = "step\tremoved\tweighted_f\tremaining\n";
        for (std::size_t i = 0; i < gbe.trace.size(); ++i) {
            trace += std::to_string(i + 1) + '\t' + dataset.names[gbe.trace[i].removed] + '\t' +
                     format_double(gbe.trace[i].score) + '\t' + std::to_string(gbe.trace[i].before.size() - 1) + '\n';
        }
        run.put("learn/gbe_trace.tsv", trace);

        json results = json::array();
        const std::vector<std::pair<std::string, std::vector<std::size_t>>> subsets{
            {"all", {}}, {"ig", ig_cols}, {"gbe", gbe.selected}};
        for (auto algo : l.algorithms) {
            learn::ClassifierSpec spec{algo, l.params};
            for (const auto& [name, cols] : subsets) {
                const auto rep = learn::cross_validate(dataset, spec, cols, l.folds,
                                                       run.seed("cv:" + std::string(learn::to_string(algo)) + ":" + name));
                results.push_back({{"algorithm", learn::to_string(algo)},
                                   {"features", name},
                                   {"protocol", "full_data_selection"},
                                   {"overfit_warning", name != "all"},
                                   {"report", eval_report_json(rep)}});
            }
            const auto model = learn::train(dataset, algo, gbe.selected, l.params, run.seed("model:" + std::string(learn::to_string(algo))));
            run.put("models/" + std::string(learn::to_string(algo)) + ".json", learn::model_to_json(model));
        }
        const auto nested = learn::nested_protocol(dataset, gbe_spec, l.nested_selector, l.gbe_target, l.folds,
                                                   run.seed("nested"));
        json fold_sel = json::array();
        for (const auto& s : nested.fold_selected) fold_sel.push_back(column_names(dataset, s));

        const auto loto = topic_results_json(learn::leave_one_topic_out(dataset, gbe_spec, gbe.selected, run.seed("loto")));
        report["classification"] = {
            {"dataset", {{"rows", dataset.rows()}, {"rumor", dataset.count(learn::kRumor)}, {"non_rumor", dataset.count(learn::kNonRumor)}}},
            {"ig_top", ig_top},
            {"gbe", {{"algorithm", learn::to_string(l.gbe_algorithm)}, {"selected", column_names(dataset, gbe.selected)}}},
            {"results", results},
            {"nested", {{"algorithm", learn::to_string(l.gbe_algorithm)},
                        {"selector", learn::to_string(l.nested_selector)},
                        {"protocol", nested.protocol},
                        {"fold_selected", fold_sel},
                        {"report", eval_report_json(nested.report)}}},
            {"leave_one_topic_out", loto}};
        run.put("learn/classification.json", report["classification"].dump(2) + '\n');
    });

    run.stage("timeline", [&] {
        timeline::DateRange range;
        if (config.timeline_start && config.timeline_end) {
            range = {parse_date(*config.timeline_start), parse_date(*config.timeline_end)};
        } else {
            std::vector<timeline::LabeledEvent> all;
            for (const auto& m : state.messages) all.push_back({"", Label::Other, m.created_at});
            range = *timeline::span(all);
            if (config.timeline_start) range.first_day = parse_date(*config.timeline_start);
            if (config.timeline_end) range.last_day = parse_date(*config.timeline_end);
        }
        std::vector<timeline::LabeledEvent> events;
        std::vector<std::string> ids;
        for (const auto& o : outcomes) {
            ids.push_back(o.rumor.id);
            for (const auto& l : o.propagation.labeled)
                events.push_back({o.rumor.id, l.label, state.message(l.message_id).created_at});
        }
        const auto binned = timeline::bin_daily(events, range, ids);
        const auto corr = timeline::correlations(binned);
        for (std::size_t i = 0; i < corr.size(); ++i) {
            const auto& r = binned.series[2 * i];
            const auto& c = binned.series[2 * i + 1];
            run.put("timeline/" + r.rumor_id + ".csv", timeline::series_to_csv(r, c));
            run.put("timeline/" + r.rumor_id + ".svg", timeline::plot_svg(r, c, corr[i].r));
        }
        run.put("timeline/correlations.csv", timeline::correlations_to_csv(corr));
        json rows = json::array();
        for (const auto& r : corr) {
            rows.push_back({{"rumor_id", r.rumor_id},
                            {"rumor_total", r.rumor_total},
                            {"clarification_total", r.clarification_total},
                            {"pearson_r", optional_number(r.r)}});
        }
        report["timeline"] = {{"first_day", format_date(range.first_day)},
                              {"last_day", format_date(range.last_day)},
                              {"out_of_range", binned.out_of_range},
                              {"rumors", rows}};
    });

    json rumors = json::array();
    for (const auto& o : outcomes) {
        rumors.push_back({{"id", o.rumor.id},
                          {"description", o.rumor.description},
                          {"provenance", o.rumor.provenance},
                          {"query", o.rumor.query},
                          {"canonical_query", o.canonical_query}});
    }
    report["rumors"] = rumors;
    report["format"] = "rumortrack-report";
    report["version"] = 1;
    const std::string text = report.dump(2) + '\n';
    run.stage("report", [&] { run.put("report.json", text); });
    run.write_manifest();
    return text;
}

}  // namespace rumortrack::pipeline
