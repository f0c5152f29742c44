#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "annotation/task.hpp"
#include "corpus/ingest.hpp"
#include "learn/evaluate.hpp"

namespace rumortrack::pipeline {

struct RumorConfig {
    std::string id;
    std::string description;
    std::string query;
    std::string provenance;
};

struct SimulatedWorker {
    std::string id;
    double accuracy = 0.9;  // chance of giving the true label
};

struct AnnotationSettings {
    std::string mode = "simulate";  // simulate | import
    std::filesystem::path truth;       // simulate: message_id<TAB>label
    std::vector<SimulatedWorker> workers;
    std::filesystem::path judgments_dir;  // import: <rumor>.tsv per rumor, gold in <rumor>.gold.tsv
    std::size_t gold_count = 20;
    std::size_t cap = 1000;
    std::size_t head = 700;
    annotation::AnnotationConfig task;
};

struct LexiconSettings {
    std::filesystem::path corpus_m, corpus_w;
    std::size_t keep = 13300;
    bool truncate_general = true;
};

struct FeatureSettings {
    std::filesystem::path sentiment, tags, vocabulary, domains, wikipedia_domains, redirects;
};

struct LearnSettings {
    std::vector<learn::Algorithm> algorithms{learn::Algorithm::NaiveBayes, learn::Algorithm::RandomForest,
                                             learn::Algorithm::RandomTree};
    learn::Algorithm gbe_algorithm = learn::Algorithm::RandomTree;
    learn::Selector nested_selector = learn::Selector::InfoGain;
    std::size_t folds = 10;
    std::size_t gbe_target = 10;
    std::size_t gbe_inner_folds = 5;
    std::size_t ig_top = 10;
    learn::Hyperparams params;
};

struct Config {
    std::filesystem::path base_dir;  // relative paths resolve against this
    std::string run_id = "run";
    std::uint64_t seed = 1;
    std::string language = "en";
    std::filesystem::path corpus;
    corpus::SchemaConfig schema;
    std::filesystem::path gazetteer_places, gazetteer_boxes;
    std::vector<RumorConfig> rumors;
    AnnotationSettings annotation;
    LexiconSettings lexicon;
    FeatureSettings features;
    LearnSettings learn;
    std::size_t query_top = 10;
    std::optional<std::string> timeline_start, timeline_end;  // YYYY-MM-DD

    std::string canonical_json;  // resolved config as written to the run directory
    std::uint64_t hash() const;
};

// Parses and validates (every query must parse, ids unique, head <= cap).
// Throws Error(Config) with the offending field named.
Config load_config(const std::filesystem::path& path);
Config parse_config(const std::string& text, const std::filesystem::path& base_dir);

// Applies RUMORTRACK_SEED when set.
void apply_environment(Config& c);

std::string hash_hex(std::uint64_t h);

}  // namespace rumortrack::pipeline
