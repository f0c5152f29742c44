#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "annotation/workflow.hpp"
#include "corpus/dedup.hpp"
#include "corpus/geolocate.hpp"
#include "corpus/ingest.hpp"
#include "features/extract.hpp"
#include "index/inverted_index.hpp"
#include "lexicon/lexicon.hpp"
#include "pipeline/config.hpp"

namespace rumortrack::pipeline {

// Language-filtered corpus with everything retrieval needs.
struct CorpusState {
    std::vector<corpus::Message> messages;
    corpus::DedupResult dedup;
    index::InvertedIndex index;
    std::unordered_map<std::string, std::size_t> position;  // message id -> index in messages

    const corpus::Message& message(const std::string& id) const { return messages.at(position.at(id)); }
};

CorpusState build_corpus_state(std::vector<corpus::Message> messages);
std::vector<corpus::Message> filter_language(const std::vector<corpus::Message>& all, const std::string& language);

struct QueryAnswer {
    std::string canonical;
    std::vector<std::string> ids;  // corpus order, or rank order when top_k was given
    std::size_t count = 0;         // all hits
};

// Throws QuerySyntaxError for bad queries. top_k = 0 returns every hit.
QueryAnswer answer_query(const CorpusState& state, const std::string& query, std::size_t top_k);

// Unique duplicate-group representatives among the hits, with rank keys.
std::vector<annotation::Hit> unique_hits(const CorpusState& state, const std::vector<std::string>& hit_ids);

// Runs the whole pipeline into `run_dir` and returns the report JSON.
// Throws Error(State) naming the failed stage; artifacts of finished stages
// and run.json (with the failure) are kept.
std::string run_pipeline(const Config& config, const std::filesystem::path& run_dir);

// Lookup tables for feature extraction; the medical lexicon comes from `lex`.
features::FeatureTables load_feature_tables(const FeatureSettings& f, const std::vector<lexicon::LexiconEntry>& lex,
                                           std::vector<std::string> countries);

// RUMORTRACK_DATA_DIR, else <config dir>/runs.
std::filesystem::path data_dir_for(const Config& config);

}  // namespace rumortrack::pipeline
