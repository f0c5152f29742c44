#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "learn/info_gain.hpp"
#include "learn/models.hpp"

namespace rumortrack::learn {

// confusion[actual][predicted]
using Confusion = std::array<std::array<std::size_t, kClassCount>, kClassCount>;

struct ClassMetrics {
    // Absent when the denominator is zero; averages then use 0.
    std::optional<double> precision, recall, f_measure;
    std::size_t support = 0;  // actual rows of the class
};

struct EvalReport {
    Confusion confusion{};
    std::array<ClassMetrics, kClassCount> per_class;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f = 0.0;
    std::size_t rows = 0;
};

EvalReport report_from_confusion(const Confusion& c);

struct ClassifierSpec {
    Algorithm algorithm = Algorithm::RandomTree;
    Hyperparams params;
};

// Fold of each row: per class, rows are shuffled with `seed` and dealt round
// robin. Throws Error(InvalidArgument) when a class has fewer rows than folds.
std::vector<std::size_t> stratified_folds(const Dataset& d, std::size_t folds, std::uint64_t seed);

// Held-out predictions pooled over all folds.
EvalReport cross_validate(const Dataset& d, const ClassifierSpec& spec, const std::vector<std::size_t>& features,
                          std::size_t folds, std::uint64_t seed);

struct TopicResult {
    std::string topic;
    std::size_t rows = 0;
    ClassMetrics rumor;  // rumor-class metrics on the held-out topic
    bool zero_support = false;  // no rumor rows in the topic
};

// Throws Error(InvalidArgument) with fewer than two topics.
std::vector<TopicResult> leave_one_topic_out(const Dataset& d, const ClassifierSpec& spec,
                                             const std::vector<std::size_t>& features, std::uint64_t seed);

struct EliminationStep {
    std::vector<std::size_t> before;
    std::vector<std::pair<std::size_t, double>> candidates;  // removed column, weighted F without it
    std::size_t removed = 0;
    double score = 0.0;
};

struct Elimination {
    std::vector<std::size_t> selected;  // ascending column order
    std::vector<EliminationStep> trace;
};

// Removes one column per step, each time the one whose removal gives the best
// internal-CV weighted F (ties: lowest column). Candidate evaluations within a
// step share the fold assignment and may run on `threads` workers (0 = auto).
Elimination greedy_backward_eliminate(const Dataset& d, const ClassifierSpec& spec, std::size_t target_size,
                                      std::uint64_t seed, std::vector<std::size_t> start = {},
                                      std::size_t inner_folds = 5, std::size_t threads = 0);

enum class Selector { None, InfoGain, Backward };
std::string_view to_string(Selector s);
Selector parse_selector(std::string_view s);

struct ProtocolResult {
    std::string protocol;  // "full_data_selection" or "nested_selection"
    bool overfit_warning = false;
    std::vector<std::size_t> selected;  // full-data protocol only
    std::vector<std::vector<std::size_t>> fold_selected;  // nested protocol, per outer fold
    EvalReport report;
};

// Feature selection on the whole dataset, then CV on the selected columns.
ProtocolResult full_data_protocol(const Dataset& d, const ClassifierSpec& spec, Selector selector,
                                  std::size_t target_size, std::size_t folds, std::uint64_t seed);
// Selection repeated inside each outer training fold.
ProtocolResult nested_protocol(const Dataset& d, const ClassifierSpec& spec, Selector selector,
                               std::size_t target_size, std::size_t folds, std::uint64_t seed);

std::vector<std::size_t> select_features(const Dataset& d, const ClassifierSpec& spec, Selector selector,
                                         std::size_t target_size, std::uint64_t seed);

}  // namespace rumortrack::learn
