#pragma once

#include <map>
#include <string>
#include <vector>

#include "annotation/task.hpp"
#include "corpus/dedup.hpp"
#include "util/time.hpp"

namespace rumortrack::annotation {

struct Hit {
    std::string id;
    std::int64_t retweet_count = 0;
    Timestamp created_at = 0;
};

// All hits when there are at most `cap`; otherwise the `head` most retweeted
// (created_at, id as tie-breaks) followed by cap - head drawn uniformly
// without replacement from the rest. Both parts keep rank order. The result
// does not depend on the order of `hits`.
// Throws Error(Config) when head > cap.
std::vector<std::string> sample_candidates(std::vector<Hit> hits, std::size_t cap, std::size_t head,
                                           std::uint64_t seed);

struct LabeledMessage {
    std::string message_id;
    std::string representative;
    Label label;
};

struct PropagationSummary {
    Tally unique;      // resolved representatives per class
    Tally propagated;  // labeled messages per class
    std::size_t unresolved_groups = 0;
    std::size_t unlabeled_messages = 0;
    std::size_t candidate_groups = 0;
};

struct Propagation {
    std::vector<LabeledMessage> labeled;  // ordered by message id
    PropagationSummary summary;
};

// Copies each resolved representative's label onto its duplicate group.
// Unresolved resolutions leave their group unlabeled. Throws
// Error(InvalidArgument) when a resolution is not a group representative.
Propagation propagate(const std::vector<Resolution>& resolutions, const std::vector<corpus::DuplicateGroup>& groups);

// Labeled messages back into a map, e.g. to apply propagation twice.
std::map<std::string, Label> label_map(const std::vector<LabeledMessage>& labeled);

std::string labels_to_tsv(const std::vector<LabeledMessage>& labeled);
std::vector<LabeledMessage> labels_from_tsv(const std::string& content);

std::string resolutions_to_tsv(const std::vector<Resolution>& resolutions);

// External platform exchange. Export: message_id, is_gold, gold_label, text.
// Import: worker_id, message_id, label and an optional idempotency token.
std::string export_task(const AnnotationTask& task, const std::map<std::string, std::string>& texts);

struct ImportReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t replayed = 0;
    std::vector<std::string> problems;  // "line N: reason"
};
ImportReport import_judgments(AnnotationTask& task, const std::string& content);

}  // namespace rumortrack::annotation
