#pragma once

#include <map>
#include <string>
#include <vector>

#include "corpus/message.hpp"

namespace rumortrack::corpus {

struct NormalizedMessage {
    std::string message_id;
    std::string canonical_text;
    std::string duplicate_group;  // id of the group's representative message
};

struct DuplicateGroup {
    std::string representative;
    std::vector<std::string> members;  // includes the representative, in input order
};

struct DedupResult {
    std::vector<NormalizedMessage> normalized;  // parallel to the input
    std::vector<DuplicateGroup> groups;         // ordered by (representative created_at, id)

    const DuplicateGroup* group_of_representative(const std::string& id) const;
};

// Groups messages whose canonical text is byte-identical. The representative
// is the earliest message, ties broken by the smallest id.
DedupResult dedup(const std::vector<Message>& messages);

std::string normalized_to_tsv(const std::vector<NormalizedMessage>& rows);
std::vector<NormalizedMessage> normalized_from_tsv(const std::string& content);

// Rebuilds groups from a normalized table (used when loading persisted runs).
std::vector<DuplicateGroup> groups_from_normalized(const std::vector<NormalizedMessage>& rows);

}  // namespace rumortrack::corpus
