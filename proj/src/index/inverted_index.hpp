#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "index/query.hpp"
#include "util/time.hpp"

namespace rumortrack::index {

using DocId = std::uint32_t;

struct Posting {
    DocId doc;
    std::vector<std::uint32_t> positions;  // strictly increasing token offsets

    bool operator==(const Posting&) const = default;
};

struct Document {
    std::string message_id;
    std::string canonical_text;
};

// Positional inverted index. Doc ids are positions in the build input.
// Hashtag tokens are posted twice at the same offset: as "#tag" and "tag".
class InvertedIndex {
public:
    static InvertedIndex build(const std::vector<Document>& docs);

    std::size_t document_count() const { return message_ids_.size(); }
    const std::string& message_id(DocId doc) const { return message_ids_.at(doc); }
    const std::vector<std::string>& message_ids() const { return message_ids_; }

    // Empty for unknown tokens.
    const std::vector<Posting>& postings(std::string_view token) const;
    std::vector<DocId> docs_with(std::string_view token) const;
    std::vector<DocId> docs_with_phrase(const std::vector<std::string>& tokens) const;

    // Evaluates a validated query; result sorted ascending.
    std::vector<DocId> evaluate(const QueryNode& q) const;

    const std::map<std::string, std::vector<Posting>, std::less<>>& terms() const { return terms_; }

    std::string serialize() const;
    static InvertedIndex deserialize(std::string_view text);

    bool operator==(const InvertedIndex&) const = default;

private:
    std::vector<std::string> message_ids_;
    std::map<std::string, std::vector<Posting>, std::less<>> terms_;
};

std::vector<DocId> set_union(const std::vector<DocId>& a, const std::vector<DocId>& b);
std::vector<DocId> set_intersection(const std::vector<DocId>& a, const std::vector<DocId>& b);
std::vector<DocId> set_difference(const std::vector<DocId>& a, const std::vector<DocId>& b);

struct RankKey {
    std::string id;
    std::int64_t retweet_count = 0;
    Timestamp created_at = 0;
};

// First k entries ordered by retweet count (desc), then created_at (asc),
// then id (asc). k larger than the input returns everything.
std::vector<std::string> top_k(std::vector<RankKey> candidates, std::size_t k);

}  // namespace rumortrack::index
