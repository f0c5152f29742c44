#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "corpus/message.hpp"
#include "features/catalog.hpp"
#include "features/text_metrics.hpp"
#include "lexicon/domains.hpp"

namespace rumortrack::features {

using FeatureVector = std::array<double, kSlotCount>;

struct FeatureTables {
    SentimentLexicon sentiment;
    TagDictionary tags;
    Vocabulary vocabulary;
    std::unordered_set<std::string> medical;
    lexicon::DomainTable domains;
    std::map<std::string, std::string> redirects;  // short URL -> target, followed before classification
    std::vector<std::string> countries;            // sorted; id = position + 1, 0 = unknown

    std::size_t country_id(const std::optional<std::string>& code) const;
};

// URLs of a message: the urls field, or http(s) tokens of the raw text when
// the field is empty.
std::vector<std::string> message_urls(const corpus::Message& m);

// Hashtags written in the raw text: '#' not preceded by a word character and
// followed by at least one letter, digit or '_'.
std::size_t count_hashtags(std::string_view raw_text);
bool has_mention(const corpus::Message& m);

FeatureVector extract(const corpus::Message& m, const std::optional<std::string>& country, const FeatureTables& tables);

struct MatrixRow {
    std::string message_id;
    FeatureVector values{};
    std::optional<std::string> label;
    std::optional<std::string> topic;
};

// message_id, the 48 slot names, then label and topic when any row has them.
// Doubles are written in shortest round-trip form.
std::string matrix_to_csv(const std::vector<MatrixRow>& rows);
std::vector<MatrixRow> matrix_from_csv(const std::string& content);

}  // namespace rumortrack::features
