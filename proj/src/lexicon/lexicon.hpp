#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace rumortrack::lexicon {

struct LexiconEntry {
    std::string word;
    double mp = 0.0;
    double wp = 0.0;
    double p = 0.0;
    std::size_t rank = 0;
};

// Lowercase, punctuation removed from inside tokens, tokens with a digit
// dropped. Used both for building and for matching the lexicon.
std::vector<std::string> lexicon_tokens(std::string_view text);

struct LexiconOptions {
    std::size_t keep = 13300;
    // Restrict W to its |vocab(M)| most frequent words (ties: lexicographic).
    bool truncate_general = true;
};

// Every word of either corpus ranked by p = mp - wp descending, ties by word.
// Throws Error(InvalidArgument) if either corpus has no tokens.
std::vector<LexiconEntry> rank_words(const std::vector<std::string>& corpus_m, const std::vector<std::string>& corpus_w,
                                     bool truncate_general = true);

// Top `keep` of rank_words. Throws Error(InvalidArgument) when keep exceeds
// the ranked vocabulary.
std::vector<LexiconEntry> build_lexicon(const std::vector<std::string>& corpus_m,
                                        const std::vector<std::string>& corpus_w, const LexiconOptions& options = {});

// Documents are the lines of each file.
std::vector<LexiconEntry> build_lexicon_files(const std::filesystem::path& m, const std::filesystem::path& w,
                                              const LexiconOptions& options = {});

std::string lexicon_to_tsv(const std::vector<LexiconEntry>& entries);
std::vector<LexiconEntry> lexicon_from_tsv(const std::string& content);

using WordSet = std::unordered_set<std::string>;
WordSet word_set(const std::vector<LexiconEntry>& entries);

}  // namespace rumortrack::lexicon
