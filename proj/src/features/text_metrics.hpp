#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rumortrack::features {

// Words of a message: index tokens of the canonical text with a leading '#'
// removed.
std::vector<std::string> words_of(std::string_view canonical_text);

// Vowel groups (a e i o u y), minus a silent final 'e', with a small
// exception table; at least 1.
std::size_t syllables(std::string_view word);

// Segments ended by a run of . ! ? followed by whitespace or end of text;
// only segments holding a letter or digit count.
std::size_t count_sentences(std::string_view raw_text);

struct Readability {
    double flesch = 0.0;
    double automated = 0.0;
    double flesch_kincaid = 0.0;
    double gunning = 0.0;
    double smog = 0.0;
    std::size_t complex_words = 0;
    double avg_syllables = 0.0;
};

// All scores are 0 when there are no words or no sentences.
Readability readability(const std::vector<std::string>& words, std::size_t sentences);
Readability readability(std::string_view raw_text);

enum class Tag { Noun, Verb, Adjective, Adverb, Pronoun, Other };

// word<TAB>tag with tags NOUN VERB ADJ ADV PRON; anything else is Other.
class TagDictionary {
public:
    static TagDictionary load(const std::filesystem::path& path);
    void add(const std::string& word, Tag tag) { tags_[word] = tag; }
    Tag tag(const std::string& word) const;  // lowercase input

private:
    std::unordered_map<std::string, Tag> tags_;
};

// 0 when not a personal pronoun, else 1, 2 or 3.
int pronoun_person(std::string_view word);

struct PosCounts {
    std::size_t noun = 0, verb = 0, adjective = 0, adverb = 0, pronoun = 0;
    bool person1 = false, person2 = false, person3 = false;
};

PosCounts pos_counts(const std::vector<std::string>& words, const TagDictionary& dict);

struct SentimentLexicon {
    std::unordered_set<std::string> positive, negative;
    std::unordered_set<std::string> emoticons_pos, emoticons_neg;

    // entry<TAB>positive|negative|emoticon_pos|emoticon_neg. Throws
    // Error(Config) when a word or emoticon is listed with both polarities.
    static SentimentLexicon load(const std::filesystem::path& path);
};

struct SentimentCounts {
    std::size_t positive = 0, negative = 0, emoticons_pos = 0, emoticons_neg = 0;
    double score = 0.0;
};

// Emoticons are matched against whitespace-separated tokens of the raw text.
SentimentCounts sentiment(std::string_view raw_text, const std::vector<std::string>& words,
                          const SentimentLexicon& lex);

using Vocabulary = std::unordered_set<std::string>;
Vocabulary load_vocabulary(const std::filesystem::path& path);  // first column, lowercased

std::size_t vocab_miss_count(const std::vector<std::string>& words, const Vocabulary& vocab);
std::size_t medical_count(std::string_view canonical_text, const std::unordered_set<std::string>& medical);

}  // namespace rumortrack::features
