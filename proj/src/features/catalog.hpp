#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace rumortrack::features {

enum class SlotKind { Count, Boolean, Real, Percentage, Categorical };

struct SlotInfo {
    std::string_view name;
    SlotKind kind;
};

inline constexpr std::size_t kSlotCount = 48;

// Canonical slot order; matrix columns and model feature indices follow it.
inline constexpr std::array<SlotInfo, kSlotCount> kSlots{{
    {"IS_RETWEET", SlotKind::Boolean},
    {"FOLLOWING", SlotKind::Count},
    {"FOLLOWERS", SlotKind::Count},
    {"STATUS_COUNT", SlotKind::Count},
    {"AGE", SlotKind::Count},
    {"HAS_MENTIONS", SlotKind::Boolean},
    {"HAS_HASHTAG", SlotKind::Boolean},
    {"COUNT_HASHTAG", SlotKind::Count},
    {"DAY_WEEKDAY", SlotKind::Categorical},
    {"COUNT_URLS", SlotKind::Count},
    {"COUNT_RT", SlotKind::Count},
    {"COUNTRY", SlotKind::Categorical},
    {"SENTIMENT_SCORE", SlotKind::Real},
    {"POSITIVE_WORDS", SlotKind::Count},
    {"NEGATIVE_WORDS", SlotKind::Count},
    {"EMOTICONS_POS", SlotKind::Count},
    {"EMOTICONS_NEG", SlotKind::Count},
    {"QUESTION_MARK", SlotKind::Boolean},
    {"EXCLAMATION_MARK", SlotKind::Boolean},
    {"WORDS_COUNT", SlotKind::Count},
    {"COUNT_SENTENCES", SlotKind::Count},
    {"CHAR_COUNT", SlotKind::Count},
    {"UPPER_COUNT", SlotKind::Count},
    {"PERCENTAGE_UPPER", SlotKind::Percentage},
    {"PERCENTAGE_UPPER_LOWER", SlotKind::Percentage},
    {"MULTIPLE_QUES_EXCL", SlotKind::Boolean},
    {"COUNT_NOUN", SlotKind::Count},
    {"COUNT_ADVERB", SlotKind::Count},
    {"COUNT_ADJECTIVE", SlotKind::Count},
    {"COUNT_VERB", SlotKind::Count},
    {"COUNT_PRONOUN", SlotKind::Count},
    {"HAS_PRONOUN_1", SlotKind::Boolean},
    {"HAS_PRONOUN_2", SlotKind::Boolean},
    {"HAS_PRONOUN_3", SlotKind::Boolean},
    {"COMPLEX_WORDS", SlotKind::Count},
    {"FLESCH", SlotKind::Real},
    {"AUTOMATED", SlotKind::Real},
    {"FLESCH_KINCAID", SlotKind::Real},
    {"GUNNING", SlotKind::Real},
    {"SMOG", SlotKind::Real},
    {"COUNT_NOT_IN_VOCAB", SlotKind::Count},
    {"AVG_SYLLABLES", SlotKind::Real},
    {"MEDICAL_LEXICON", SlotKind::Count},
    {"WIKIPEDIA_DOMAIN", SlotKind::Count},
    {"ADVOCACY", SlotKind::Count},
    {"NEWS", SlotKind::Count},
    {"SOCIAL", SlotKind::Count},
    {"INFORMATIVE", SlotKind::Count},
}};

enum Slot : std::size_t {
    IS_RETWEET, FOLLOWING, FOLLOWERS, STATUS_COUNT, AGE, HAS_MENTIONS, HAS_HASHTAG, COUNT_HASHTAG, DAY_WEEKDAY,
    COUNT_URLS, COUNT_RT, COUNTRY, SENTIMENT_SCORE, POSITIVE_WORDS, NEGATIVE_WORDS, EMOTICONS_POS, EMOTICONS_NEG,
    QUESTION_MARK, EXCLAMATION_MARK, WORDS_COUNT, COUNT_SENTENCES, CHAR_COUNT, UPPER_COUNT, PERCENTAGE_UPPER,
    PERCENTAGE_UPPER_LOWER, MULTIPLE_QUES_EXCL, COUNT_NOUN, COUNT_ADVERB, COUNT_ADJECTIVE, COUNT_VERB, COUNT_PRONOUN,
    HAS_PRONOUN_1, HAS_PRONOUN_2, HAS_PRONOUN_3, COMPLEX_WORDS, FLESCH, AUTOMATED, FLESCH_KINCAID, GUNNING, SMOG,
    COUNT_NOT_IN_VOCAB, AVG_SYLLABLES, MEDICAL_LEXICON, WIKIPEDIA_DOMAIN, ADVOCACY, NEWS, SOCIAL, INFORMATIVE,
};

constexpr std::optional<std::size_t> slot_index(std::string_view name) {
    for (std::size_t i = 0; i < kSlotCount; ++i) {
        if (kSlots[i].name == name) return i;
    }
    return std::nullopt;
}

// Treated as nominal by Naive Bayes and information gain.
constexpr bool is_nominal(SlotKind k) { return k == SlotKind::Categorical || k == SlotKind::Boolean; }

}  // namespace rumortrack::features
