#include "features/text_metrics.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "corpus/normalize.hpp"
#include "index/tokenize.hpp"
#include "lexicon/lexicon.hpp"
#include "util/error.hpp"
#include "util/text_io.hpp"
#include "util/utf8.hpp"

namespace rumortrack::features {

std::vector<std::string> words_of(std::string_view canonical_text) {
    std::vector<std::string> out;
    for (auto& t : index::tokenize(canonical_text)) {
        const auto w = index::strip_hash(t);
        if (!w.empty()) out.emplace_back(w);
    }
    return out;
}

namespace {

const std::unordered_map<std::string, std::size_t>& syllable_exceptions() {
    static const std::unordered_map<std::string, std::size_t> table{
        {"the", 1},     {"area", 3},  {"idea", 3},       {"people", 2}, {"being", 2},
        {"business", 2}, {"every", 2}, {"wednesday", 2}, {"queue", 1},  {"science", 2},
        {"zika", 2},    {"ebola", 3}, {"vaccine", 2},   {"naive", 2},  {"poem", 2},
    };
    return table;
}

bool is_vowel(char c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u': case 'y': return true;
        default: return false;
    }
}

}  // namespace

std::size_t syllables(std::string_view word) {
    std::string w;
    for (char c : word) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x80 && std::isalpha(u)) w += static_cast<char>(std::tolower(u));
    }
    if (const auto it = syllable_exceptions().find(w); it != syllable_exceptions().end()) return it->second;
    std::size_t groups = 0;
    bool prev = false;
    for (char c : w) {
        const bool v = is_vowel(c);
        if (v && !prev) ++groups;
        prev = v;
    }
    const std::size_t n = w.size();
    if (n >= 2 && w[n - 1] == 'e' && groups > 1) {
        const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
        if (!consonant_le) --groups;
    }
    return groups == 0 ? 1 : groups;
}

std::size_t count_sentences(std::string_view raw_text) {
    const auto cps = utf8::decode(raw_text);
    std::size_t count = 0;
    bool content = false;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t c = cps[i];
        if (c == '.' || c == '!' || c == '?') {
            std::size_t j = i;
            while (j < cps.size() && (cps[j] == '.' || cps[j] == '!' || cps[j] == '?')) ++j;
            if (j == cps.size() || utf8::is_space(cps[j])) {
                if (content) ++count;
                content = false;
            }
            i = j - 1;
            continue;
        }
        if (utf8::is_letter(c) || utf8::is_digit(c)) content = true;
    }
    if (content) ++count;
    return count;
}

Readability readability(const std::vector<std::string>& words, std::size_t sentences) {
    Readability r;
    if (words.empty() || sentences == 0) return r;
    std::size_t syl = 0, chars = 0;
    for (const auto& w : words) {
        const std::size_t s = syllables(w);
        syl += s;
        if (s >= 3) ++r.complex_words;
        for (char32_t cp : utf8::decode(w)) {
            if (utf8::is_letter(cp) || utf8::is_digit(cp)) ++chars;
        }
    }
    const double W = static_cast<double>(words.size());
    const double S = static_cast<double>(sentences);
    const double wps = W / S;
    const double spw = static_cast<double>(syl) / W;
    const double complex = static_cast<double>(r.complex_words);
    r.flesch = 206.835 - 1.015 * wps - 84.6 * spw;
    r.automated = 4.71 * (static_cast<double>(chars) / W) + 0.5 * wps - 21.43;
    r.flesch_kincaid = 0.39 * wps + 11.8 * spw - 15.59;
    r.gunning = 0.4 * (wps + 100.0 * (complex / W));
    r.smog = 1.0430 * std::sqrt(complex * (30.0 / S)) + 3.1291;
    r.avg_syllables = spw;
    return r;
}

Readability readability(std::string_view raw_text) {
    return readability(words_of(corpus::normalize(raw_text)), count_sentences(raw_text));
}

namespace {

Tag parse_tag(std::string_view s) {
    if (s == "NOUN") return Tag::Noun;
    if (s == "VERB") return Tag::Verb;
    if (s == "ADJ") return Tag::Adjective;
    if (s == "ADV") return Tag::Adverb;
    if (s == "PRON") return Tag::Pronoun;
    return Tag::Other;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Tag suffix_tag(std::string_view w) {
    static constexpr std::array<std::pair<std::string_view, Tag>, 16> rules{{
        {"ing", Tag::Verb},       {"ed", Tag::Verb},         {"ize", Tag::Verb},       {"ise", Tag::Verb},
        {"ify", Tag::Verb},       {"ly", Tag::Adverb},       {"ous", Tag::Adjective},  {"ful", Tag::Adjective},
        {"ive", Tag::Adjective},  {"able", Tag::Adjective},  {"ible", Tag::Adjective}, {"less", Tag::Adjective},
        {"ical", Tag::Adjective}, {"ish", Tag::Adjective},   {"al", Tag::Adjective},   {"ic", Tag::Adjective},
    }};
    for (char c : w) {
        if (c >= '0' && c <= '9') return Tag::Other;
    }
    for (const auto& [suffix, tag] : rules) {
        if (w.size() > suffix.size() + 2 && ends_with(w, suffix)) return tag;
    }
    return Tag::Noun;
}

}  // namespace

TagDictionary TagDictionary::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorKind::Config, "tag dictionary not found: " + path.string());
    TagDictionary d;
    for (const auto& row : read_tsv(path)) {
        if (row.size() != 2) fail(ErrorKind::Config, "tag dictionary: expected word<TAB>tag");
        d.add(utf8::to_lower(row[0]), parse_tag(row[1]));
    }
    return d;
}

Tag TagDictionary::tag(const std::string& word) const {
    if (pronoun_person(word) != 0) return Tag::Pronoun;
    if (const auto it = tags_.find(word); it != tags_.end()) return it->second;
    return suffix_tag(word);
}

int pronoun_person(std::string_view w) {
    static const std::unordered_map<std::string_view, int> persons{
        {"i", 1},       {"me", 1},         {"my", 1},          {"mine", 1},         {"myself", 1},
        {"we", 1},      {"us", 1},         {"our", 1},         {"ours", 1},         {"ourselves", 1},
        {"you", 2},     {"your", 2},       {"yours", 2},       {"yourself", 2},     {"yourselves", 2},
        {"u", 2},       {"ur", 2},         {"he", 3},          {"him", 3},          {"his", 3},
        {"himself", 3}, {"she", 3},        {"her", 3},         {"hers", 3},         {"herself", 3},
        {"it", 3},      {"its", 3},        {"itself", 3},      {"they", 3},         {"them", 3},
        {"their", 3},   {"theirs", 3},     {"themselves", 3},
    };
    const auto it = persons.find(w);
    return it == persons.end() ? 0 : it->second;
}

PosCounts pos_counts(const std::vector<std::string>& words, const TagDictionary& dict) {
    PosCounts c;
    for (const auto& w : words) {
        switch (dict.tag(w)) {
            case Tag::Noun: ++c.noun; break;
            case Tag::Verb: ++c.verb; break;
            case Tag::Adjective: ++c.adjective; break;
            case Tag::Adverb: ++c.adverb; break;
            case Tag::Pronoun: ++c.pronoun; break;
            case Tag::Other: break;
        }
        switch (pronoun_person(w)) {
            case 1: c.person1 = true; break;
            case 2: c.person2 = true; break;
            case 3: c.person3 = true; break;
            default: break;
        }
    }
    return c;
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorKind::Config, "sentiment lexicon not found: " + path.string());
    SentimentLexicon lex;
    for (const auto& row : read_tsv(path)) {
        if (row.size() != 2) fail(ErrorKind::Config, "sentiment lexicon: expected entry<TAB>class");
        const std::string& kind = row[1];
        if (kind == "positive") lex.positive.insert(utf8::to_lower(row[0]));
        else if (kind == "negative") lex.negative.insert(utf8::to_lower(row[0]));
        else if (kind == "emoticon_pos") lex.emoticons_pos.insert(row[0]);
        else if (kind == "emoticon_neg") lex.emoticons_neg.insert(row[0]);
        else fail(ErrorKind::Config, "sentiment lexicon: unknown class '" + kind + "'");
    }
    for (const auto& w : lex.positive) {
        if (lex.negative.count(w)) fail(ErrorKind::Config, "sentiment lexicon: '" + w + "' is both positive and negative");
    }
    for (const auto& e : lex.emoticons_pos) {
        if (lex.emoticons_neg.count(e)) fail(ErrorKind::Config, "sentiment lexicon: emoticon '" + e + "' has both polarities");
    }
    return lex;
}

SentimentCounts sentiment(std::string_view raw_text, const std::vector<std::string>& words,
                          const SentimentLexicon& lex) {
    SentimentCounts s;
    for (const auto& w : words) {
        if (lex.positive.count(w)) ++s.positive;
        if (lex.negative.count(w)) ++s.negative;
    }
    std::string token;
    auto check = [&] {
        if (token.empty()) return;
        if (lex.emoticons_pos.count(token)) ++s.emoticons_pos;
        if (lex.emoticons_neg.count(token)) ++s.emoticons_neg;
        token.clear();
    };
    for (char32_t cp : utf8::decode(raw_text)) {
        if (utf8::is_space(cp)) check();
        else utf8::append(token, cp);
    }
    check();
    const double net = static_cast<double>(s.positive) - static_cast<double>(s.negative) +
                       static_cast<double>(s.emoticons_pos) - static_cast<double>(s.emoticons_neg);
    s.score = net / static_cast<double>(std::max<std::size_t>(1, words.size()));
    return s;
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) fail(ErrorKind::Config, "vocabulary not found: " + path.string());
    Vocabulary v;
    for (const auto& row : read_tsv(path)) v.insert(utf8::to_lower(row[0]));
    return v;
}

std::size_t vocab_miss_count(const std::vector<std::string>& words, const Vocabulary& vocab) {
    std::size_t misses = 0;
    for (const auto& w : words) {
        if (!vocab.count(utf8::to_lower(w))) ++misses;
    }
    return misses;
}

std::size_t medical_count(std::string_view canonical_text, const std::unordered_set<std::string>& medical) {
    std::size_t hits = 0;
    for (const auto& t : lexicon::lexicon_tokens(canonical_text)) {
        if (medical.count(t)) ++hits;
    }
    return hits;
}

}  // namespace rumortrack::features
