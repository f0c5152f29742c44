#include "features/extract.hpp"

#include <algorithm>

#include "corpus/normalize.hpp"
#include "util/error.hpp"
#include "util/text_io.hpp"
#include "util/time.hpp"
#include "util/utf8.hpp"

namespace rumortrack::features {

std::size_t FeatureTables::country_id(const std::optional<std::string>& code) const {
    if (!code) return 0;
    const auto it = std::lower_bound(countries.begin(), countries.end(), *code);
    if (it == countries.end() || *it != *code) return 0;
    return static_cast<std::size_t>(it - countries.begin()) + 1;
}

namespace {

bool word_char(char32_t c) { return utf8::is_letter(c) || utf8::is_digit(c) || c == '_'; }

bool starts_with_http(std::string_view token) {
    const auto lower = utf8::to_lower(token.substr(0, 8));
    return lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0;
}

// Counts `marker` characters that open a word-like run and do not follow one.
std::size_t count_marked(std::string_view raw, char32_t marker) {
    const auto cps = utf8::decode(raw);
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
        if (cps[i] != marker) continue;
        if (i > 0 && word_char(cps[i - 1])) continue;
        if (word_char(cps[i + 1])) ++n;
    }
    return n;
}

class TableResolver : public lexicon::Resolver {
public:
    explicit TableResolver(const std::map<std::string, std::string>& map) : map_(map) {}
    std::optional<std::string> next(const std::string& url) override {
        const auto it = map_.find(url);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

private:
    const std::map<std::string, std::string>& map_;
};

double b(bool v) { return v ? 1.0 : 0.0; }
double n(std::size_t v) { return static_cast<double>(v); }

}  // namespace

std::vector<std::string> message_urls(const corpus::Message& m) {
    if (!m.urls.empty()) return m.urls;
    std::vector<std::string> out;
    std::string token;
    auto flush = [&] {
        if (starts_with_http(token)) out.push_back(token);
        token.clear();
    };
    for (char32_t cp : utf8::decode(m.text)) {
        if (utf8::is_space(cp)) flush();
        else utf8::append(token, cp);
    }
    flush();
    return out;
}

std::size_t count_hashtags(std::string_view raw_text) { return count_marked(raw_text, U'#'); }

bool has_mention(const corpus::Message& m) { return !m.mentions.empty() || count_marked(m.text, U'@') > 0; }

FeatureVector extract(const corpus::Message& m, const std::optional<std::string>& country, const FeatureTables& t) {
    FeatureVector v{};
    const std::string canonical = corpus::normalize(m.text);
    const auto words = words_of(canonical);
    const auto cps = utf8::decode(m.text);
    const auto urls = message_urls(m);

    v[IS_RETWEET] = b(m.is_retweet || corpus::starts_with_retweet_marker(m.text));
    v[FOLLOWING] = static_cast<double>(m.author_following);
    v[FOLLOWERS] = static_cast<double>(m.author_followers);
    v[STATUS_COUNT] = static_cast<double>(m.author_status_count);
    v[AGE] = static_cast<double>(corpus::account_age_days(m));
    v[HAS_MENTIONS] = b(has_mention(m));
    const std::size_t hashtags = count_hashtags(m.text);
    v[HAS_HASHTAG] = b(hashtags > 0);
    v[COUNT_HASHTAG] = n(hashtags);
    v[DAY_WEEKDAY] = iso_weekday(m.created_at);
    v[COUNT_URLS] = n(urls.size());
    v[COUNT_RT] = static_cast<double>(m.retweet_count);
    v[COUNTRY] = n(t.country_id(country));

    const auto s = sentiment(m.text, words, t.sentiment);
    v[SENTIMENT_SCORE] = s.score;
    v[POSITIVE_WORDS] = n(s.positive);
    v[NEGATIVE_WORDS] = n(s.negative);
    v[EMOTICONS_POS] = n(s.emoticons_pos);
    v[EMOTICONS_NEG] = n(s.emoticons_neg);

    std::size_t questions = 0, exclamations = 0, upper = 0, lower = 0;
    for (char32_t c : cps) {
        if (c == '?') ++questions;
        if (c == '!') ++exclamations;
        if (utf8::is_upper(c)) ++upper;
        if (utf8::is_lower(c)) ++lower;
    }
    const std::size_t sentences = count_sentences(m.text);
    v[QUESTION_MARK] = b(questions > 0);
    v[EXCLAMATION_MARK] = b(exclamations > 0);
    v[WORDS_COUNT] = n(words.size());
    v[COUNT_SENTENCES] = n(sentences);
    v[CHAR_COUNT] = n(cps.size());
    v[UPPER_COUNT] = n(upper);
    v[PERCENTAGE_UPPER] = cps.empty() ? 0.0 : 100.0 * n(upper) / n(cps.size());
    v[PERCENTAGE_UPPER_LOWER] = upper + lower == 0 ? 0.0 : 100.0 * n(upper) / n(upper + lower);
    v[MULTIPLE_QUES_EXCL] = b(questions + exclamations >= 2);

    const auto pos = pos_counts(words, t.tags);
    v[COUNT_NOUN] = n(pos.noun);
    v[COUNT_ADVERB] = n(pos.adverb);
    v[COUNT_ADJECTIVE] = n(pos.adjective);
    v[COUNT_VERB] = n(pos.verb);
    v[COUNT_PRONOUN] = n(pos.pronoun);
    v[HAS_PRONOUN_1] = b(pos.person1);
    v[HAS_PRONOUN_2] = b(pos.person2);
    v[HAS_PRONOUN_3] = b(pos.person3);

    const auto r = readability(words, sentences);
    v[COMPLEX_WORDS] = n(r.complex_words);
    v[FLESCH] = r.flesch;
    v[AUTOMATED] = r.automated;
    v[FLESCH_KINCAID] = r.flesch_kincaid;
    v[GUNNING] = r.gunning;
    v[SMOG] = r.smog;
    v[COUNT_NOT_IN_VOCAB] = n(vocab_miss_count(words, t.vocabulary));
    v[AVG_SYLLABLES] = r.avg_syllables;
    v[MEDICAL_LEXICON] = n(medical_count(canonical, t.medical));

    TableResolver resolver(t.redirects);
    for (const auto& url : urls) {
        const auto e = lexicon::expand_url(url, resolver);
        if (e.host.empty()) continue;
        const auto verdict = t.domains.classify_host(e.host);
        if (verdict.wikipedia) v[WIKIPEDIA_DOMAIN] += 1;
        switch (verdict.domain_class) {
            case lexicon::DomainClass::Advocacy: v[ADVOCACY] += 1; break;
            case lexicon::DomainClass::News: v[NEWS] += 1; break;
            case lexicon::DomainClass::SocialMedia: v[SOCIAL] += 1; break;
            case lexicon::DomainClass::Informative: v[INFORMATIVE] += 1; break;
            case lexicon::DomainClass::NonInformative: break;
        }
    }
    return v;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> csv_split(const std::string& line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) fail(ErrorKind::Parse, "feature matrix line " + std::to_string(line_no) + ": unterminated quote");
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::string matrix_to_csv(const std::vector<MatrixRow>& rows) {
    const bool labels = std::any_of(rows.begin(), rows.end(), [](const MatrixRow& r) { return r.label.has_value(); });
    const bool topics = std::any_of(rows.begin(), rows.end(), [](const MatrixRow& r) { return r.topic.has_value(); });
    std::string out = "message_id";
    for (const auto& s : kSlots) {
        out += ',';
        out += s.name;
    }
    if (labels) out += ",label";
    if (topics) out += ",topic";
    out += '\n';
    for (const auto& r : rows) {
        out += csv_field(r.message_id);
        for (double x : r.values) out += ',' + format_double(x);
        if (labels) out += ',' + csv_field(r.label.value_or(""));
        if (topics) out += ',' + csv_field(r.topic.value_or(""));
        out += '\n';
    }
    return out;
}

std::vector<MatrixRow> matrix_from_csv(const std::string& content) {
    const auto lines = split(content, '\n');
    if (lines.empty() || lines[0].empty()) fail(ErrorKind::Parse, "feature matrix is empty");
    const auto header = csv_split(lines[0], 1);
    if (header.size() < kSlotCount + 1 || header[0] != "message_id")
        fail(ErrorKind::Parse, "feature matrix header must start with message_id and the 48 slot names");
    for (std::size_t i = 0; i < kSlotCount; ++i) {
        if (header[i + 1] != kSlots[i].name)
            fail(ErrorKind::Parse, "feature matrix column " + std::to_string(i + 2) + " should be " +
                                       std::string(kSlots[i].name));
    }
    std::optional<std::size_t> label_col, topic_col;
    for (std::size_t c = kSlotCount + 1; c < header.size(); ++c) {
        if (header[c] == "label") label_col = c;
        else if (header[c] == "topic") topic_col = c;
        else fail(ErrorKind::Parse, "feature matrix: unknown column '" + header[c] + "'");
    }
    std::vector<MatrixRow> rows;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        if (lines[l].empty()) continue;
        const auto cols = csv_split(lines[l], l + 1);
        if (cols.size() != header.size())
            fail(ErrorKind::Parse, "feature matrix line " + std::to_string(l + 1) + ": wrong column count");
        MatrixRow r;
        r.message_id = cols[0];
        for (std::size_t i = 0; i < kSlotCount; ++i) r.values[i] = parse_double(cols[i + 1]);
        if (label_col && !cols[*label_col].empty()) r.label = cols[*label_col];
        if (topic_col && !cols[*topic_col].empty()) r.topic = cols[*topic_col];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace rumortrack::features
