#include <doctest.h>

#include <cmath>

#include "corpus/ingest.hpp"
#include "features/extract.hpp"
#include "features/text_metrics.hpp"
#include "util/rng.hpp"

using namespace rumortrack;
using namespace rumortrack::features;

namespace {

FeatureTables tables() {
    FeatureTables t;
    t.sentiment.positive = {"good", "safe", "great"};
    t.sentiment.negative = {"bad", "fear"};
    t.sentiment.emoticons_pos = {":)"};
    t.sentiment.emoticons_neg = {":("};
    t.vocabulary = {"zika", "the", "cat", "sat", "on", "mat"};
    t.medical = {"syphilis", "zika", "virus"};
    t.domains.add("naturalnews.com", lexicon::DomainClass::Advocacy);
    t.domains.add("cdc.gov", lexicon::DomainClass::Informative);
    t.domains.add_wikipedia("cdc.gov");
    t.redirects["https://t.co/x"] = "https://www.cdc.gov/zika";
    t.countries = {"BR", "GB", "US"};
    return t;
}

corpus::Message message(const std::string& text) {
    corpus::Message m;
    m.id = "m";
    m.text = text;
    m.language = "en";
    return m;
}

}  // namespace

TEST_CASE("flesch of the cat sentence") {
    const auto r = readability("The cat sat on the mat.");
    CHECK(std::fabs(r.flesch - 116.145) < 1e-9);
    CHECK(r.avg_syllables == doctest::Approx(1.0));
    CHECK(count_sentences("The cat sat on the mat.") == 1);
}

TEST_CASE("syllables and sentences") {
    CHECK(syllables("cat") == 1);
    CHECK(syllables("table") == 2);
    CHECK(syllables("make") == 1);
    CHECK(syllables("microcephaly") == 5);
    CHECK(syllables("zika") == 2);
    CHECK(syllables("rhythm") == 1);
    CHECK(syllables("") == 1);
    const auto single = readability(std::vector<std::string>{"mosquito"}, 1);
    CHECK(single.avg_syllables == doctest::Approx(3.0));
    CHECK(count_sentences("Hi! How are you?? ok") == 3);
    CHECK(count_sentences("v1.2 is out") == 1);
    CHECK(count_sentences("") == 0);
}

TEST_CASE("readability monotonicity") {
    const auto one = readability("the cat sat on the mat dog");
    const auto four = readability("the cat sat on the mat television");
    CHECK(one.flesch >= four.flesch);
}

TEST_CASE("pronouns and tags") {
    TagDictionary d;
    const auto c = pos_counts(words_of("I saw you"), d);
    CHECK(c.pronoun == 2);
    CHECK(c.person1);
    CHECK(c.person2);
    CHECK(!c.person3);
    CHECK(pos_counts({}, d).pronoun == 0);
    d.add("run", Tag::Verb);
    CHECK(d.tag("run") == Tag::Verb);
    CHECK(d.tag("quickly") == Tag::Adverb);
    CHECK(d.tag("dangerous") == Tag::Adjective);
    CHECK(d.tag("mosquito") == Tag::Noun);
}

TEST_CASE("sentiment") {
    SentimentLexicon lex;
    lex.positive = {"good", "great"};
    lex.negative = {"bad"};
    const std::vector<std::string> ten = {"good", "great", "bad", "a", "b", "c", "d", "e", "f", "g"};
    CHECK(sentiment("", ten, lex).score == doctest::Approx(0.1));
    CHECK(sentiment("", {"x", "y"}, lex).score == 0.0);
    CHECK(sentiment("", {"bad", "bad"}, lex).score < 0.0);
}

TEST_CASE("vocabulary and medical counts") {
    CHECK(vocab_miss_count({"asdfgh", "zika"}, {"zika"}) == 1);
    CHECK(vocab_miss_count({"zika"}, {"zika"}) == 0);
    CHECK(medical_count("syphilis syphilis", {"syphilis"}) == 2);
    CHECK(medical_count("hello world", {"syphilis"}) == 0);
}

TEST_CASE("rumor example tweet") {
    const auto v =
        extract(message("BIOWEAPON! #Zika Virus Is Being Spread by #GMO #Mosquitoes Funded by Gates!"), std::nullopt,
                tables());
    CHECK(v[COUNT_HASHTAG] == 3);
    CHECK(v[HAS_HASHTAG] == 1);
    CHECK(v[EXCLAMATION_MARK] == 1);
    CHECK(v[MULTIPLE_QUES_EXCL] == 1);
    CHECK(v[MEDICAL_LEXICON] == 2);
}

TEST_CASE("empty text") {
    const auto v = extract(message(""), std::nullopt, tables());
    CHECK(v[WORDS_COUNT] == 0);
    CHECK(v[CHAR_COUNT] == 0);
    for (auto s : {FLESCH, AUTOMATED, FLESCH_KINCAID, GUNNING, SMOG, AVG_SYLLABLES, COMPLEX_WORDS}) CHECK(v[s] == 0);
    for (std::size_t i = 0; i < kSlotCount; ++i) {
        if (kSlots[i].kind == SlotKind::Boolean) CHECK(v[i] == 0);
    }
}

TEST_CASE("urls, domains and countries") {
    auto m = message("see https://t.co/x and http://naturalnews.com/y @cdc");
    const auto v = extract(m, std::string("GB"), tables());
    CHECK(v[COUNT_URLS] == 2);
    CHECK(v[INFORMATIVE] == 1);
    CHECK(v[WIKIPEDIA_DOMAIN] == 1);
    CHECK(v[ADVOCACY] == 1);
    CHECK(v[HAS_MENTIONS] == 1);
    CHECK(v[COUNTRY] == 2);
    CHECK(extract(m, std::string("ZZ"), tables())[COUNTRY] == 0);
    m.urls = {"https://cdc.gov"};
    CHECK(extract(m, std::nullopt, tables())[COUNT_URLS] == 1);
}

TEST_CASE("slot invariants over the fixture corpus") {
    auto ms = corpus::ingest_file(std::string(RT_FIXTURES) + "/mini_corpus.jsonl").accepted;
    const auto t = tables();
    std::vector<FeatureVector> first;
    for (const auto& m : ms) {
        const auto v = extract(m, std::nullopt, t);
        first.push_back(v);
        for (std::size_t i = 0; i < kSlotCount; ++i) {
            CHECK(std::isfinite(v[i]));
            if (kSlots[i].kind == SlotKind::Count) CHECK(v[i] >= 0);
            if (kSlots[i].kind == SlotKind::Boolean) CHECK((v[i] == 0 || v[i] == 1));
            if (kSlots[i].kind == SlotKind::Percentage) CHECK((v[i] >= 0 && v[i] <= 100));
        }
        CHECK(v[COUNT_HASHTAG] >= v[HAS_HASHTAG]);
        CHECK(v[UPPER_COUNT] <= v[CHAR_COUNT]);
        if (v[CHAR_COUNT] > 0) CHECK(v[PERCENTAGE_UPPER] == doctest::Approx(100 * v[UPPER_COUNT] / v[CHAR_COUNT]));
    }
    // Order of the corpus does not matter.
    std::vector<std::size_t> order(ms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(8);
    shuffle(order, rng);
    for (std::size_t i : order) CHECK(extract(ms[i], std::nullopt, t) == first[i]);
}

TEST_CASE("matrix csv round trip") {
    std::vector<MatrixRow> rows(2);
    rows[0].message_id = "a,b";
    rows[0].values[FLESCH] = 116.145;
    rows[0].values[SENTIMENT_SCORE] = 1.0 / 3.0;
    rows[0].label = "rumor";
    rows[1].message_id = "c";
    rows[1].topic = "R1";
    const auto csv = matrix_to_csv(rows);
    const auto back = matrix_from_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0].message_id == "a,b");
    CHECK(back[0].values == rows[0].values);
    CHECK(!back[1].label);
    CHECK(matrix_to_csv(back) == csv);
}
