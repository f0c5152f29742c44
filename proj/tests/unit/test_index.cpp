#include <doctest.h>

#include <functional>
#include <set>

#include "index/inverted_index.hpp"
#include "index/query.hpp"
#include "index/tokenize.hpp"
#include "util/rng.hpp"

using namespace rumortrack;
using namespace rumortrack::index;

namespace {

QueryNode T(const char* t) { return QueryNode::term(t); }

InvertedIndex small_index() {
    return InvertedIndex::build({{"d0", "zika virus gmo"},
                                 {"d1", "flu symptom"},
                                 {"d2", "gmo flu #zika"},
                                 {"d3", "virus zika"}});
}

std::vector<std::string> ids(const InvertedIndex& idx, const std::vector<DocId>& docs) {
    std::vector<std::string> out;
    for (auto d : docs) out.push_back(idx.message_id(d));
    return out;
}

}  // namespace

TEST_CASE("tokenize") {
    CHECK(tokenize("Zika virus") == std::vector<std::string>{"zika", "virus"});
    CHECK(tokenize("#Zika GMO") == std::vector<std::string>{"#zika", "gmo"});
    CHECK(tokenize("") .empty());
    CHECK(tokenize("a, b. c?") == std::vector<std::string>{"a", "b", "c"});
    CHECK(strip_hash("#zika") == "zika");
}

TEST_CASE("table queries parse to the documented trees") {
    CHECK(parse_query("genetically | GMO") == QueryNode::disj(T("genetically"), T("gmo")));
    CHECK(parse_query("(symptom & (flu | cold)) & (not(rash))") ==
          QueryNode::conj(QueryNode::conj(T("symptom"), QueryNode::disj(T("flu"), T("cold"))),
                          QueryNode::negate(T("rash"))));
    CHECK(parse_query("a & b | c") == QueryNode::disj(QueryNode::conj(T("a"), T("b")), T("c")));
    CHECK(parse_query("\"zika virus\"") == QueryNode::phrase({"zika", "virus"}));
}

TEST_CASE("query syntax errors carry positions") {
    auto position_of = [](const std::string& q) -> long {
        try {
            parse_query(q);
        } catch (const QuerySyntaxError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position_of("(a & b") >= 0);
    CHECK(position_of("a &") >= 0);
    CHECK(position_of("a ) b") == 2);
    CHECK(position_of("") >= 0);
    CHECK(position_of("not(a)") >= 0);       // pure negation
    CHECK(position_of("a | not(b)") >= 0);   // negation outside a conjunction
    CHECK(position_of("a & not(b)") == -1);
    CHECK_THROWS_AS(parse_query("((coffee | java | jive) & (repellent | protect)) & (java & jive) & (coffee & mosquito))"),
                    QuerySyntaxError);
}

TEST_CASE("canonical printer round trips") {
    for (const char* q : {"genetically | GMO", "(symptom & (flu | cold)) & (not(rash))", "a & b | c",
                          "a & (b | c) & not(d | e)", "\"zika virus\" | gmo", "#zika & not(rt)"}) {
        const auto ast = parse_query(q);
        CHECK(parse_query(print_query(ast)) == ast);
        CHECK(print_query(parse_query(print_query(ast))) == print_query(ast));
    }
}

TEST_CASE("evaluation semantics") {
    const auto idx = small_index();
    CHECK(ids(idx, idx.evaluate(parse_query("gmo | symptom"))) == std::vector<std::string>{"d0", "d1", "d2"});
    CHECK(idx.evaluate(parse_query("gmo & not(gmo)")).empty());
    CHECK(ids(idx, idx.evaluate(parse_query("zika & not(gmo)"))) == std::vector<std::string>{"d3"});
    CHECK(ids(idx, idx.evaluate(parse_query("zika"))) == std::vector<std::string>{"d0", "d2", "d3"});
    CHECK(ids(idx, idx.evaluate(parse_query("#zika"))) == std::vector<std::string>{"d2"});
    CHECK(ids(idx, idx.evaluate(parse_query("\"zika virus\""))) == std::vector<std::string>{"d0"});
    CHECK(ids(idx, idx.evaluate(parse_query("\"virus zika\""))) == std::vector<std::string>{"d3"});
    CHECK(idx.evaluate(parse_query("vir")).empty());
}

TEST_CASE("set operations") {
    CHECK(set_union({1, 3}, {2, 3}) == std::vector<DocId>{1, 2, 3});
    CHECK(set_intersection({1, 3}, {2, 3}) == std::vector<DocId>{3});
    CHECK(set_difference({1, 2, 3}, {2}) == std::vector<DocId>{1, 3});
}

TEST_CASE("index serialization and determinism") {
    const auto a = small_index();
    const auto b = small_index();
    CHECK(a == b);
    CHECK(a.serialize() == b.serialize());
    const auto c = InvertedIndex::deserialize(a.serialize());
    CHECK(c == a);
    for (const auto& [term, postings] : a.terms()) {
        for (std::size_t i = 1; i < postings.size(); ++i) CHECK(postings[i - 1].doc < postings[i].doc);
        for (const auto& p : postings) {
            CHECK(p.doc < a.document_count());
            for (std::size_t i = 1; i < p.positions.size(); ++i) CHECK(p.positions[i - 1] < p.positions[i]);
        }
    }
}

TEST_CASE("de morgan at evaluation level") {
    Rng rng(3);
    const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
    std::vector<Document> docs;
    for (int i = 0; i < 150; ++i) {
        std::string text;
        for (const auto& w : vocab) {
            if (uniform_unit(rng) < 0.4) text += w + " ";
        }
        docs.push_back({"m" + std::to_string(i), text});
    }
    const auto idx = InvertedIndex::build(docs);
    CHECK(idx.evaluate(parse_query("a & not(b | c)")) == idx.evaluate(parse_query("a & not(b) & not(c)")));
    CHECK(idx.evaluate(parse_query("d & not(a & b)")) ==
          set_union(idx.evaluate(parse_query("d & not(a)")), idx.evaluate(parse_query("d & not(b)"))));
}

TEST_CASE("top k") {
    const std::vector<RankKey> keys = {{"x", 5, 10}, {"y", 9, 10}, {"z", 1, 10}};
    CHECK(top_k(keys, 2) == std::vector<std::string>{"y", "x"});
    CHECK(top_k(keys, 10).size() == 3);
    const std::vector<RankKey> ties = {{"b", 3, 20}, {"a", 3, 20}, {"c", 3, 10}};
    CHECK(top_k(ties, 3) == std::vector<std::string>{"c", "a", "b"});
}
