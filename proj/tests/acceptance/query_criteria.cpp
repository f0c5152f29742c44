#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "harness.hpp"
#include "index/inverted_index.hpp"
#include "index/query.hpp"
#include "util/rng.hpp"

using namespace rumortrack;
using namespace rumortrack::index;

namespace acceptance {

namespace {

const std::vector<std::string> kWords = {"zika",  "virus", "gmo",  "mosquito", "vaccine", "rash", "flu",
                                         "cold",  "cause", "link", "brazil",   "fever",   "bite", "spray",
                                         "water", "baby",  "news", "cdc"};

std::string pick_token(Rng& rng) {
    const auto& w = kWords[uniform_below(rng, kWords.size())];
    return uniform_below(rng, 5) == 0 ? "#" + w : w;
}

// Query token matches a document token the way hashtags are indexed.
bool token_matches(const std::string& query_token, const std::string& doc_token) {
    if (query_token == doc_token) return true;
    return doc_token.size() > 1 && doc_token[0] == '#' && doc_token.substr(1) == query_token;
}

// Per-document predicate, written against the raw token list.
bool holds(const QueryNode& q, const std::vector<std::string>& doc) {
    switch (q.kind) {
        case NodeKind::Term:
            return std::any_of(doc.begin(), doc.end(), [&](const std::string& t) { return token_matches(q.tokens[0], t); });
        case NodeKind::Phrase:
            for (std::size_t i = 0; i + q.tokens.size() <= doc.size(); ++i) {
                bool all = true;
                for (std::size_t k = 0; k < q.tokens.size() && all; ++k) all = token_matches(q.tokens[k], doc[i + k]);
                if (all) return true;
            }
            return false;
        case NodeKind::And: return holds(q.children[0], doc) && holds(q.children[1], doc);
        case NodeKind::Or: return holds(q.children[0], doc) || holds(q.children[1], doc);
        case NodeKind::Not: return !holds(q.children[0], doc);
    }
    return false;
}

QueryNode positive(Rng& rng, int depth);

QueryNode leaf(Rng& rng) {
    if (uniform_below(rng, 6) == 0) {
        std::vector<std::string> toks;
        const std::size_t n = 2 + uniform_below(rng, 2);
        for (std::size_t i = 0; i < n; ++i) toks.push_back(kWords[uniform_below(rng, kWords.size())]);
        return QueryNode::phrase(toks);
    }
    return QueryNode::term(pick_token(rng));
}

// Any node whose negation-free reading is positive; negations only appear as
// conjuncts next to a positive side.
QueryNode positive(Rng& rng, int depth) {
    if (depth == 0 || uniform_below(rng, 4) == 0) return leaf(rng);
    switch (uniform_below(rng, 3)) {
        case 0: return QueryNode::disj(positive(rng, depth - 1), positive(rng, depth - 1));
        case 1: return QueryNode::conj(positive(rng, depth - 1), positive(rng, depth - 1));
        default: {
            auto neg = QueryNode::negate(positive(rng, depth - 1));
            auto pos = positive(rng, depth - 1);
            return uniform_below(rng, 2) ? QueryNode::conj(std::move(pos), std::move(neg))
                                         : QueryNode::conj(std::move(neg), std::move(pos));
        }
    }
}

QueryNode T(const char* t) { return QueryNode::term(t); }
QueryNode Or(QueryNode a, QueryNode b) { return QueryNode::disj(std::move(a), std::move(b)); }
QueryNode And(QueryNode a, QueryNode b) { return QueryNode::conj(std::move(a), std::move(b)); }

}  // namespace

Outcome boolean_oracle() {
    Report rep;
    Rng rng(20160201);
    std::vector<std::vector<std::string>> docs;
    std::vector<Document> input;
    for (int d = 0; d < 200; ++d) {
        std::vector<std::string> toks;
        const std::size_t n = 3 + uniform_below(rng, 10);
        for (std::size_t i = 0; i < n; ++i) toks.push_back(pick_token(rng));
        std::string text;
        for (const auto& t : toks) text += (text.empty() ? "" : " ") + t;
        char id[8];
        std::snprintf(id, sizeof id, "d%03d", d);
        input.push_back({id, text});
        docs.push_back(std::move(toks));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto idx = InvertedIndex::build(input);
    std::size_t agree = 0, nonempty = 0, total_hits = 0;
    for (int q = 0; q < 100; ++q) {
        const auto ast = positive(rng, 4);
        // Through the text form as well, so the parser is part of the loop.
        const auto parsed = parse_query(print_query(ast));
        const auto got = idx.evaluate(parsed);
        std::vector<DocId> want;
        for (DocId d = 0; d < docs.size(); ++d) {
            if (holds(ast, docs[d])) want.push_back(d);
        }
        agree += got == want && parsed == ast;
        nonempty += !want.empty();
        total_hits += want.size();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep << agree << "/100 queries identical to brute force (" << nonempty << " non-empty, " << total_hits
        << " hits), " << secs << " s";
    rep.require(agree == 100, "id sets differ");
    rep.require(nonempty >= 30, "too few non-empty queries to be meaningful");
    rep.require(secs < 5.0, "slower than 5 s");
    return rep.done();
}

Outcome table_queries() {
    Report rep;
    const std::vector<std::pair<std::string, QueryNode>> table = {
        {"genetically | GMO", Or(T("genetically"), T("gmo"))},
        {"(symptom & (flu | cold)) & (not(rash))",
         And(And(T("symptom"), Or(T("flu"), T("cold"))), QueryNode::negate(T("rash")))},
        {"((tdap | MMR | Measles | Mumps | Rubella) & vaccine & microcephaly) | (vaccine & (cause | link | relate) & "
         "microcephaly)",
         Or(And(And(Or(Or(Or(Or(T("tdap"), T("mmr")), T("measles")), T("mumps")), T("rubella")), T("vaccine")),
                T("microcephaly")),
            And(And(T("vaccine"), Or(Or(T("cause"), T("link")), T("relate"))), T("microcephaly")))},
        {"(montsanto | pesticide | pyriproxyfen | insecticide) & microcephaly",
         And(Or(Or(Or(T("montsanto"), T("pesticide")), T("pyriproxyfen")), T("insecticide")), T("microcephaly"))},
        {"american & immune", And(T("american"), T("immune"))},
        {"((coffee | java | jive) & (repellent | protect)) & mosquito",
         And(And(Or(Or(T("coffee"), T("java")), T("jive")), Or(T("repellent"), T("protect"))), T("mosquito"))},
    };
    std::size_t ok = 0;
    for (const auto& [text, want] : table) {
        const auto got = parse_query(text);
        const auto printed = print_query(got);
        const bool good = got == want && parse_query(printed) == got && print_query(parse_query(printed)) == printed;
        ok += good;
        if (!good) rep.require(false, text + " -> " + describe(got));
    }
    // The query as originally printed has an unbalanced parenthesis.
    bool rejected = false;
    try {
        parse_query("((coffee | java | jive) & (repellent | protect)) & (java & jive) & (coffee & mosquito))");
    } catch (const QuerySyntaxError&) {
        rejected = true;
    }
    rep << ok << "/6 queries match their trees and round-trip; uncorrected R6 "
        << (rejected ? "rejected" : "accepted");
    rep.require(rejected, "uncorrected R6 should not parse");
    return rep.done();
}

}  // namespace acceptance
