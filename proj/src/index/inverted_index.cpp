#include "index/inverted_index.hpp"

#include <algorithm>
#include <tuple>

#include "index/tokenize.hpp"
#include "util/error.hpp"
#include "util/text_io.hpp"

namespace rumortrack::index {

namespace {

void post(std::map<std::string, std::vector<Posting>, std::less<>>& terms, std::string_view token, DocId doc,
          std::uint32_t pos) {
    auto it = terms.find(token);
    if (it == terms.end()) it = terms.emplace(std::string(token), std::vector<Posting>{}).first;
    auto& list = it->second;
    if (list.empty() || list.back().doc != doc) list.push_back({doc, {}});
    auto& positions = list.back().positions;
    if (positions.empty() || positions.back() != pos) positions.push_back(pos);
}

const std::vector<Posting> kEmpty;

}  // namespace

InvertedIndex InvertedIndex::build(const std::vector<Document>& docs) {
    InvertedIndex idx;
    idx.message_ids_.reserve(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto doc = static_cast<DocId>(d);
        idx.message_ids_.push_back(docs[d].message_id);
        const auto tokens = tokenize(docs[d].canonical_text);
        for (std::size_t p = 0; p < tokens.size(); ++p) {
            const auto pos = static_cast<std::uint32_t>(p);
            post(idx.terms_, tokens[p], doc, pos);
            if (is_hashtag(tokens[p])) post(idx.terms_, strip_hash(tokens[p]), doc, pos);
        }
    }
    return idx;
}

const std::vector<Posting>& InvertedIndex::postings(std::string_view token) const {
    const auto it = terms_.find(token);
    return it == terms_.end() ? kEmpty : it->second;
}

std::vector<DocId> InvertedIndex::docs_with(std::string_view token) const {
    std::vector<DocId> out;
    for (const auto& p : postings(token)) out.push_back(p.doc);
    return out;
}

std::vector<DocId> InvertedIndex::docs_with_phrase(const std::vector<std::string>& tokens) const {
    if (tokens.empty()) return {};
    std::vector<const std::vector<Posting>*> lists;
    for (const auto& t : tokens) lists.push_back(&postings(t));

    std::vector<DocId> out;
    std::vector<std::size_t> cursor(lists.size(), 0);
    for (const auto& first : *lists[0]) {
        bool all = true;
        std::vector<const Posting*> hits{&first};
        for (std::size_t k = 1; k < lists.size(); ++k) {
            auto& c = cursor[k];
            const auto& list = *lists[k];
            while (c < list.size() && list[c].doc < first.doc) ++c;
            if (c == list.size() || list[c].doc != first.doc) {
                all = false;
                break;
            }
            hits.push_back(&list[c]);
        }
        if (!all) continue;
        for (std::uint32_t start : first.positions) {
            bool match = true;
            for (std::size_t k = 1; k < hits.size() && match; ++k) {
                const auto& pos = hits[k]->positions;
                match = std::binary_search(pos.begin(), pos.end(), start + static_cast<std::uint32_t>(k));
            }
            if (match) {
                out.push_back(first.doc);
                break;
            }
        }
    }
    return out;
}

std::vector<DocId> InvertedIndex::evaluate(const QueryNode& q) const {
    switch (q.kind) {
        case NodeKind::Term:
            return docs_with(q.tokens.front());
        case NodeKind::Phrase:
            return docs_with_phrase(q.tokens);
        case NodeKind::Or:
            return set_union(evaluate(q.children[0]), evaluate(q.children[1]));
        case NodeKind::And: {
            std::vector<const QueryNode*> conjuncts;
            collect_conjuncts(q, conjuncts);
            std::vector<DocId> result;
            bool seeded = false;
            for (const QueryNode* c : conjuncts) {
                if (c->kind == NodeKind::Not) continue;
                result = seeded ? set_intersection(result, evaluate(*c)) : evaluate(*c);
                seeded = true;
            }
            if (!seeded) fail(ErrorKind::InvalidArgument, "conjunction without a positive conjunct");
            for (const QueryNode* c : conjuncts) {
                if (c->kind == NodeKind::Not && !result.empty())
                    result = set_difference(result, evaluate(c->children.front()));
            }
            return result;
        }
        case NodeKind::Not:
            break;
    }
    fail(ErrorKind::InvalidArgument, "negation outside a conjunction");
}

std::string InvertedIndex::serialize() const {
    std::string out = "rumortrack-index\t1\n";
    out += "documents\t" + std::to_string(message_ids_.size()) + '\n';
    for (const auto& id : message_ids_) out += id + '\n';
    out += "terms\t" + std::to_string(terms_.size()) + '\n';
    for (const auto& [token, list] : terms_) {
        out += token;
        for (const auto& p : list) {
            out += '\t';
            out += std::to_string(p.doc);
            out += ':';
            for (std::size_t i = 0; i < p.positions.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(p.positions[i]);
            }
        }
        out += '\n';
    }
    return out;
}

InvertedIndex InvertedIndex::deserialize(std::string_view text) {
    auto lines = split(text, '\n');
    std::size_t at = 0;
    auto next = [&]() -> const std::string& {
        if (at >= lines.size()) fail(ErrorKind::Parse, "truncated index file");
        return lines[at++];
    };
    if (next() != "rumortrack-index\t1") fail(ErrorKind::Parse, "not a rumortrack index (version 1)");
    InvertedIndex idx;
    auto header = split(next(), '\t');
    if (header.size() != 2 || header[0] != "documents") fail(ErrorKind::Parse, "index: bad documents header");
    const auto n_docs = static_cast<std::size_t>(parse_int(header[1]));
    for (std::size_t i = 0; i < n_docs; ++i) idx.message_ids_.push_back(next());
    header = split(next(), '\t');
    if (header.size() != 2 || header[0] != "terms") fail(ErrorKind::Parse, "index: bad terms header");
    const auto n_terms = static_cast<std::size_t>(parse_int(header[1]));
    for (std::size_t i = 0; i < n_terms; ++i) {
        auto cols = split(next(), '\t');
        std::vector<Posting> list;
        for (std::size_t c = 1; c < cols.size(); ++c) {
            const auto colon = cols[c].find(':');
            if (colon == std::string::npos) fail(ErrorKind::Parse, "index: bad posting");
            Posting p{static_cast<DocId>(parse_int(std::string_view(cols[c]).substr(0, colon))), {}};
            if (p.doc >= n_docs) fail(ErrorKind::Parse, "index: posting refers to unknown document");
            for (const auto& pos : split(std::string_view(cols[c]).substr(colon + 1), ','))
                p.positions.push_back(static_cast<std::uint32_t>(parse_int(pos)));
            if (!list.empty() && list.back().doc >= p.doc) fail(ErrorKind::Parse, "index: postings not increasing");
            list.push_back(std::move(p));
        }
        idx.terms_.emplace(cols[0], std::move(list));
    }
    return idx;
}

std::vector<DocId> set_union(const std::vector<DocId>& a, const std::vector<DocId>& b) {
    std::vector<DocId> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<DocId> set_intersection(const std::vector<DocId>& a, const std::vector<DocId>& b) {
    std::vector<DocId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<DocId> set_difference(const std::vector<DocId>& a, const std::vector<DocId>& b) {
    std::vector<DocId> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::string> top_k(std::vector<RankKey> candidates, std::size_t k) {
    std::sort(candidates.begin(), candidates.end(), [](const RankKey& a, const RankKey& b) {
        return std::tie(b.retweet_count, a.created_at, a.id) < std::tie(a.retweet_count, b.created_at, b.id);
    });
    if (candidates.size() > k) candidates.resize(k);
    std::vector<std::string> out;
    out.reserve(candidates.size());
    for (auto& c : candidates) out.push_back(std::move(c.id));
    return out;
}

}  // namespace rumortrack::index
