#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "util/error.hpp"

namespace rumortrack::index {

enum class NodeKind { Term, Phrase, And, Or, Not };

// Boolean rumor query. And/Or are binary (left-associative chains nest to the
// left), Not has one child, Term carries one lowercase token and Phrase two or
// more tokens that must appear adjacent.
struct QueryNode {
    NodeKind kind = NodeKind::Term;
    std::vector<std::string> tokens;
    std::vector<QueryNode> children;
    std::size_t position = 0;  // source offset; not part of equality

    static QueryNode term(std::string token);
    static QueryNode phrase(std::vector<std::string> tokens);
    static QueryNode conj(QueryNode lhs, QueryNode rhs);
    static QueryNode disj(QueryNode lhs, QueryNode rhs);
    static QueryNode negate(QueryNode child);

    bool operator==(const QueryNode& other) const {
        return kind == other.kind && tokens == other.tokens && children == other.children;
    }
};

class QuerySyntaxError : public Error {
public:
    QuerySyntaxError(std::size_t position, const std::string& message)
        : Error(ErrorKind::Parse, message + " at position " + std::to_string(position)),
          position_(position),
          message_(message) {}

    // 0-based byte offset into the query string.
    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

// Grammar, loosest binding first:
//   or   := and ('|' and)*
//   and  := unary ('&' unary)*
//   unary:= 'not' '(' or ')' | '(' or ')' | word | '"' words '"'
// `not` is a keyword (any case) only when followed by '('. Words are filtered
// and split exactly like message text; a word that splits into several tokens
// becomes a phrase. Throws QuerySyntaxError, including for queries in which a
// negation has no positive conjunct to subtract from.
QueryNode parse_query(std::string_view text);

// Canonical form; parse_query(print_query(q)) == q.
std::string print_query(const QueryNode& q);

// Structural rendering used in tests and docs, e.g. And(Term(a),Not(Term(b))).
std::string describe(const QueryNode& q);

// Throws QuerySyntaxError if a Not node is not a conjunct of an And
// chain that also holds a positive conjunct.
void validate(const QueryNode& q);

// Flattens nested And nodes into their conjuncts.
void collect_conjuncts(const QueryNode& q, std::vector<const QueryNode*>& out);

}  // namespace rumortrack::index
