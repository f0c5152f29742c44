#include "index/query.hpp"

#include <cctype>

#include "corpus/normalize.hpp"
#include "index/tokenize.hpp"

namespace rumortrack::index {

QueryNode QueryNode::term(std::string token) {
    QueryNode n;
    n.kind = NodeKind::Term;
    n.tokens.push_back(std::move(token));
    return n;
}

QueryNode QueryNode::phrase(std::vector<std::string> tokens) {
    if (tokens.size() == 1) return term(std::move(tokens.front()));
    QueryNode n;
    n.kind = NodeKind::Phrase;
    n.tokens = std::move(tokens);
    return n;
}

QueryNode QueryNode::conj(QueryNode lhs, QueryNode rhs) {
    QueryNode n;
    n.kind = NodeKind::And;
    n.position = lhs.position;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
}

QueryNode QueryNode::disj(QueryNode lhs, QueryNode rhs) {
    QueryNode n;
    n.kind = NodeKind::Or;
    n.position = lhs.position;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
}

QueryNode QueryNode::negate(QueryNode child) {
    QueryNode n;
    n.kind = NodeKind::Not;
    n.children.push_back(std::move(child));
    return n;
}

namespace {

enum class Tok { LParen, RParen, And, Or, Not, Word, Quoted, End };

struct Lexeme {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool is_word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '&' && c != '|' && c != '"';
}

std::vector<Lexeme> lex(std::string_view s) {
    std::vector<Lexeme> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            out.push_back({Tok::LParen, "(", i++});
        } else if (c == ')') {
            out.push_back({Tok::RParen, ")", i++});
        } else if (c == '&') {
            out.push_back({Tok::And, "&", i++});
        } else if (c == '|') {
            out.push_back({Tok::Or, "|", i++});
        } else if (c == '"') {
            const std::size_t start = i++;
            const auto close = s.find('"', i);
            if (close == std::string_view::npos) throw QuerySyntaxError(start, "unterminated quoted phrase");
            out.push_back({Tok::Quoted, std::string(s.substr(i, close - i)), start});
            i = close + 1;
        } else {
            const std::size_t start = i;
            while (i < s.size() && is_word_char(s[i])) ++i;
            std::string word(s.substr(start, i - start));
            std::size_t j = i;
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            const bool keyword = word.size() == 3 && std::tolower(static_cast<unsigned char>(word[0])) == 'n' &&
                                 std::tolower(static_cast<unsigned char>(word[1])) == 'o' &&
                                 std::tolower(static_cast<unsigned char>(word[2])) == 't' && j < s.size() &&
                                 s[j] == '(';
            out.push_back({keyword ? Tok::Not : Tok::Word, std::move(word), start});
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

const char* describe_tok(Tok t) {
    switch (t) {
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::And: return "'&'";
        case Tok::Or: return "'|'";
        case Tok::Not: return "'not'";
        case Tok::Word: return "term";
        case Tok::Quoted: return "phrase";
        case Tok::End: return "end of query";
    }
    return "token";
}

class Parser {
public:
    explicit Parser(std::vector<Lexeme> lexemes) : lx_(std::move(lexemes)) {}

    QueryNode parse() {
        QueryNode root = parse_or();
        if (peek().kind != Tok::End) {
            throw QuerySyntaxError(peek().pos, std::string("unexpected ") + describe_tok(peek().kind));
        }
        return root;
    }

private:
    const Lexeme& peek() const { return lx_[at_]; }
    const Lexeme& take() { return lx_[at_++]; }

    void expect(Tok kind) {
        if (peek().kind != kind) {
            throw QuerySyntaxError(peek().pos, std::string("expected ") + describe_tok(kind) + ", found " +
                                                   describe_tok(peek().kind));
        }
        ++at_;
    }

    QueryNode parse_or() {
        QueryNode lhs = parse_and();
        while (peek().kind == Tok::Or) {
            take();
            lhs = QueryNode::disj(std::move(lhs), parse_and());
        }
        return lhs;
    }

    QueryNode parse_and() {
        QueryNode lhs = parse_unary();
        while (peek().kind == Tok::And) {
            take();
            lhs = QueryNode::conj(std::move(lhs), parse_unary());
        }
        return lhs;
    }

    QueryNode parse_unary() {
        const Lexeme& lx = take();
        switch (lx.kind) {
            case Tok::Not: {
                expect(Tok::LParen);
                QueryNode inner = parse_or();
                expect(Tok::RParen);
                QueryNode n = QueryNode::negate(std::move(inner));
                n.position = lx.pos;
                return n;
            }
            case Tok::LParen: {
                QueryNode inner = parse_or();
                expect(Tok::RParen);
                return inner;
            }
            case Tok::Word:
            case Tok::Quoted: {
                auto tokens = tokenize(corpus::filter_token_chars(lx.text));
                if (tokens.empty()) throw QuerySyntaxError(lx.pos, "'" + lx.text + "' has no searchable characters");
                QueryNode n = QueryNode::phrase(std::move(tokens));
                n.position = lx.pos;
                return n;
            }
            default:
                throw QuerySyntaxError(lx.pos, std::string("expected a term, phrase, '(' or 'not(', found ") +
                                                   describe_tok(lx.kind));
        }
    }

    std::vector<Lexeme> lx_;
    std::size_t at_ = 0;
};

void validate_positive(const QueryNode& q);

void validate_conjunction(const QueryNode& q) {
    std::vector<const QueryNode*> conjuncts;
    collect_conjuncts(q, conjuncts);
    const QueryNode* first_not = nullptr;
    bool positive = false;
    for (const QueryNode* c : conjuncts) {
        if (c->kind == NodeKind::Not) {
            if (!first_not) first_not = c;
            if (c->children.front().kind == NodeKind::Not)
                throw QuerySyntaxError(c->children.front().position, "nested negation has nothing to subtract from");
            validate_positive(c->children.front());
        } else {
            positive = true;
            validate_positive(*c);
        }
    }
    if (!positive) {
        throw QuerySyntaxError(first_not->position,
                               "pure-negation query: every not(...) needs a positive term joined to it with '&'");
    }
}

void validate_positive(const QueryNode& q) {
    switch (q.kind) {
        case NodeKind::Term:
        case NodeKind::Phrase:
            return;
        case NodeKind::And:
            validate_conjunction(q);
            return;
        case NodeKind::Or:
            for (const auto& c : q.children) {
                if (c.kind == NodeKind::Not) {
                    throw QuerySyntaxError(c.position,
                                           "pure-negation query: not(...) cannot be an alternative of '|'");
                }
                validate_positive(c);
            }
            return;
        case NodeKind::Not:
            throw QuerySyntaxError(q.position,
                                   "pure-negation query: not(...) needs a positive term joined to it with '&'");
    }
}

enum class Side { Left, Right };

bool needs_parens(const QueryNode& child, NodeKind parent, Side side) {
    if (child.kind == NodeKind::Or) return parent == NodeKind::And || side == Side::Right;
    if (child.kind == NodeKind::And) return parent == NodeKind::And && side == Side::Right;
    return false;
}

void print_into(const QueryNode& q, std::string& out) {
    switch (q.kind) {
        case NodeKind::Term:
            out += q.tokens.front();
            return;
        case NodeKind::Phrase:
            out += '"';
            for (std::size_t i = 0; i < q.tokens.size(); ++i) {
                if (i) out += ' ';
                out += q.tokens[i];
            }
            out += '"';
            return;
        case NodeKind::Not:
            out += "not(";
            print_into(q.children.front(), out);
            out += ')';
            return;
        case NodeKind::And:
        case NodeKind::Or: {
            const char* op = q.kind == NodeKind::And ? " & " : " | ";
            for (int i = 0; i < 2; ++i) {
                const auto& c = q.children[static_cast<std::size_t>(i)];
                if (i) out += op;
                const bool parens = needs_parens(c, q.kind, i ? Side::Right : Side::Left);
                if (parens) out += '(';
                print_into(c, out);
                if (parens) out += ')';
            }
            return;
        }
    }
}

void describe_into(const QueryNode& q, std::string& out) {
    switch (q.kind) {
        case NodeKind::Term:
            out += "Term(" + q.tokens.front() + ")";
            return;
        case NodeKind::Phrase: {
            out += "Phrase(";
            for (std::size_t i = 0; i < q.tokens.size(); ++i) {
                if (i) out += ' ';
                out += q.tokens[i];
            }
            out += ')';
            return;
        }
        case NodeKind::Not:
            out += "Not(";
            describe_into(q.children.front(), out);
            out += ')';
            return;
        case NodeKind::And:
        case NodeKind::Or:
            out += q.kind == NodeKind::And ? "And(" : "Or(";
            describe_into(q.children[0], out);
            out += ',';
            describe_into(q.children[1], out);
            out += ')';
            return;
    }
}

}  // namespace

void collect_conjuncts(const QueryNode& q, std::vector<const QueryNode*>& out) {
    if (q.kind == NodeKind::And) {
        for (const auto& c : q.children) collect_conjuncts(c, out);
    } else {
        out.push_back(&q);
    }
}

void validate(const QueryNode& q) { validate_positive(q); }

QueryNode parse_query(std::string_view text) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw QuerySyntaxError(0, "empty query");
    Parser parser(lex(text));
    QueryNode root = parser.parse();
    validate(root);
    return root;
}

std::string print_query(const QueryNode& q) {
    std::string out;
    print_into(q, out);
    return out;
}

std::string describe(const QueryNode& q) {
    std::string out;
    describe_into(q, out);
    return out;
}

}  // namespace rumortrack::index
