#include <facetscope/query.hpp>

#include <array>
#include <charconv>
#include <utility>

namespace facetscope {

namespace {

constexpr std::array<std::pair<QueryField, std::string_view>, 10> kQueryFields{{
    {QueryField::all, "all"},
    {QueryField::title, "title"},
    {QueryField::keyword, "keyword"},
    {QueryField::person, "person"},
    {QueryField::source, "source"},
    {QueryField::institution, "institution"},
    {QueryField::year, "year"},
    {QueryField::location, "location"},
    {QueryField::type, "type"},
    {QueryField::database, "database"},
}};

enum class TokenKind { lparen, rparen, lbracket, rbracket, word, quoted, field_prefix, end };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset;
};

bool is_delimiter(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '(' || c == ')' || c == '"' ||
           c == '[' || c == ']' || c == ':';
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (is_blank(c)) {
            ++i;
            continue;
        }
        switch (c) {
            case '(': tokens.push_back({TokenKind::lparen, "(", i++}); continue;
            case ')': tokens.push_back({TokenKind::rparen, ")", i++}); continue;
            case '[': tokens.push_back({TokenKind::lbracket, "[", i++}); continue;
            case ']': tokens.push_back({TokenKind::rbracket, "]", i++}); continue;
            case ':': throw QuerySyntaxError(i, "':' without a field name");
            default: break;
        }
        if (c == '"') {
            const std::size_t start = i++;
            std::string content;
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\\' && i + 1 < text.size()) {
                    content.push_back(text[i + 1]);
                    i += 2;
                } else if (text[i] == '"') {
                    ++i;
                    closed = true;
                    break;
                } else {
                    content.push_back(text[i++]);
                }
            }
            if (!closed) throw QuerySyntaxError(start, "unterminated quoted phrase");
            tokens.push_back({TokenKind::quoted, std::move(content), start});
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && !is_delimiter(text[i])) ++i;
        std::string word(text.substr(start, i - start));
        if (i < text.size() && text[i] == ':') {
            ++i;
            tokens.push_back({TokenKind::field_prefix, std::move(word), start});
        } else {
            tokens.push_back({TokenKind::word, std::move(word), start});
        }
    }
    tokens.push_back({TokenKind::end, "", text.size()});
    return tokens;
}

bool is_operator(const Token& t) {
    return t.kind == TokenKind::word && (t.text == "AND" || t.text == "OR" || t.text == "NOT");
}

std::optional<int> parse_year(std::string_view text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    if (value < kMinYear || value > kMaxYear) return std::nullopt;
    return value;
}

bool is_tokenized(QueryField f) {
    return f == QueryField::all || f == QueryField::title || f == QueryField::source;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(lex(text)) {}

    QueryAst parse() {
        if (peek().kind == TokenKind::end) return QueryNode::match_all();
        QueryAst ast = parse_or();
        if (peek().kind == TokenKind::rparen) throw QuerySyntaxError(peek().offset, "unbalanced ')'");
        if (peek().kind != TokenKind::end) throw QuerySyntaxError(peek().offset, "unexpected '" + peek().text + "'");
        return ast;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }
    bool at_word(std::string_view w) const { return peek().kind == TokenKind::word && peek().text == w; }

    bool starts_operand() const {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::lparen:
            case TokenKind::quoted:
            case TokenKind::field_prefix: return true;
            case TokenKind::word: return t.text != "AND" && t.text != "OR";
            default: return false;
        }
    }

    void expect_operand(const Token& op) {
        if (!starts_operand()) {
            throw QuerySyntaxError(op.offset, "dangling operator '" + op.text + "'");
        }
    }

    QueryNode parse_or() {
        std::vector<QueryNode> children;
        children.push_back(parse_and());
        while (at_word("OR")) {
            Token op = take();
            expect_operand(op);
            children.push_back(parse_and());
        }
        if (children.size() == 1) return std::move(children.front());
        return QueryNode::any_of(std::move(children));
    }

    QueryNode parse_and() {
        std::vector<QueryNode> children;
        children.push_back(parse_not());
        for (;;) {
            if (at_word("AND")) {
                Token op = take();
                expect_operand(op);
                children.push_back(parse_not());
            } else if (starts_operand()) {
                children.push_back(parse_not());
            } else {
                break;
            }
        }
        if (children.size() == 1) return std::move(children.front());
        return QueryNode::all_of(std::move(children));
    }

    QueryNode parse_not() {
        if (at_word("NOT")) {
            Token op = take();
            expect_operand(op);
            return QueryNode::negate(parse_not());
        }
        return parse_primary();
    }

    QueryNode parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::lparen: {
                Token open = take();
                if (peek().kind == TokenKind::end) throw QuerySyntaxError(open.offset, "unbalanced '('");
                if (peek().kind == TokenKind::rparen) throw QuerySyntaxError(open.offset, "empty parentheses");
                QueryNode inner = parse_or();
                if (peek().kind != TokenKind::rparen) throw QuerySyntaxError(open.offset, "unbalanced '('");
                take();
                return inner;
            }
            case TokenKind::field_prefix: {
                Token prefix = take();
                auto field = parse_query_field(case_fold(prefix.text));
                if (!field) throw QuerySyntaxError(prefix.offset, "unknown field '" + prefix.text + "'");
                return parse_value(*field, prefix);
            }
            case TokenKind::word:
                if (is_operator(t)) throw QuerySyntaxError(t.offset, "dangling operator '" + t.text + "'");
                if (t.text == "*") {
                    take();
                    return QueryNode::match_all();
                }
                return parse_value(QueryField::all, t);
            case TokenKind::quoted: return parse_value(QueryField::all, t);
            case TokenKind::lbracket: throw QuerySyntaxError(t.offset, "year range without 'year:' field");
            case TokenKind::rparen: throw QuerySyntaxError(t.offset, "unbalanced ')'");
            case TokenKind::rbracket: throw QuerySyntaxError(t.offset, "unexpected ']'");
            case TokenKind::end: break;
        }
        throw QuerySyntaxError(t.offset, "unexpected end of query");
    }

    QueryNode parse_value(QueryField field, const Token& anchor) {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::word: {
                Token w = take();
                if (field == QueryField::year) {
                    auto year = parse_year(w.text);
                    if (!year) throw QuerySyntaxError(w.offset, "malformed year '" + w.text + "'");
                    return QueryNode::term(field, std::to_string(*year));
                }
                return QueryNode::term(field, case_fold(w.text));
            }
            case TokenKind::quoted: {
                Token q = take();
                if (field == QueryField::year) {
                    auto year = parse_year(collapse_whitespace(q.text));
                    if (!year) throw QuerySyntaxError(q.offset, "malformed year '" + q.text + "'");
                    return QueryNode::term(field, std::to_string(*year));
                }
                if (is_tokenized(field)) {
                    auto words = tokenize(q.text);
                    if (words.empty()) throw QuerySyntaxError(q.offset, "empty phrase");
                    return QueryNode::phrase(field, std::move(words));
                }
                std::string value = facet_key(q.text);
                if (value.empty()) throw QuerySyntaxError(q.offset, "empty phrase");
                return QueryNode::term(field, std::move(value));
            }
            case TokenKind::lbracket: return parse_range(field);
            default: break;
        }
        throw QuerySyntaxError(t.kind == TokenKind::end ? anchor.offset : t.offset,
                               "missing value for field '" + std::string(to_string(field)) + "'");
    }

    QueryNode parse_range(QueryField field) {
        Token open = take();
        if (field != QueryField::year) throw QuerySyntaxError(open.offset, "ranges are only valid for 'year:'");
        auto bound = [&]() -> int {
            if (peek().kind != TokenKind::word) throw QuerySyntaxError(peek().offset, "malformed range");
            Token w = take();
            auto year = parse_year(w.text);
            if (!year) throw QuerySyntaxError(w.offset, "malformed range bound '" + w.text + "'");
            return *year;
        };
        const int from = bound();
        if (!at_word("TO")) throw QuerySyntaxError(peek().offset, "malformed range: expected 'TO'");
        take();
        const int to = bound();
        if (peek().kind != TokenKind::rbracket) throw QuerySyntaxError(peek().offset, "malformed range: expected ']'");
        take();
        if (from > to) throw QuerySyntaxError(open.offset, "malformed range: lower bound exceeds upper bound");
        return QueryNode::year_range(from, to);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

bool bare_safe(std::string_view value) {
    if (value.empty() || value == "*" || value == "AND" || value == "OR" || value == "NOT" || value == "TO") {
        return false;
    }
    for (char c : value) {
        if (is_delimiter(c) || c == '\\') return false;
    }
    return true;
}

std::string quote(std::string_view value) {
    std::string out = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string field_prefix(QueryField field) {
    return field == QueryField::all ? std::string{} : std::string(to_string(field)) + ":";
}

}  // namespace

std::string_view to_string(QueryField field) {
    for (const auto& [f, name] : kQueryFields) {
        if (f == field) return name;
    }
    return "all";
}

std::optional<QueryField> parse_query_field(std::string_view name) {
    for (const auto& [f, n] : kQueryFields) {
        if (n == name) return f;
    }
    return std::nullopt;
}

std::optional<RecordField> target_field(QueryField field) {
    switch (field) {
        case QueryField::title: return RecordField::title;
        case QueryField::keyword: return RecordField::subjects;
        case QueryField::person: return RecordField::persons;
        case QueryField::source: return RecordField::source;
        case QueryField::institution: return RecordField::institutions;
        case QueryField::year: return RecordField::year;
        case QueryField::location: return RecordField::locations;
        case QueryField::type: return RecordField::info_type;
        case QueryField::database: return RecordField::database;
        case QueryField::all: break;
    }
    return std::nullopt;
}

QueryNode QueryNode::match_all() { return QueryNode{}; }

QueryNode QueryNode::term(QueryField field, std::string value) {
    QueryNode n;
    n.kind = NodeKind::field_term;
    n.field = field;
    n.value = std::move(value);
    return n;
}

QueryNode QueryNode::phrase(QueryField field, std::vector<std::string> words) {
    QueryNode n;
    n.kind = NodeKind::phrase;
    n.field = field;
    n.words = std::move(words);
    return n;
}

QueryNode QueryNode::year_range(int from, int to) {
    QueryNode n;
    n.kind = NodeKind::year_range;
    n.field = QueryField::year;
    n.from_year = from;
    n.to_year = to;
    return n;
}

QueryNode QueryNode::all_of(std::vector<QueryNode> children) {
    QueryNode n;
    n.kind = NodeKind::and_;
    n.children = std::move(children);
    return n;
}

QueryNode QueryNode::any_of(std::vector<QueryNode> children) {
    QueryNode n;
    n.kind = NodeKind::or_;
    n.children = std::move(children);
    return n;
}

QueryNode QueryNode::negate(QueryNode child) {
    QueryNode n;
    n.kind = NodeKind::not_;
    n.children.push_back(std::move(child));
    return n;
}

QuerySyntaxError::QuerySyntaxError(std::size_t offset, const std::string& message)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + message),
      offset_(offset),
      detail_(message) {}

QueryAst parse_query(std::string_view text) {
    return Parser(text).parse();
}

std::string print_query(const QueryAst& ast) {
    switch (ast.kind) {
        case NodeKind::match_all: return "*";
        case NodeKind::field_term:
            return field_prefix(ast.field) + (bare_safe(ast.value) ? ast.value : quote(ast.value));
        case NodeKind::phrase: {
            std::string joined;
            for (const auto& w : ast.words) {
                if (!joined.empty()) joined.push_back(' ');
                joined += w;
            }
            return field_prefix(ast.field) + quote(joined);
        }
        case NodeKind::year_range:
            return "year:[" + std::to_string(ast.from_year) + " TO " + std::to_string(ast.to_year) + "]";
        case NodeKind::not_: return "NOT " + print_query(ast.children.front());
        case NodeKind::and_:
        case NodeKind::or_: {
            const std::string_view op = ast.kind == NodeKind::and_ ? " AND " : " OR ";
            std::string out = "(";
            for (std::size_t i = 0; i < ast.children.size(); ++i) {
                if (i > 0) out += op;
                out += print_query(ast.children[i]);
            }
            out += ")";
            return out;
        }
    }
    return "*";
}

}  // namespace facetscope
