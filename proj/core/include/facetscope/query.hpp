#pragma once

#include <facetscope/index.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace facetscope {

/// Field names accepted before ':' in the query language.
enum class QueryField { all, title, keyword, person, source, institution, year, location, type, database };

std::string_view to_string(QueryField field);
std::optional<QueryField> parse_query_field(std::string_view name);

/// Record field a query field resolves to; nullopt for `all`.
std::optional<RecordField> target_field(QueryField field);

enum class NodeKind { match_all, field_term, phrase, year_range, and_, or_, not_ };

/// Parsed Boolean query. A plain value type; children are owned by value.
struct QueryNode {
    NodeKind kind = NodeKind::match_all;
    QueryField field = QueryField::all;
    std::string value;               ///< field_term: case-folded value
    std::vector<std::string> words;  ///< phrase: lower-cased tokens
    int from_year = 0;               ///< year_range, inclusive
    int to_year = 0;
    std::vector<QueryNode> children;  ///< and_/or_: >= 2, not_: exactly 1

    static QueryNode match_all();
    static QueryNode term(QueryField field, std::string value);
    static QueryNode phrase(QueryField field, std::vector<std::string> words);
    static QueryNode year_range(int from, int to);
    static QueryNode all_of(std::vector<QueryNode> children);
    static QueryNode any_of(std::vector<QueryNode> children);
    static QueryNode negate(QueryNode child);

    friend bool operator==(const QueryNode&, const QueryNode&) = default;
};

using QueryAst = QueryNode;

class QuerySyntaxError : public std::runtime_error {
public:
    QuerySyntaxError(std::size_t offset, const std::string& message);
    std::size_t offset() const noexcept { return offset_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t offset_;
    std::string detail_;
};

/// Query shapes the evaluator refuses, such as pure negation.
class UnsupportedQueryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grammar (precedence NOT > AND > OR, juxtaposition is AND):
///   query   := or
///   or      := and ("OR" and)*
///   and     := not ("AND"? not)*
///   not     := "NOT" not | primary
///   primary := "(" query ")" | FIELD ":" value | value | "*"
///   value   := "quoted phrase" | bare-term | "[" YEAR "TO" YEAR "]"   (ranges: year only)
/// Empty input parses to match_all. Throws QuerySyntaxError with a byte offset.
QueryAst parse_query(std::string_view text);

/// Prints an AST in the query language; parse_query(print_query(parse_query(q))) == parse_query(q).
std::string print_query(const QueryAst& ast);

/// Conjunctive facet filters supplied alongside the query string.
struct FacetFilters {
    std::optional<std::string> info_type;
    std::optional<std::string> database;
    std::optional<std::string> person;
    std::optional<std::string> subject;
    std::optional<int> from_year;
    std::optional<int> to_year;

    bool empty() const noexcept;
    /// Throws std::invalid_argument when from_year > to_year.
    void validate() const;

    friend bool operator==(const FacetFilters&, const FacetFilters&) = default;
};

/// Set semantics over the index; result ordinals ascending. Throws UnsupportedQueryError
/// for negations that are not inside an And with a positive sibling.
ResultSet evaluate(const QueryAst& ast, const FacetFilters& filters, const Index& index);

/// Canonical result-list order: year descending (absent last), then id ascending.
std::vector<DocOrdinal> order_results(const Index& index, const ResultSet& rs);

/// Ordinals at positions [page*size, (page+1)*size) of the canonical order.
std::vector<DocOrdinal> result_page(const Index& index, const ResultSet& rs, std::size_t page, std::size_t size);

}  // namespace facetscope
