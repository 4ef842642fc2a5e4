#include <facetscope/query.hpp>
#include <facetscope/set_ops.hpp>

#include <algorithm>

namespace facetscope {

namespace {

const std::string& text_of(const Record& r, RecordField field) {
    return field == RecordField::title ? r.title : r.source;
}

bool contains_sequence(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
    if (needle.empty() || needle.size() > haystack.size()) return false;
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

// Docs whose tokenized text field contains `words` consecutively.
ResultSet phrase_match(const Index& index, RecordField field, const std::vector<std::string>& words) {
    const auto& fp = index.field(field);
    if (words.empty()) return {};
    ResultSet candidates = to_result_set(fp.postings(words.front()));
    for (std::size_t i = 1; i < words.size() && !candidates.empty(); ++i) {
        candidates = intersect(candidates, to_result_set(fp.postings(words[i])));
    }
    if (words.size() == 1) return candidates;
    ResultSet out;
    for (DocOrdinal d : candidates.ordinals) {
        if (contains_sequence(tokenize(text_of(index.record(d), field)), words)) out.ordinals.push_back(d);
    }
    return out;
}

ResultSet text_match(const Index& index, RecordField field, std::string_view value) {
    return phrase_match(index, field, tokenize(value));
}

ResultSet categorical_match(const Index& index, RecordField field, std::string_view key) {
    return to_result_set(index.field(field).postings(key));
}

// Categorical values whose token form equals `words`.
ResultSet categorical_phrase(const Index& index, RecordField field, const std::vector<std::string>& words) {
    std::string joined;
    for (const auto& w : words) {
        if (!joined.empty()) joined.push_back(' ');
        joined += w;
    }
    const auto& fp = index.field(field);
    ResultSet out;
    for (TermId t : fp.terms_by_token_form(joined)) out = unite(out, to_result_set(fp.postings(t)));
    return out;
}

ResultSet year_range(const Index& index, int from, int to) {
    const auto& fp = index.field(RecordField::year);
    std::vector<DocOrdinal> docs;
    for (TermId t = 0; t < fp.term_count(); ++t) {
        const int year = std::stoi(fp.key(t));
        if (year >= from && year <= to) {
            auto p = fp.postings(t);
            docs.insert(docs.end(), p.begin(), p.end());
        }
    }
    return ResultSet::from_unsorted(std::move(docs));
}

ResultSet eval_term(const QueryNode& node, const Index& index) {
    if (node.field == QueryField::all) {
        ResultSet out = text_match(index, RecordField::title, node.value);
        out = unite(out, categorical_match(index, RecordField::subjects, node.value));
        out = unite(out, categorical_match(index, RecordField::persons, node.value));
        out = unite(out, text_match(index, RecordField::source, node.value));
        return out;
    }
    const RecordField field = *target_field(node.field);
    if (field_kind(field) == FieldKind::tokenized) return text_match(index, field, node.value);
    return categorical_match(index, field, facet_key(node.value));
}

ResultSet eval_phrase(const QueryNode& node, const Index& index) {
    if (node.field == QueryField::all) {
        ResultSet out = phrase_match(index, RecordField::title, node.words);
        out = unite(out, categorical_phrase(index, RecordField::subjects, node.words));
        out = unite(out, categorical_phrase(index, RecordField::persons, node.words));
        out = unite(out, phrase_match(index, RecordField::source, node.words));
        return out;
    }
    const RecordField field = *target_field(node.field);
    if (field_kind(field) == FieldKind::tokenized) return phrase_match(index, field, node.words);
    return categorical_phrase(index, field, node.words);
}

ResultSet eval(const QueryNode& node, const Index& index) {
    switch (node.kind) {
        case NodeKind::match_all: return index.all_docs();
        case NodeKind::field_term: return eval_term(node, index);
        case NodeKind::phrase: return eval_phrase(node, index);
        case NodeKind::year_range: return year_range(index, node.from_year, node.to_year);
        case NodeKind::or_: {
            ResultSet out;
            for (const auto& child : node.children) out = unite(out, eval(child, index));
            return out;
        }
        case NodeKind::and_: {
            std::vector<const QueryNode*> positives;
            std::vector<const QueryNode*> negatives;
            for (const auto& child : node.children) {
                (child.kind == NodeKind::not_ ? negatives : positives).push_back(&child);
            }
            if (positives.empty()) {
                throw UnsupportedQueryError("conjunction of negations only; add a positive term");
            }
            ResultSet out = eval(*positives.front(), index);
            for (std::size_t i = 1; i < positives.size() && !out.empty(); ++i) {
                out = intersect(out, eval(*positives[i], index));
            }
            for (const auto* neg : negatives) {
                if (out.empty()) break;
                out = subtract(out, eval(neg->children.front(), index));
            }
            return out;
        }
        case NodeKind::not_:
            throw UnsupportedQueryError("NOT must be combined with a positive term under AND");
    }
    return {};
}

}  // namespace

bool FacetFilters::empty() const noexcept {
    return !info_type && !database && !person && !subject && !from_year && !to_year;
}

void FacetFilters::validate() const {
    if (from_year && to_year && *from_year > *to_year) {
        throw std::invalid_argument("time filter 'from' (" + std::to_string(*from_year) + ") exceeds 'to' (" +
                                    std::to_string(*to_year) + ")");
    }
}

ResultSet evaluate(const QueryAst& ast, const FacetFilters& filters, const Index& index) {
    filters.validate();
    ResultSet rs = eval(ast, index);
    auto narrow = [&](const std::optional<std::string>& value, RecordField field) {
        if (value && !rs.empty()) rs = intersect(rs, categorical_match(index, field, facet_key(*value)));
    };
    narrow(filters.info_type, RecordField::info_type);
    narrow(filters.database, RecordField::database);
    narrow(filters.person, RecordField::persons);
    narrow(filters.subject, RecordField::subjects);
    if ((filters.from_year || filters.to_year) && !rs.empty()) {
        rs = intersect(rs, year_range(index, filters.from_year.value_or(kMinYear), filters.to_year.value_or(kMaxYear)));
    }
    return rs;
}

std::vector<DocOrdinal> order_results(const Index& index, const ResultSet& rs) {
    std::vector<DocOrdinal> out = rs.ordinals;
    std::sort(out.begin(), out.end(),
              [&](DocOrdinal a, DocOrdinal b) { return index.result_rank(a) < index.result_rank(b); });
    return out;
}

std::vector<DocOrdinal> result_page(const Index& index, const ResultSet& rs, std::size_t page, std::size_t size) {
    const std::size_t begin = page * size;
    if (size == 0 || begin >= rs.total()) return {};
    const std::size_t end = std::min(rs.total(), begin + size);
    std::vector<DocOrdinal> ordered = rs.ordinals;
    auto by_rank = [&](DocOrdinal a, DocOrdinal b) { return index.result_rank(a) < index.result_rank(b); };
    std::partial_sort(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(end), ordered.end(), by_rank);
    return {ordered.begin() + static_cast<std::ptrdiff_t>(begin), ordered.begin() + static_cast<std::ptrdiff_t>(end)};
}

}  // namespace facetscope
