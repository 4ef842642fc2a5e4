#pragma once

#include <facetscope/record.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace facetscope {

using DocOrdinal = std::uint32_t;
using TermId = std::uint32_t;

/// Matching doc ordinals, strictly ascending.
struct ResultSet {
    std::vector<DocOrdinal> ordinals;

    std::size_t total() const noexcept { return ordinals.size(); }
    bool empty() const noexcept { return ordinals.empty(); }

    /// Sorts and removes duplicates.
    static ResultSet from_unsorted(std::vector<DocOrdinal> ordinals);

    friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

struct FacetCount {
    std::string value;  ///< display form
    std::size_t count = 0;

    friend bool operator==(const FacetCount&, const FacetCount&) = default;
};

class IndexBuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedFieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class FieldKind { tokenized, categorical, year };

/// Fields with postings, in catalog order.
inline constexpr std::array<RecordField, 9> kIndexedFields{
    RecordField::title,     RecordField::persons,  RecordField::subjects,
    RecordField::year,      RecordField::locations, RecordField::info_type,
    RecordField::database,  RecordField::source,   RecordField::institutions,
};

/// nullopt for fields that are stored but not indexed (id, language).
std::optional<FieldKind> field_kind(RecordField field);

/// Per-field term dictionary and postings. Term ids are assigned in ascending key order.
class FieldPostings {
public:
    std::size_t term_count() const noexcept { return keys_.size(); }
    std::optional<TermId> find(std::string_view key) const;
    const std::string& key(TermId term) const { return keys_[term]; }
    const std::string& display(TermId term) const { return display_[term]; }
    std::span<const DocOrdinal> postings(TermId term) const { return postings_[term]; }
    std::span<const DocOrdinal> postings(std::string_view key) const;

    /// Distinct term ids of one document, ascending. Empty for tokenized fields.
    std::span<const TermId> doc_terms(DocOrdinal doc) const;

    /// Categorical terms whose tokenization joined by single spaces equals `joined_tokens`.
    std::span<const TermId> terms_by_token_form(std::string_view joined_tokens) const;

private:
    friend class Index;

    std::vector<std::string> keys_;
    std::vector<std::string> display_;
    std::vector<std::vector<DocOrdinal>> postings_;
    std::unordered_map<std::string, TermId> lookup_;
    std::vector<std::vector<TermId>> doc_terms_;
    std::unordered_map<std::string, std::vector<TermId>> token_forms_;
};

/// Immutable inverted index plus forward store.
class Index {
public:
    Index() = default;

    /// Ordinals follow input order. Throws IndexBuildError naming a duplicate id.
    static Index build(std::vector<Record> records);

    std::size_t doc_count() const noexcept { return records_.size(); }
    std::span<const Record> records() const noexcept { return records_; }
    const Record& record(DocOrdinal doc) const { return records_.at(doc); }
    std::optional<DocOrdinal> find_id(std::string_view id) const;

    std::span<const RecordField> field_catalog() const noexcept { return kIndexedFields; }

    /// Throws UnsupportedFieldError for fields without postings.
    const FieldPostings& field(RecordField field) const;

    ResultSet all_docs() const;

    /// Position of a doc in the canonical result order: year descending (absent last), id ascending.
    std::uint32_t result_rank(DocOrdinal doc) const { return result_rank_[doc]; }

private:
    std::vector<Record> records_;
    std::array<FieldPostings, kIndexedFields.size()> fields_;
    std::unordered_map<std::string, DocOrdinal> ids_;
    std::vector<std::uint32_t> result_rank_;
};

/// Case-folded lookup key for a categorical or year value.
std::string facet_key(std::string_view value);

/// Exact posting list of the case-folded value; empty when absent. For tokenized fields
/// the value must be a single token.
ResultSet postings_lookup(const Index& index, RecordField field, std::string_view value);

/// Top-k values of a categorical or year field among the docs of `rs`, count descending
/// then key ascending. Throws UnsupportedFieldError for tokenized or unindexed fields.
std::vector<FacetCount> facet_counts(const Index& index, const ResultSet& rs, RecordField field, std::size_t k);

inline constexpr int kIndexFormatVersion = 1;

/// Writes manifest.json and records.jsonl. Output is byte-identical for identical indexes.
void save_index(const Index& index, const std::filesystem::path& directory);

/// Rebuilds the index from a saved directory; verifies the format version, doc count and
/// per-field postings statistics recorded in the manifest.
Index load_index(const std::filesystem::path& directory);

}  // namespace facetscope
