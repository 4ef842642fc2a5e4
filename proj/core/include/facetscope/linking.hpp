#pragma once

#include <facetscope/index.hpp>
#include <facetscope/query.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace facetscope {

/// Number of top persons and top keywords that anchor the linking subset.
inline constexpr std::size_t kLinkingAnchorLimit = 10;
inline constexpr int kMaxIntensity = 5;

/// The four brushable facets, in canonical key order.
enum class LinkField { person, keyword, location, time };

std::string_view to_string(LinkField field);
std::optional<LinkField> parse_link_field(std::string_view name);
RecordField record_field(LinkField field);

/// An unordered pair of facet values from different fields, stored canonically:
/// (field_a, value_a) < (field_b, value_b) by field order, then case-folded value.
struct LinkingKey {
    LinkField field_a = LinkField::person;
    std::string value_a;  ///< case-folded
    LinkField field_b = LinkField::keyword;
    std::string value_b;  ///< case-folded

    /// Orders the two members canonically. Throws std::invalid_argument for equal fields.
    static LinkingKey make(LinkField f1, std::string v1, LinkField f2, std::string v2);

    auto operator<=>(const LinkingKey&) const = default;
    bool operator==(const LinkingKey&) const = default;
};

struct LinkEntry {
    std::size_t count = 0;  ///< documents sharing both values
    int intensity = 0;      ///< 1..5
    friend bool operator==(const LinkEntry&, const LinkEntry&) = default;
};

struct LinkingAnchors {
    std::vector<std::string> persons;   ///< display forms, facet order
    std::vector<std::string> keywords;  ///< display forms, facet order
    friend bool operator==(const LinkingAnchors&, const LinkingAnchors&) = default;
};

struct LinkingSubset {
    ResultSet subset;
    LinkingAnchors anchors;
};

struct LinkingTable {
    std::map<LinkingKey, LinkEntry> entries;
    std::vector<std::string> top_persons;
    std::vector<std::string> top_keywords;
    std::size_t subset_size = 0;
    friend bool operator==(const LinkingTable&, const LinkingTable&) = default;
};

/// The user query's result set narrowed to docs with at least one of its top-10 persons
/// and at least one of its top-10 keywords. An empty anchor list yields an empty subset.
LinkingSubset linking_subset(const QueryAst& user_query, const FacetFilters& filters, const Index& index);

/// Shared-document counts for every cross-field pair of candidate values. Candidates per doc are
/// its anchor persons, anchor keywords, all locations and its year; a doc adds each key once.
std::map<LinkingKey, std::size_t> pair_counts(const Index& index, const ResultSet& subset,
                                              const LinkingAnchors& anchors);

/// intensity = max(1, round_half_up(5 * count / max_count)).
int intensity_for(std::size_t count, std::size_t max_count);
std::map<LinkingKey, LinkEntry> normalize_intensity(const std::map<LinkingKey, std::size_t>& counts);

/// linking_subset, pair_counts and normalize_intensity in one pass.
LinkingTable build_linking_table(const QueryAst& user_query, const FacetFilters& filters, const Index& index);

struct LinkNeighbor {
    LinkField field;
    std::string value;  ///< case-folded
    int intensity = 0;
    friend bool operator==(const LinkNeighbor&, const LinkNeighbor&) = default;
};

/// Entries that contain (field, value), projected to the other member; ordered by field then value.
std::vector<LinkNeighbor> neighbors_of(const LinkingTable& table, LinkField field, std::string_view value);

/// Display form of a case-folded linking value.
std::string link_display(const Index& index, LinkField field, const std::string& key);

}  // namespace facetscope
