#pragma once

// Brute-force reference computations. They scan Records directly and share no code with the
// index-backed implementations beyond the data types; text handling is ASCII-only, which is
// all the synthetic corpora contain.

#include <facetscope/query.hpp>
#include <facetscope/record.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace facetscope::oracle {

std::string lower(const std::string& s);
std::vector<std::string> words(const std::string& s);

/// Distinct lower-cased values of a field in one record.
std::set<std::string> keys_of(const Record& r, RecordField field);

/// Naive per-record predicate for a query tree.
bool matches(const QueryNode& node, const Record& r);
bool passes(const FacetFilters& f, const Record& r);
/// Ordinals of the records that satisfy query and filters.
std::vector<std::uint32_t> filter(const std::vector<Record>& records, const QueryNode& q, const FacetFilters& f);

struct Count {
    std::string key;      ///< lower-cased
    std::string display;  ///< most frequent spelling, ties lexicographic
    std::size_t count;
    bool operator==(const Count&) const = default;
};

/// Full count-and-sort of a field over the given docs (count desc, key asc), truncated to k.
std::vector<Count> facet_tally(const std::vector<Record>& records, const std::vector<std::uint32_t>& docs,
                               RecordField field, std::size_t k);

std::map<int, std::size_t> year_tally(const std::vector<Record>& records, const std::vector<std::uint32_t>& docs);

/// key pair (a < b) -> shared doc count among the top-50 persons of docs.
std::map<std::pair<std::string, std::string>, std::size_t> coauthor_pairs(const std::vector<Record>& records,
                                                                          const std::vector<std::uint32_t>& docs);

std::vector<std::pair<std::string, std::size_t>> coword(const std::vector<Record>& records, const std::string& term,
                                                        std::size_t k);

/// field index 0..3 = person, keyword, location, time.
using LinkKey = std::tuple<int, std::string, int, std::string>;

struct Linking {
    std::vector<std::string> top_persons;   ///< lower-cased
    std::vector<std::string> top_keywords;  ///< lower-cased
    std::vector<std::uint32_t> subset;
    std::map<LinkKey, std::pair<std::size_t, int>> entries;  ///< count, intensity
};

/// naive filter -> per-doc pair enumeration -> count -> normalize.
Linking linking(const std::vector<Record>& records, const QueryNode& q, const FacetFilters& f);

/// max(1, floor(5 * count / max + 0.5)) in floating point.
int intensity(std::size_t count, std::size_t max_count);

}  // namespace facetscope::oracle
