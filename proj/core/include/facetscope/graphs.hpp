#pragma once

#include <facetscope/index.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace facetscope {

inline constexpr std::size_t kCoAuthorNodeLimit = 50;

struct AuthorNode {
    std::string name;  ///< display form
    std::size_t count = 0;
    friend bool operator==(const AuthorNode&, const AuthorNode&) = default;
};

/// One unordered author pair; `a` precedes `b` by case-folded name.
struct CoAuthorEdge {
    std::string a;
    std::string b;
    std::size_t count = 0;
    friend bool operator==(const CoAuthorEdge&, const CoAuthorEdge&) = default;
};

struct CoAuthorGraph {
    std::vector<AuthorNode> nodes;    ///< facet order of the top-50 persons
    std::vector<CoAuthorEdge> edges;  ///< ordered by (a, b) case-folded
    friend bool operator==(const CoAuthorGraph&, const CoAuthorGraph&) = default;
};

/// Co-authorship network among the 50 most frequent persons of `rs`.
CoAuthorGraph coauthor_graph(const Index& index, const ResultSet& rs);

struct TermSuggestion {
    std::string keyword;  ///< display form
    std::size_t count = 0;
    friend bool operator==(const TermSuggestion&, const TermSuggestion&) = default;
};

/// Subjects co-occurring with `term` across the whole corpus, by document co-count
/// descending then case-folded keyword. `term` itself is excluded.
std::vector<TermSuggestion> coword_recommend(std::string_view term, const Index& index, std::size_t k);

}  // namespace facetscope
