#pragma once

#include <facetscope/index.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace facetscope {

enum class Relation { broader, narrower, related, translation, synonym };

std::string_view to_string(Relation relation);
std::optional<Relation> parse_relation(std::string_view name);
Relation inverse(Relation relation);

/// Label used for co-word recommender neighbors.
inline constexpr std::string_view kSuggestedLabel = "suggested";
/// Vocabulary id that selects the built-in co-word recommender.
inline constexpr std::string_view kRecommenderId = "recommender";
inline constexpr std::size_t kRecommenderLimit = 10;

class VocabularyError : public std::runtime_error {
public:
    VocabularyError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class VocabularyNotFound : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A controlled vocabulary closed under inverse (broader/narrower) and symmetric
/// (related, translation, synonym) relations. Immutable after load.
class Vocabulary {
public:
    struct Edge {
        std::string from;  ///< case-folded
        Relation relation;
        std::string to;  ///< case-folded
        auto operator<=>(const Edge&) const = default;
    };

    Vocabulary() = default;
    explicit Vocabulary(std::string id) : id_(std::move(id)) {}

    /// Parses "from<TAB>relation<TAB>to" lines; '#' lines and blank lines are skipped.
    static Vocabulary parse(std::string id, std::string_view content);
    static Vocabulary load(std::string id, const std::filesystem::path& path);

    /// Adds the relation plus its inverse or mirror. Throws VocabularyError on self-relations.
    void add(std::string_view from, Relation relation, std::string_view to, std::size_t line = 0);

    const std::string& id() const noexcept { return id_; }
    std::size_t term_count() const noexcept { return display_.size(); }
    const std::set<Edge>& edges() const noexcept { return edges_; }
    bool contains(std::string_view term) const;
    /// Display form of a term, or nullopt when unknown.
    std::optional<std::string> display(std::string_view term) const;

private:
    void add_line(std::string_view line, std::size_t line_number);
    std::string intern(std::string_view term, std::size_t line);

    std::string id_;
    std::map<std::string, std::string> display_;  // key -> first-seen display form
    std::set<Edge> edges_;
};

struct TermNeighbor {
    std::string term;      ///< display form
    std::string relation;  ///< relation name or "suggested"
    friend bool operator==(const TermNeighbor&, const TermNeighbor&) = default;
};

struct TermGraph {
    std::string center;
    std::vector<TermNeighbor> neighbors;  ///< relation order, then case-folded term
    std::string vocabulary;
    friend bool operator==(const TermGraph&, const TermGraph&) = default;
};

/// Direct (one-hop) relations of the case-folded term.
TermGraph related_terms(std::string_view term, const Vocabulary& vocabulary);

/// Co-word suggestions for the term, labeled "suggested".
TermGraph recommended_terms(std::string_view term, const Index& index, std::size_t k = kRecommenderLimit);

/// Loaded vocabularies by id.
class VocabularyRegistry {
public:
    void add(Vocabulary vocabulary);
    const Vocabulary& get(std::string_view id) const;  ///< throws VocabularyNotFound
    bool contains(std::string_view id) const;
    std::vector<std::string> ids() const;

    /// With `use_recommender` the co-word recommender over `index` answers; otherwise the
    /// vocabulary `vocab_id`, which must be loaded.
    TermGraph related_terms(std::string_view term, std::string_view vocab_id, bool use_recommender,
                            const Index& index) const;

private:
    std::map<std::string, Vocabulary, std::less<>> vocabularies_;
};

}  // namespace facetscope
