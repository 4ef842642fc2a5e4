#include <facetscope/graphs.hpp>
#include <facetscope/vocabulary.hpp>

#include <array>

namespace facetscope {

namespace {

constexpr std::array<std::pair<Relation, std::string_view>, 5> kRelations{{
    {Relation::broader, "broader"},
    {Relation::narrower, "narrower"},
    {Relation::related, "related"},
    {Relation::translation, "translation"},
    {Relation::synonym, "synonym"},
}};

}  // namespace

std::string_view to_string(Relation relation) {
    for (const auto& [r, name] : kRelations) {
        if (r == relation) return name;
    }
    return "related";
}

std::optional<Relation> parse_relation(std::string_view name) {
    for (const auto& [r, n] : kRelations) {
        if (n == name) return r;
    }
    return std::nullopt;
}

Relation inverse(Relation relation) {
    switch (relation) {
        case Relation::broader: return Relation::narrower;
        case Relation::narrower: return Relation::broader;
        default: return relation;
    }
}

VocabularyError::VocabularyError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

std::string Vocabulary::intern(std::string_view term, std::size_t line) {
    std::string display = collapse_whitespace(term);
    if (display.empty()) throw VocabularyError(line, "empty term");
    std::string key = case_fold(display);
    display_.try_emplace(key, std::move(display));
    return key;
}

void Vocabulary::add(std::string_view from, Relation relation, std::string_view to, std::size_t line) {
    std::string a = intern(from, line);
    std::string b = intern(to, line);
    if (a == b) throw VocabularyError(line, "self-relation on '" + display_[a] + "'");
    edges_.insert({a, relation, b});
    edges_.insert({b, inverse(relation), a});
}

void Vocabulary::add_line(std::string_view line, std::size_t line_number) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (collapse_whitespace(line).empty() || line.front() == '#') return;

    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        auto tab = line.find('\t', start);
        parts.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    if (parts.size() != 3) throw VocabularyError(line_number, "expected from<TAB>relation<TAB>to");
    const std::string name = collapse_whitespace(parts[1]);
    auto relation = parse_relation(name);
    if (!relation) throw VocabularyError(line_number, "unknown relation '" + name + "'");
    add(parts[0], *relation, parts[2], line_number);
}

Vocabulary Vocabulary::parse(std::string id, std::string_view content) {
    Vocabulary v(std::move(id));
    std::size_t line_number = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
        auto nl = content.find('\n', start);
        v.add_line(content.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start),
                   ++line_number);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return v;
}

Vocabulary Vocabulary::load(std::string id, const std::filesystem::path& path) {
    Vocabulary v(std::move(id));
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) v.add_line(lines[i], i + 1);
    return v;
}

bool Vocabulary::contains(std::string_view term) const {
    return display_.count(facet_key(term)) > 0;
}

std::optional<std::string> Vocabulary::display(std::string_view term) const {
    auto it = display_.find(facet_key(term));
    if (it == display_.end()) return std::nullopt;
    return it->second;
}

TermGraph related_terms(std::string_view term, const Vocabulary& vocabulary) {
    TermGraph graph;
    const std::string key = facet_key(term);
    graph.center = vocabulary.display(key).value_or(collapse_whitespace(term));
    graph.vocabulary = vocabulary.id();

    // Edges are ordered (from, relation, to); the range for `key` is contiguous.
    std::vector<const Vocabulary::Edge*> hits;
    const auto& edges = vocabulary.edges();
    for (auto it = edges.lower_bound({key, Relation::broader, std::string{}}); it != edges.end() && it->from == key;
         ++it) {
        hits.push_back(&*it);
    }
    for (const auto* e : hits) {
        graph.neighbors.push_back({*vocabulary.display(e->to), std::string(to_string(e->relation))});
    }
    return graph;
}

TermGraph recommended_terms(std::string_view term, const Index& index, std::size_t k) {
    TermGraph graph;
    graph.vocabulary = std::string(kRecommenderId);
    const auto& subjects = index.field(RecordField::subjects);
    const std::string key = facet_key(term);
    if (auto t = subjects.find(key)) {
        graph.center = subjects.display(*t);
    } else {
        graph.center = collapse_whitespace(term);
    }
    for (auto& s : coword_recommend(term, index, k)) {
        graph.neighbors.push_back({std::move(s.keyword), std::string(kSuggestedLabel)});
    }
    return graph;
}

void VocabularyRegistry::add(Vocabulary vocabulary) {
    const std::string id = vocabulary.id();
    vocabularies_.insert_or_assign(id, std::move(vocabulary));
}

const Vocabulary& VocabularyRegistry::get(std::string_view id) const {
    auto it = vocabularies_.find(id);
    if (it == vocabularies_.end()) throw VocabularyNotFound("unknown vocabulary '" + std::string(id) + "'");
    return it->second;
}

bool VocabularyRegistry::contains(std::string_view id) const {
    return vocabularies_.find(id) != vocabularies_.end();
}

std::vector<std::string> VocabularyRegistry::ids() const {
    std::vector<std::string> out;
    for (const auto& [id, v] : vocabularies_) out.push_back(id);
    return out;
}

TermGraph VocabularyRegistry::related_terms(std::string_view term, std::string_view vocab_id, bool use_recommender,
                                            const Index& index) const {
    if (use_recommender) return recommended_terms(term, index);
    return facetscope::related_terms(term, get(vocab_id));
}

}  // namespace facetscope
