#include <facetscope/graphs.hpp>

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace facetscope {

CoAuthorGraph coauthor_graph(const Index& index, const ResultSet& rs) {
    CoAuthorGraph graph;
    const auto top = facet_counts(index, rs, RecordField::persons, kCoAuthorNodeLimit);
    if (top.empty()) return graph;

    const auto& persons = index.field(RecordField::persons);
    std::unordered_set<TermId> in_graph;
    for (const auto& fc : top) {
        graph.nodes.push_back({fc.value, fc.count});
        in_graph.insert(*persons.find(facet_key(fc.value)));
    }

    // Term ids ascend with the case-folded key, so (lo, hi) is already canonical.
    std::map<std::pair<TermId, TermId>, std::size_t> pairs;
    std::vector<TermId> members;
    for (DocOrdinal d : rs.ordinals) {
        members.clear();
        for (TermId t : persons.doc_terms(d)) {
            if (in_graph.count(t)) members.push_back(t);
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) ++pairs[{members[i], members[j]}];
        }
    }
    graph.edges.reserve(pairs.size());
    for (const auto& [pair, count] : pairs) {
        graph.edges.push_back({persons.display(pair.first), persons.display(pair.second), count});
    }
    return graph;
}

std::vector<TermSuggestion> coword_recommend(std::string_view term, const Index& index, std::size_t k) {
    if (k == 0) throw std::invalid_argument("suggestion limit k must be at least 1");
    const auto& subjects = index.field(RecordField::subjects);
    const auto anchor = subjects.find(facet_key(term));
    if (!anchor) return {};

    std::unordered_map<TermId, std::size_t> counts;
    for (DocOrdinal d : subjects.postings(*anchor)) {
        for (TermId t : subjects.doc_terms(d)) {
            if (t != *anchor) ++counts[t];
        }
    }
    std::vector<std::pair<TermId, std::size_t>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    if (ranked.size() > k) ranked.resize(k);

    std::vector<TermSuggestion> out;
    out.reserve(ranked.size());
    for (const auto& [t, count] : ranked) out.push_back({subjects.display(t), count});
    return out;
}

}  // namespace facetscope
