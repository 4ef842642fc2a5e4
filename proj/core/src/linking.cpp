#include <facetscope/linking.hpp>
#include <facetscope/set_ops.hpp>

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

namespace facetscope {

namespace {

constexpr std::array<LinkField, 4> kLinkFields{LinkField::person, LinkField::keyword, LinkField::location,
                                               LinkField::time};

// (field, term id) packed so that integer order equals canonical key order: term ids
// ascend with the case-folded key, and years are fixed-width so their keys sort numerically.
using PackedValue = std::uint64_t;

PackedValue pack(LinkField field, TermId term) {
    return (static_cast<PackedValue>(field) << 32) | term;
}

LinkField packed_field(PackedValue v) { return static_cast<LinkField>(v >> 32); }
TermId packed_term(PackedValue v) { return static_cast<TermId>(v & 0xffffffffu); }

struct PairHash {
    std::size_t operator()(const std::pair<PackedValue, PackedValue>& p) const noexcept {
        return std::hash<PackedValue>{}(p.first * 0x9e3779b97f4a7c15ULL ^ p.second);
    }
};

std::unordered_set<TermId> anchor_terms(const FieldPostings& fp, const std::vector<std::string>& values) {
    std::unordered_set<TermId> out;
    for (const auto& v : values) {
        if (auto t = fp.find(facet_key(v))) out.insert(*t);
    }
    return out;
}

ResultSet docs_of_any(const FieldPostings& fp, const std::vector<std::string>& values) {
    std::vector<DocOrdinal> docs;
    for (const auto& v : values) {
        auto p = fp.postings(facet_key(v));
        docs.insert(docs.end(), p.begin(), p.end());
    }
    return ResultSet::from_unsorted(std::move(docs));
}

}  // namespace

std::string_view to_string(LinkField field) {
    switch (field) {
        case LinkField::person: return "person";
        case LinkField::keyword: return "keyword";
        case LinkField::location: return "location";
        case LinkField::time: return "time";
    }
    return "person";
}

std::optional<LinkField> parse_link_field(std::string_view name) {
    for (LinkField f : kLinkFields) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

RecordField record_field(LinkField field) {
    switch (field) {
        case LinkField::person: return RecordField::persons;
        case LinkField::keyword: return RecordField::subjects;
        case LinkField::location: return RecordField::locations;
        case LinkField::time: return RecordField::year;
    }
    return RecordField::persons;
}

LinkingKey LinkingKey::make(LinkField f1, std::string v1, LinkField f2, std::string v2) {
    if (f1 == f2) throw std::invalid_argument("linking key members must come from different fields");
    if (f2 < f1) {
        std::swap(f1, f2);
        std::swap(v1, v2);
    }
    return LinkingKey{f1, std::move(v1), f2, std::move(v2)};
}

LinkingSubset linking_subset(const QueryAst& user_query, const FacetFilters& filters, const Index& index) {
    LinkingSubset out;
    const ResultSet rs = evaluate(user_query, filters, index);
    for (auto& fc : facet_counts(index, rs, RecordField::persons, kLinkingAnchorLimit)) {
        out.anchors.persons.push_back(std::move(fc.value));
    }
    for (auto& fc : facet_counts(index, rs, RecordField::subjects, kLinkingAnchorLimit)) {
        out.anchors.keywords.push_back(std::move(fc.value));
    }
    if (out.anchors.persons.empty() || out.anchors.keywords.empty()) return out;

    out.subset = intersect(rs, docs_of_any(index.field(RecordField::persons), out.anchors.persons));
    out.subset = intersect(out.subset, docs_of_any(index.field(RecordField::subjects), out.anchors.keywords));
    return out;
}

std::map<LinkingKey, std::size_t> pair_counts(const Index& index, const ResultSet& subset,
                                              const LinkingAnchors& anchors) {
    const auto& persons = index.field(RecordField::persons);
    const auto& subjects = index.field(RecordField::subjects);
    const auto& locations = index.field(RecordField::locations);
    const auto& years = index.field(RecordField::year);
    const auto person_anchor = anchor_terms(persons, anchors.persons);
    const auto keyword_anchor = anchor_terms(subjects, anchors.keywords);

    std::unordered_map<std::pair<PackedValue, PackedValue>, std::size_t, PairHash> counts;
    std::array<std::vector<PackedValue>, 4> candidates;
    for (DocOrdinal d : subset.ordinals) {
        for (auto& c : candidates) c.clear();
        for (TermId t : persons.doc_terms(d)) {
            if (person_anchor.count(t)) candidates[0].push_back(pack(LinkField::person, t));
        }
        for (TermId t : subjects.doc_terms(d)) {
            if (keyword_anchor.count(t)) candidates[1].push_back(pack(LinkField::keyword, t));
        }
        for (TermId t : locations.doc_terms(d)) candidates[2].push_back(pack(LinkField::location, t));
        for (TermId t : years.doc_terms(d)) candidates[3].push_back(pack(LinkField::time, t));

        for (std::size_t fa = 0; fa < candidates.size(); ++fa) {
            for (std::size_t fb = fa + 1; fb < candidates.size(); ++fb) {
                for (PackedValue a : candidates[fa]) {
                    for (PackedValue b : candidates[fb]) ++counts[{a, b}];
                }
            }
        }
    }

    auto key_of = [&](PackedValue v) -> const std::string& {
        return index.field(record_field(packed_field(v))).key(packed_term(v));
    };
    std::map<LinkingKey, std::size_t> out;
    for (const auto& [pair, count] : counts) {
        out.emplace(LinkingKey{packed_field(pair.first), key_of(pair.first), packed_field(pair.second),
                               key_of(pair.second)},
                    count);
    }
    return out;
}

int intensity_for(std::size_t count, std::size_t max_count) {
    if (count == 0 || max_count == 0) return 0;
    // floor(5c/m + 1/2) in exact integer arithmetic.
    const auto rounded = static_cast<int>((10 * count + max_count) / (2 * max_count));
    return std::clamp(rounded, 1, kMaxIntensity);
}

std::map<LinkingKey, LinkEntry> normalize_intensity(const std::map<LinkingKey, std::size_t>& counts) {
    std::size_t max_count = 0;
    for (const auto& [key, count] : counts) max_count = std::max(max_count, count);
    std::map<LinkingKey, LinkEntry> out;
    for (const auto& [key, count] : counts) out.emplace_hint(out.end(), key, LinkEntry{count, intensity_for(count, max_count)});
    return out;
}

LinkingTable build_linking_table(const QueryAst& user_query, const FacetFilters& filters, const Index& index) {
    LinkingSubset subset = linking_subset(user_query, filters, index);
    LinkingTable table;
    table.entries = normalize_intensity(pair_counts(index, subset.subset, subset.anchors));
    table.top_persons = std::move(subset.anchors.persons);
    table.top_keywords = std::move(subset.anchors.keywords);
    table.subset_size = subset.subset.total();
    return table;
}

std::vector<LinkNeighbor> neighbors_of(const LinkingTable& table, LinkField field, std::string_view value) {
    const std::string key = facet_key(value);
    std::vector<LinkNeighbor> out;
    for (const auto& [k, entry] : table.entries) {
        if (k.field_a == field && k.value_a == key) {
            out.push_back({k.field_b, k.value_b, entry.intensity});
        } else if (k.field_b == field && k.value_b == key) {
            out.push_back({k.field_a, k.value_a, entry.intensity});
        }
    }
    std::sort(out.begin(), out.end(), [](const LinkNeighbor& a, const LinkNeighbor& b) {
        return a.field != b.field ? a.field < b.field : a.value < b.value;
    });
    return out;
}

std::string link_display(const Index& index, LinkField field, const std::string& key) {
    const auto& fp = index.field(record_field(field));
    if (auto t = fp.find(key)) return fp.display(*t);
    return key;
}

}  // namespace facetscope
