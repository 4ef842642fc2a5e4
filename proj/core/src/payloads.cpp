#include <facetscope/payloads.hpp>

namespace facetscope {

nlohmann::json to_json(std::span<const FacetCount> facets) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : facets) out.push_back({{"value", f.value}, {"count", f.count}});
    return out;
}

nlohmann::json to_json(const TemporalHistogram& histogram) {
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : histogram.bins) bins.push_back({{"year", b.year}, {"count", b.count}});
    return {
        {"bins", std::move(bins)},
        {"chart_kind", std::string(to_string(histogram.chart_kind))},
        {"covered", histogram.covered},
        {"uncovered", histogram.uncovered},
    };
}

nlohmann::json to_json(const SpatialBuckets& spatial) {
    nlohmann::json buckets = nlohmann::json::array();
    for (const auto& b : spatial.buckets) {
        buckets.push_back({{"location", b.location}, {"latitude", b.latitude}, {"longitude", b.longitude}, {"count", b.count}});
    }
    nlohmann::json unresolved = nlohmann::json::array();
    for (const auto& u : spatial.unresolved) unresolved.push_back({{"location", u.value}, {"count", u.count}});
    nlohmann::json bbox = nullptr;
    if (spatial.bbox) {
        bbox = {
            {"min_latitude", spatial.bbox->min_latitude},
            {"max_latitude", spatial.bbox->max_latitude},
            {"min_longitude", spatial.bbox->min_longitude},
            {"max_longitude", spatial.bbox->max_longitude},
        };
    }
    return {{"buckets", std::move(buckets)}, {"unresolved", std::move(unresolved)}, {"bbox", std::move(bbox)}};
}

nlohmann::json to_json(const CoAuthorGraph& graph) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes) nodes.push_back({{"name", n.name}, {"count", n.count}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"count", e.count}});
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

nlohmann::json to_json(const TermGraph& graph) {
    nlohmann::json neighbors = nlohmann::json::array();
    for (const auto& n : graph.neighbors) neighbors.push_back({{"term", n.term}, {"relation", n.relation}});
    return {{"center", graph.center}, {"neighbors", std::move(neighbors)}, {"vocabulary", graph.vocabulary}};
}

nlohmann::json to_json(const FacetFilters& filters) {
    nlohmann::json out = nlohmann::json::object();
    if (filters.info_type) out["type"] = *filters.info_type;
    if (filters.database) out["database"] = *filters.database;
    if (filters.person) out["person"] = *filters.person;
    if (filters.subject) out["subject"] = *filters.subject;
    if (filters.from_year) out["from"] = *filters.from_year;
    if (filters.to_year) out["to"] = *filters.to_year;
    return out;
}

nlohmann::json to_json(const LinkingTable& table, const Index& index) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, entry] : table.entries) {
        entries.push_back({
            {"field_a", std::string(to_string(key.field_a))},
            {"value_a", link_display(index, key.field_a, key.value_a)},
            {"field_b", std::string(to_string(key.field_b))},
            {"value_b", link_display(index, key.field_b, key.value_b)},
            {"count", entry.count},
            {"intensity", entry.intensity},
        });
    }
    return {
        {"entries", std::move(entries)},
        {"top_persons", table.top_persons},
        {"top_keywords", table.top_keywords},
        {"subset_size", table.subset_size},
    };
}

}  // namespace facetscope
