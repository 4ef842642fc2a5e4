#pragma once

#include <facetscope/analytics.hpp>
#include <facetscope/graphs.hpp>
#include <facetscope/index.hpp>
#include <facetscope/linking.hpp>
#include <facetscope/query.hpp>
#include <facetscope/vocabulary.hpp>

#include <nlohmann/json.hpp>

#include <span>

// JSON payload shapes shared by the HTTP API and the CLI.
namespace facetscope {

nlohmann::json to_json(std::span<const FacetCount> facets);
nlohmann::json to_json(const TemporalHistogram& histogram);
nlohmann::json to_json(const SpatialBuckets& spatial);
nlohmann::json to_json(const CoAuthorGraph& graph);
nlohmann::json to_json(const TermGraph& graph);
nlohmann::json to_json(const FacetFilters& filters);
/// Linking entries carry display values; needs the index to map case-folded keys back.
nlohmann::json to_json(const LinkingTable& table, const Index& index);

}  // namespace facetscope
