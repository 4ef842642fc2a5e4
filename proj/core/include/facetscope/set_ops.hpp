#pragma once

#include <facetscope/index.hpp>

#include <algorithm>
#include <iterator>
#include <span>

namespace facetscope {

inline ResultSet intersect(const ResultSet& a, const ResultSet& b) {
    ResultSet out;
    out.ordinals.reserve(std::min(a.total(), b.total()));
    std::set_intersection(a.ordinals.begin(), a.ordinals.end(), b.ordinals.begin(), b.ordinals.end(),
                          std::back_inserter(out.ordinals));
    return out;
}

inline ResultSet unite(const ResultSet& a, const ResultSet& b) {
    ResultSet out;
    out.ordinals.reserve(a.total() + b.total());
    std::set_union(a.ordinals.begin(), a.ordinals.end(), b.ordinals.begin(), b.ordinals.end(),
                   std::back_inserter(out.ordinals));
    return out;
}

inline ResultSet subtract(const ResultSet& a, const ResultSet& b) {
    ResultSet out;
    out.ordinals.reserve(a.total());
    std::set_difference(a.ordinals.begin(), a.ordinals.end(), b.ordinals.begin(), b.ordinals.end(),
                        std::back_inserter(out.ordinals));
    return out;
}

inline ResultSet to_result_set(std::span<const DocOrdinal> postings) {
    return ResultSet{{postings.begin(), postings.end()}};
}

}  // namespace facetscope
