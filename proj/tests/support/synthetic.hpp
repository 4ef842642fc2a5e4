#pragma once

#include <facetscope/query.hpp>
#include <facetscope/record.hpp>

#include <random>
#include <string>
#include <vector>

namespace facetscope::testing {

struct CorpusShape {
    std::size_t docs = 200;
    std::size_t persons = 20;
    std::size_t keywords = 20;
    std::size_t locations = 10;
    int first_year = 1960;
    int last_year = 2010;
    double missing_year = 0.1;
    /// Chance that a person or keyword occurrence is spelled in upper case.
    double shouted = 0.0;
};

/// Value pools the generator draws from, also used by the random query generator.
struct Vocab {
    std::vector<std::string> persons;
    std::vector<std::string> keywords;
    std::vector<std::string> locations;
    std::vector<std::string> title_words;
    std::vector<std::string> databases;
};

Vocab make_vocab(const CorpusShape& shape);

/// Random ASCII-only corpus. Multi-valued fields hold 0..3 distinct values each.
std::vector<Record> make_corpus(const CorpusShape& shape, std::mt19937_64& rng);

/// Random query tree in the exact shape parse_query produces. Negations only appear
/// as children of an And that also has a positive child.
QueryAst random_query(const Vocab& vocab, std::mt19937_64& rng, int depth = 3);

FacetFilters random_filters(const Vocab& vocab, std::mt19937_64& rng);

}  // namespace facetscope::testing
