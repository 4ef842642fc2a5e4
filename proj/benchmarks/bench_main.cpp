#include <facetscope/analytics.hpp>
#include <facetscope/graphs.hpp>
#include <facetscope/linking.hpp>
#include <facetscope/query.hpp>

#include "synthetic.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

using namespace facetscope;
namespace fst = facetscope::testing;

namespace {

fst::CorpusShape shape_for(std::size_t docs) {
    fst::CorpusShape shape;
    shape.docs = docs;
    shape.persons = docs / 20 + 10;
    shape.keywords = 800;
    shape.locations = 60;
    return shape;
}

const std::vector<Record>& corpus(std::size_t docs) {
    static std::map<std::size_t, std::vector<Record>> cache;
    auto it = cache.find(docs);
    if (it == cache.end()) {
        std::mt19937_64 rng(docs);
        it = cache.emplace(docs, fst::make_corpus(shape_for(docs), rng)).first;
    }
    return it->second;
}

const Index& index_of(std::size_t docs) {
    static std::map<std::size_t, std::unique_ptr<Index>> cache;
    auto& slot = cache[docs];
    if (!slot) slot = std::make_unique<Index>(Index::build(corpus(docs)));
    return *slot;
}

void BM_BuildIndex(benchmark::State& state) {
    const auto docs = static_cast<std::size_t>(state.range(0));
    const auto& records = corpus(docs);
    for (auto _ : state) benchmark::DoNotOptimize(Index::build(records));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(docs));
}
BENCHMARK(BM_BuildIndex)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
    const auto& index = index_of(static_cast<std::size_t>(state.range(0)));
    const auto ast = parse_query("(information OR media) AND NOT year:[1960 TO 1970]");
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(ast, {}, index));
}
BENCHMARK(BM_Evaluate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_FacetCounts(benchmark::State& state) {
    const auto& index = index_of(static_cast<std::size_t>(state.range(0)));
    const auto rs = index.all_docs();
    for (auto _ : state) benchmark::DoNotOptimize(facet_counts(index, rs, RecordField::persons, 50));
}
BENCHMARK(BM_FacetCounts)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_Temporal(benchmark::State& state) {
    const auto& index = index_of(static_cast<std::size_t>(state.range(0)));
    const auto rs = index.all_docs();
    for (auto _ : state) benchmark::DoNotOptimize(temporal_distribution(index, rs, 2010));
}
BENCHMARK(BM_Temporal)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_CoAuthorGraph(benchmark::State& state) {
    const auto& index = index_of(static_cast<std::size_t>(state.range(0)));
    const auto rs = index.all_docs();
    for (auto _ : state) benchmark::DoNotOptimize(coauthor_graph(index, rs));
}
BENCHMARK(BM_CoAuthorGraph)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_LinkingTable(benchmark::State& state) {
    const auto& index = index_of(static_cast<std::size_t>(state.range(0)));
    const auto ast = QueryNode::match_all();
    for (auto _ : state) benchmark::DoNotOptimize(build_linking_table(ast, {}, index));
}
BENCHMARK(BM_LinkingTable)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
