#include <facetscope/linking.hpp>

#include "oracles.hpp"
#include "synthetic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace facetscope;
namespace fst = facetscope::testing;

namespace {

Record doc(std::string id, std::vector<std::string> persons, std::vector<std::string> subjects,
           std::vector<std::string> locations, std::optional<int> year) {
    Record r;
    r.id = std::move(id);
    r.persons = std::move(persons);
    r.subjects = std::move(subjects);
    r.locations = std::move(locations);
    r.year = year;
    return r;
}

LinkingKey key(LinkField a, std::string va, LinkField b, std::string vb) {
    return LinkingKey::make(a, std::move(va), b, std::move(vb));
}

oracle::LinkKey to_oracle(const LinkingKey& k) {
    return {static_cast<int>(k.field_a), k.value_a, static_cast<int>(k.field_b), k.value_b};
}

void expect_matches_oracle(const std::vector<Record>& records, const Index& index, const QueryAst& q,
                           const FacetFilters& f) {
    const auto table = build_linking_table(q, f, index);
    const auto want = oracle::linking(records, q, f);
    EXPECT_EQ(table.subset_size, want.subset.size());
    ASSERT_EQ(table.top_persons.size(), want.top_persons.size());
    for (std::size_t i = 0; i < want.top_persons.size(); ++i) {
        EXPECT_EQ(facet_key(table.top_persons[i]), want.top_persons[i]);
    }
    ASSERT_EQ(table.top_keywords.size(), want.top_keywords.size());
    for (std::size_t i = 0; i < want.top_keywords.size(); ++i) {
        EXPECT_EQ(facet_key(table.top_keywords[i]), want.top_keywords[i]);
    }
    ASSERT_EQ(table.entries.size(), want.entries.size()) << print_query(q);
    for (const auto& [k, entry] : table.entries) {
        const auto it = want.entries.find(to_oracle(k));
        ASSERT_NE(it, want.entries.end()) << k.value_a << " / " << k.value_b;
        EXPECT_EQ(entry.count, it->second.first);
        EXPECT_EQ(entry.intensity, it->second.second);
    }
}

}  // namespace

TEST(LinkingKeyTest, CanonicalOrder) {
    EXPECT_EQ(key(LinkField::time, "2001", LinkField::person, "a"), key(LinkField::person, "a", LinkField::time, "2001"));
    const auto k = key(LinkField::location, "spain", LinkField::keyword, "internet");
    EXPECT_EQ(k.field_a, LinkField::keyword);
    EXPECT_EQ(k.value_a, "internet");
    EXPECT_THROW(key(LinkField::person, "a", LinkField::person, "b"), std::invalid_argument);
}

TEST(LinkingSubsetTest, EmptyQueryResultGivesEmptyTable) {
    const auto index = Index::build({doc("1", {"A"}, {"k"}, {"L"}, 2001)});
    const auto table = build_linking_table(parse_query("keyword:absent"), {}, index);
    EXPECT_EQ(table.subset_size, 0u);
    EXPECT_TRUE(table.entries.empty());
    EXPECT_TRUE(table.top_persons.empty());
}

TEST(LinkingSubsetTest, DocsWithoutAnchorsAreExcluded) {
    const auto index = Index::build({doc("1", {"A"}, {"k"}, {}, 2001), doc("2", {}, {"k"}, {}, 2001),
                                     doc("3", {"A"}, {}, {}, 2001)});
    const auto s = linking_subset(parse_query(""), {}, index);
    EXPECT_EQ(s.subset.ordinals, std::vector<DocOrdinal>{0});
    EXPECT_EQ(s.anchors.persons, std::vector<std::string>{"A"});
    EXPECT_EQ(s.anchors.keywords, std::vector<std::string>{"k"});
}

TEST(LinkingSubsetTest, SaturatedAnchorsStillIntersect) {
    // Twelve persons all tied; only the ten smallest keys anchor.
    std::vector<Record> records;
    for (int i = 0; i < 12; ++i) {
        records.push_back(doc("d" + std::to_string(i), {"p" + std::to_string(10 + i)}, {"k"}, {}, 2000));
    }
    const auto index = Index::build(records);
    const auto s = linking_subset(parse_query(""), {}, index);
    EXPECT_EQ(s.anchors.persons.size(), kLinkingAnchorLimit);
    EXPECT_EQ(s.subset.total(), 10u);
    EXPECT_EQ(s.anchors.persons.back(), "p19");
}

TEST(PairCounts, SingleDocYieldsSixKeys) {
    const auto index = Index::build({doc("1", {"A"}, {"k"}, {"L"}, 2001)});
    const auto s = linking_subset(parse_query(""), {}, index);
    const auto counts = pair_counts(index, s.subset, s.anchors);
    EXPECT_EQ(counts, (std::map<LinkingKey, std::size_t>{
                          {key(LinkField::person, "a", LinkField::keyword, "k"), 1},
                          {key(LinkField::person, "a", LinkField::location, "l"), 1},
                          {key(LinkField::person, "a", LinkField::time, "2001"), 1},
                          {key(LinkField::keyword, "k", LinkField::location, "l"), 1},
                          {key(LinkField::keyword, "k", LinkField::time, "2001"), 1},
                          {key(LinkField::location, "l", LinkField::time, "2001"), 1},
                      }));
}

TEST(PairCounts, SharedPairAcrossTwoDocs) {
    const auto index = Index::build({doc("1", {"A"}, {"k"}, {}, std::nullopt), doc("2", {"a"}, {"K"}, {}, std::nullopt)});
    const auto s = linking_subset(parse_query(""), {}, index);
    const auto counts = pair_counts(index, s.subset, s.anchors);
    ASSERT_EQ(counts.size(), 1u);
    EXPECT_EQ(counts.at(key(LinkField::person, "a", LinkField::keyword, "k")), 2u);
}

TEST(PairCounts, HundredTwentyThreeDocFixture) {
    std::vector<Record> records;
    for (int i = 0; i < 123; ++i) {
        records.push_back(doc("d" + std::to_string(i), {"Rainer Kuhlen"}, {"information society"}, {}, std::nullopt));
    }
    const auto index = Index::build(records);
    const auto table = build_linking_table(parse_query(""), {}, index);
    const auto entry = table.entries.at(key(LinkField::person, "rainer kuhlen", LinkField::keyword, "information society"));
    EXPECT_EQ(entry, (LinkEntry{123, 5}));
    const auto n = neighbors_of(table, LinkField::person, "Rainer Kuhlen");
    EXPECT_EQ(n, (std::vector<LinkNeighbor>{{LinkField::keyword, "information society", 5}}));
}

TEST(Intensity, WorkedExamples) {
    auto normalized = [](std::vector<std::size_t> counts) {
        std::map<LinkingKey, std::size_t> m;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            m[key(LinkField::person, "p" + std::to_string(i), LinkField::keyword, "k")] = counts[i];
        }
        std::vector<int> out;
        for (const auto& [k, e] : normalize_intensity(m)) out.push_back(e.intensity);
        return out;
    };
    EXPECT_EQ(normalized({7}), std::vector<int>{5});
    EXPECT_EQ(normalized({10, 1}), (std::vector<int>{5, 1}));
    EXPECT_EQ(normalized({10, 6, 3}), (std::vector<int>{5, 3, 2}));
    EXPECT_TRUE(normalized({}).empty());
    EXPECT_EQ(intensity_for(1, 10), 1);
    EXPECT_EQ(intensity_for(3, 10), 2);
    EXPECT_EQ(intensity_for(9, 10), 5);
}

TEST(Intensity, PropertiesOnRandomCountMaps) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
        std::vector<std::size_t> counts(n);
        for (auto& c : counts) c = std::uniform_int_distribution<std::size_t>(1, 5000)(rng);
        const auto max = *std::max_element(counts.begin(), counts.end());
        for (std::size_t i = 0; i < n; ++i) {
            const int v = intensity_for(counts[i], max);
            EXPECT_GE(v, 1);
            EXPECT_LE(v, 5);
            EXPECT_EQ(v, oracle::intensity(counts[i], max));
            if (counts[i] == max) {
                EXPECT_EQ(v, 5);
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (counts[i] <= counts[j]) {
                    EXPECT_LE(v, intensity_for(counts[j], max));
                }
            }
            const std::size_t scale = std::uniform_int_distribution<std::size_t>(2, 9)(rng);
            EXPECT_EQ(intensity_for(counts[i] * scale, max * scale) == 5, v == 5);
        }
    }
}

TEST(Neighbors, AbsentValueAndSymmetry) {
    std::mt19937_64 rng(13);
    fst::CorpusShape shape;
    shape.docs = 300;
    const auto records = fst::make_corpus(shape, rng);
    const auto index = Index::build(records);
    const auto table = build_linking_table(parse_query(""), {}, index);
    EXPECT_TRUE(neighbors_of(table, LinkField::person, "nobody at all").empty());
    for (const auto& [k, entry] : table.entries) {
        const auto from_a = neighbors_of(table, k.field_a, k.value_a);
        const auto from_b = neighbors_of(table, k.field_b, k.value_b);
        EXPECT_NE(std::find(from_a.begin(), from_a.end(), LinkNeighbor{k.field_b, k.value_b, entry.intensity}),
                  from_a.end());
        EXPECT_NE(std::find(from_b.begin(), from_b.end(), LinkNeighbor{k.field_a, k.value_a, entry.intensity}),
                  from_b.end());
    }
}

TEST(LinkingOracle, RandomCorporaAndQueries) {
    std::mt19937_64 rng(4242);
    for (int corpus = 0; corpus < 8; ++corpus) {
        fst::CorpusShape shape;
        shape.docs = std::uniform_int_distribution<std::size_t>(100, 400)(rng);
        shape.persons = std::uniform_int_distribution<std::size_t>(3, 30)(rng);
        shape.keywords = std::uniform_int_distribution<std::size_t>(3, 30)(rng);
        shape.locations = std::uniform_int_distribution<std::size_t>(3, 30)(rng);
        shape.shouted = 0.1;
        const auto records = fst::make_corpus(shape, rng);
        const auto index = Index::build(records);
        const auto vocab = fst::make_vocab(shape);
        expect_matches_oracle(records, index, QueryNode::match_all(), {});
        for (int q = 0; q < 10; ++q) {
            expect_matches_oracle(records, index, fst::random_query(vocab, rng, 2), fst::random_filters(vocab, rng));
        }
    }
}

TEST(LinkDisplay, MapsKeysBackToDisplayForms) {
    const auto index = Index::build({doc("1", {"Rainer Kuhlen"}, {"Internet"}, {"Germany"}, 2001)});
    EXPECT_EQ(link_display(index, LinkField::person, "rainer kuhlen"), "Rainer Kuhlen");
    EXPECT_EQ(link_display(index, LinkField::keyword, "internet"), "Internet");
    EXPECT_EQ(link_display(index, LinkField::time, "2001"), "2001");
}
