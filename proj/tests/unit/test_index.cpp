#include <facetscope/index.hpp>

#include "oracles.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace facetscope;
namespace fst = facetscope::testing;
using fst::slurp;
using fst::TempDir;

namespace {

Record rec(std::string id, std::vector<std::string> subjects, std::optional<int> year = std::nullopt) {
    Record r;
    r.id = std::move(id);
    r.subjects = std::move(subjects);
    r.year = year;
    return r;
}

std::vector<DocOrdinal> naive_postings(const std::vector<Record>& records, RecordField field, const std::string& key) {
    std::vector<DocOrdinal> out;
    for (DocOrdinal d = 0; d < records.size(); ++d) {
        if (oracle::keys_of(records[d], field).count(key)) out.push_back(d);
    }
    return out;
}

}  // namespace

TEST(IndexBuild, EmptyCorpus) {
    const auto index = Index::build({});
    EXPECT_EQ(index.doc_count(), 0u);
    EXPECT_TRUE(index.all_docs().empty());
    EXPECT_TRUE(facet_counts(index, index.all_docs(), RecordField::subjects, 10).empty());
}

TEST(IndexBuild, SharedSubjectPostings) {
    const auto index = Index::build({rec("a", {"internet"}), rec("b", {"media"}), rec("c", {"Internet", "x"})});
    const auto& subjects = index.field(RecordField::subjects);
    EXPECT_EQ(std::vector<DocOrdinal>(subjects.postings("internet").begin(), subjects.postings("internet").end()),
              (std::vector<DocOrdinal>{0, 2}));
    EXPECT_EQ(index.find_id("c"), 2u);
    EXPECT_EQ(index.find_id("zzz"), std::nullopt);
}

TEST(IndexBuild, DuplicateIdNamesTheId) {
    try {
        Index::build({rec("dup-7", {}), rec("x", {}), rec("dup-7", {})});
        FAIL() << "expected IndexBuildError";
    } catch (const IndexBuildError& e) {
        EXPECT_NE(std::string(e.what()).find("dup-7"), std::string::npos);
    }
}

TEST(IndexBuild, DisplayFormIsMostFrequentSpelling) {
    const auto index = Index::build({rec("a", {"Internet"}), rec("b", {"internet"}), rec("c", {"Internet"}),
                                     rec("d", {"MEDIA"}), rec("e", {"Media"})});
    const auto counts = facet_counts(index, index.all_docs(), RecordField::subjects, 10);
    ASSERT_EQ(counts.size(), 2u);
    EXPECT_EQ(counts[0], (FacetCount{"Internet", 3}));
    // Tie between MEDIA and Media resolves lexicographically.
    EXPECT_EQ(counts[1], (FacetCount{"MEDIA", 2}));
}

TEST(IndexBuild, RandomCorpusInvariants) {
    std::mt19937_64 rng(2024);
    fst::CorpusShape shape;
    shape.docs = 1000;
    shape.shouted = 0.1;
    const auto records = fst::make_corpus(shape, rng);
    const auto index = Index::build(records);
    ASSERT_EQ(index.doc_count(), records.size());

    for (RecordField field : {RecordField::persons, RecordField::subjects, RecordField::locations,
                              RecordField::database, RecordField::info_type, RecordField::year}) {
        const auto& fp = index.field(field);
        std::set<std::string> keys;
        for (const auto& r : records) {
            for (const auto& k : oracle::keys_of(r, field)) keys.insert(k);
        }
        ASSERT_EQ(fp.term_count(), keys.size()) << to_string(field);
        for (TermId t = 0; t < fp.term_count(); ++t) {
            const auto postings = fp.postings(t);
            EXPECT_TRUE(std::is_sorted(postings.begin(), postings.end()));
            EXPECT_EQ(std::adjacent_find(postings.begin(), postings.end()), postings.end());
            EXPECT_EQ(std::vector<DocOrdinal>(postings.begin(), postings.end()),
                      naive_postings(records, field, fp.key(t)));
            if (t > 0) {
                EXPECT_LT(fp.key(t - 1), fp.key(t));
            }
        }
    }
    // Every ordinal's record is retrievable and intact.
    for (DocOrdinal d = 0; d < records.size(); ++d) EXPECT_EQ(index.record(d), records[d]);
}

TEST(IndexBuild, UnsupportedField) {
    const auto index = Index::build({rec("a", {})});
    EXPECT_THROW(index.field(RecordField::id), UnsupportedFieldError);
    EXPECT_THROW(facet_counts(index, index.all_docs(), RecordField::title, 5), UnsupportedFieldError);
    EXPECT_THROW(facet_counts(index, index.all_docs(), RecordField::language, 5), UnsupportedFieldError);
}

TEST(PostingsLookup, Examples) {
    const auto index = Index::build({rec("a", {"internet"}), rec("b", {"media"})});
    EXPECT_TRUE(postings_lookup(index, RecordField::subjects, "no such value").empty());
    EXPECT_EQ(postings_lookup(index, RecordField::subjects, "MEDIA").ordinals, std::vector<DocOrdinal>{1});
}

TEST(PostingsLookup, AgreesWithLinearScanAndFacetCounts) {
    std::mt19937_64 rng(99);
    fst::CorpusShape shape;
    shape.docs = 600;
    const auto records = fst::make_corpus(shape, rng);
    const auto index = Index::build(records);
    const auto vocab = fst::make_vocab(shape);
    const auto all = index.all_docs();
    const auto totals = facet_counts(index, all, RecordField::persons, 1000);
    for (const auto& person : vocab.persons) {
        const auto rs = postings_lookup(index, RecordField::persons, person);
        EXPECT_EQ(rs.ordinals, naive_postings(records, RecordField::persons, oracle::lower(person)));
        const auto it = std::find_if(totals.begin(), totals.end(),
                                     [&](const FacetCount& c) { return facet_key(c.value) == facet_key(person); });
        EXPECT_EQ(rs.total(), it == totals.end() ? 0u : it->count);
    }
}

TEST(FacetCounts, WorkedExample) {
    const auto index = Index::build({rec("1", {"a"}), rec("2", {"a", "b"}), rec("3", {"a", "b"})});
    EXPECT_EQ(facet_counts(index, index.all_docs(), RecordField::subjects, 2),
              (std::vector<FacetCount>{{"a", 3}, {"b", 2}}));
    EXPECT_TRUE(facet_counts(index, ResultSet{}, RecordField::subjects, 2).empty());
    EXPECT_THROW(facet_counts(index, index.all_docs(), RecordField::subjects, 0), std::invalid_argument);
}

TEST(FacetCounts, MatchesOracleOnRandomSubsets) {
    std::mt19937_64 rng(7);
    fst::CorpusShape shape;
    shape.docs = 500;
    shape.shouted = 0.15;
    const auto records = fst::make_corpus(shape, rng);
    const auto index = Index::build(records);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<DocOrdinal> docs;
        for (DocOrdinal d = 0; d < records.size(); ++d) {
            if (std::bernoulli_distribution(0.4)(rng)) docs.push_back(d);
        }
        const ResultSet rs{docs};
        for (RecordField field : {RecordField::persons, RecordField::subjects, RecordField::locations,
                                  RecordField::year, RecordField::info_type}) {
            const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
            const auto got = facet_counts(index, rs, field, k);
            const auto want = oracle::facet_tally(records, docs, field, k);
            ASSERT_EQ(got.size(), want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                EXPECT_EQ(got[i].value, want[i].display);
                EXPECT_EQ(got[i].count, want[i].count);
            }
        }
    }
}

TEST(FacetCounts, InfoTypeCountsSumToTypedDocs) {
    std::mt19937_64 rng(11);
    fst::CorpusShape shape;
    shape.docs = 400;
    const auto records = fst::make_corpus(shape, rng);
    const auto index = Index::build(records);
    std::size_t sum = 0;
    for (const auto& c : facet_counts(index, index.all_docs(), RecordField::info_type, 100)) sum += c.count;
    const auto typed = std::count_if(records.begin(), records.end(), [](const Record& r) { return r.info_type; });
    EXPECT_EQ(sum, static_cast<std::size_t>(typed));
}

TEST(FacetCounts, InsensitiveToOrdinalOrder) {
    std::mt19937_64 rng(3);
    fst::CorpusShape shape;
    shape.docs = 300;
    const auto index = Index::build(fst::make_corpus(shape, rng));
    std::vector<DocOrdinal> docs = index.all_docs().ordinals;
    docs.resize(200);
    const auto expected = facet_counts(index, ResultSet{docs}, RecordField::persons, 10);
    for (int i = 0; i < 5; ++i) {
        auto shuffled = docs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(facet_counts(index, ResultSet::from_unsorted(shuffled), RecordField::persons, 10), expected);
    }
}

TEST(IndexPersistence, RoundTripAndDeterminism) {
    std::mt19937_64 rng(5);
    fst::CorpusShape shape;
    shape.docs = 250;
    const auto records = fst::make_corpus(shape, rng);
    TempDir first;
    TempDir second;
    save_index(Index::build(records), first.path());
    save_index(Index::build(records), second.path());
    EXPECT_EQ(slurp(first.path() / "manifest.json"), slurp(second.path() / "manifest.json"));
    EXPECT_EQ(slurp(first.path() / "records.jsonl"), slurp(second.path() / "records.jsonl"));

    const auto loaded = load_index(first.path());
    ASSERT_EQ(loaded.doc_count(), records.size());
    for (DocOrdinal d = 0; d < records.size(); ++d) EXPECT_EQ(loaded.record(d), records[d]);
    EXPECT_EQ(facet_counts(loaded, loaded.all_docs(), RecordField::subjects, 20),
              facet_counts(Index::build(records), loaded.all_docs(), RecordField::subjects, 20));
}

TEST(IndexPersistence, RejectsVersionMismatch) {
    TempDir dir;
    save_index(Index::build({rec("a", {"x"})}), dir.path());
    auto manifest = nlohmann::json::parse(slurp(dir.path() / "manifest.json"));
    manifest["format_version"] = kIndexFormatVersion + 1;
    std::ofstream(dir.path() / "manifest.json") << manifest.dump();
    EXPECT_THROW(load_index(dir.path()), IndexFormatError);
}

TEST(IndexPersistence, RejectsTamperedRecords) {
    TempDir dir;
    save_index(Index::build({rec("a", {"x"}), rec("b", {"y"})}), dir.path());
    std::ofstream(dir.path() / "records.jsonl", std::ios::app) << R"({"id":"c"})" << '\n';
    EXPECT_THROW(load_index(dir.path()), IndexFormatError);
}

TEST(IndexPersistence, MissingDirectory) {
    EXPECT_THROW(load_index("/nonexistent/facetscope/index"), std::runtime_error);
}
