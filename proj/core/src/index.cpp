#include <facetscope/index.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace facetscope {

namespace {

std::size_t slot_of(RecordField field) {
    for (std::size_t i = 0; i < kIndexedFields.size(); ++i) {
        if (kIndexedFields[i] == field) return i;
    }
    throw UnsupportedFieldError("field '" + std::string(to_string(field)) + "' is not indexed");
}

struct TermBuild {
    std::vector<DocOrdinal> docs;
    std::map<std::string, std::size_t> spellings;
};

// Raw (display-cased) values a record contributes to a field.
std::vector<std::string> field_values(const Record& r, RecordField field) {
    switch (field) {
        case RecordField::title: return {r.title};
        case RecordField::source: return {r.source};
        case RecordField::persons: return r.persons;
        case RecordField::subjects: return r.subjects;
        case RecordField::locations: return r.locations;
        case RecordField::institutions: return r.institutions;
        case RecordField::database:
            return r.database.empty() ? std::vector<std::string>{} : std::vector<std::string>{r.database};
        case RecordField::info_type:
            return r.info_type ? std::vector<std::string>{std::string(to_string(*r.info_type))}
                               : std::vector<std::string>{};
        case RecordField::year:
            return r.year ? std::vector<std::string>{std::to_string(*r.year)} : std::vector<std::string>{};
        default: return {};
    }
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

nlohmann::json postings_stats(const Index& index) {
    nlohmann::json stats = nlohmann::json::object();
    for (RecordField f : index.field_catalog()) {
        const auto& fp = index.field(f);
        std::size_t entries = 0;
        for (TermId t = 0; t < fp.term_count(); ++t) entries += fp.postings(t).size();
        stats[std::string(to_string(f))] = {{"terms", fp.term_count()}, {"postings", entries}};
    }
    return stats;
}

}  // namespace

ResultSet ResultSet::from_unsorted(std::vector<DocOrdinal> ordinals) {
    std::sort(ordinals.begin(), ordinals.end());
    ordinals.erase(std::unique(ordinals.begin(), ordinals.end()), ordinals.end());
    return ResultSet{std::move(ordinals)};
}

std::optional<FieldKind> field_kind(RecordField field) {
    switch (field) {
        case RecordField::title:
        case RecordField::source: return FieldKind::tokenized;
        case RecordField::year: return FieldKind::year;
        case RecordField::persons:
        case RecordField::subjects:
        case RecordField::locations:
        case RecordField::info_type:
        case RecordField::database:
        case RecordField::institutions: return FieldKind::categorical;
        default: return std::nullopt;
    }
}

std::optional<TermId> FieldPostings::find(std::string_view key) const {
    auto it = lookup_.find(std::string(key));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::span<const DocOrdinal> FieldPostings::postings(std::string_view key) const {
    auto term = find(key);
    if (!term) return {};
    return postings_[*term];
}

std::span<const TermId> FieldPostings::doc_terms(DocOrdinal doc) const {
    if (doc >= doc_terms_.size()) return {};
    return doc_terms_[doc];
}

std::span<const TermId> FieldPostings::terms_by_token_form(std::string_view joined_tokens) const {
    auto it = token_forms_.find(std::string(joined_tokens));
    if (it == token_forms_.end()) return {};
    return it->second;
}

Index Index::build(std::vector<Record> records) {
    Index index;
    index.records_ = std::move(records);
    const auto& recs = index.records_;
    const auto n = static_cast<DocOrdinal>(recs.size());

    index.ids_.reserve(recs.size());
    for (DocOrdinal d = 0; d < n; ++d) {
        if (recs[d].id.empty()) throw IndexBuildError("record at ordinal " + std::to_string(d) + " has no id");
        if (!index.ids_.emplace(recs[d].id, d).second) {
            throw IndexBuildError("duplicate record id '" + recs[d].id + "'");
        }
    }

    for (std::size_t slot = 0; slot < kIndexedFields.size(); ++slot) {
        const RecordField field = kIndexedFields[slot];
        const FieldKind kind = *field_kind(field);
        std::map<std::string, TermBuild> terms;

        for (DocOrdinal d = 0; d < n; ++d) {
            for (const auto& raw : field_values(recs[d], field)) {
                if (kind == FieldKind::tokenized) {
                    for (auto& token : tokenize(raw)) {
                        auto& tb = terms[token];
                        if (tb.docs.empty() || tb.docs.back() != d) tb.docs.push_back(d);
                    }
                } else {
                    auto& tb = terms[facet_key(raw)];
                    if (tb.docs.empty() || tb.docs.back() != d) tb.docs.push_back(d);
                    ++tb.spellings[raw];
                }
            }
        }

        FieldPostings& fp = index.fields_[slot];
        fp.keys_.reserve(terms.size());
        fp.display_.reserve(terms.size());
        fp.postings_.reserve(terms.size());
        fp.lookup_.reserve(terms.size());
        for (auto& [key, tb] : terms) {
            const auto id = static_cast<TermId>(fp.keys_.size());
            std::string display = key;
            std::size_t best = 0;
            // std::map iterates spellings ascending, so the first maximum wins ties.
            for (const auto& [spelling, count] : tb.spellings) {
                if (count > best) {
                    best = count;
                    display = spelling;
                }
            }
            fp.lookup_.emplace(key, id);
            fp.keys_.push_back(key);
            fp.display_.push_back(std::move(display));
            fp.postings_.push_back(std::move(tb.docs));
        }

        if (kind != FieldKind::tokenized) {
            fp.doc_terms_.assign(n, {});
            for (TermId t = 0; t < fp.keys_.size(); ++t) {
                for (DocOrdinal d : fp.postings_[t]) fp.doc_terms_[d].push_back(t);
            }
            for (TermId t = 0; t < fp.keys_.size(); ++t) {
                fp.token_forms_[join_tokens(tokenize(fp.keys_[t]))].push_back(t);
            }
        }
    }

    std::vector<DocOrdinal> order(n);
    std::iota(order.begin(), order.end(), DocOrdinal{0});
    std::sort(order.begin(), order.end(), [&](DocOrdinal a, DocOrdinal b) {
        const auto& ra = recs[a];
        const auto& rb = recs[b];
        if (ra.year != rb.year) {
            if (!ra.year) return false;
            if (!rb.year) return true;
            return *ra.year > *rb.year;
        }
        return ra.id < rb.id;
    });
    index.result_rank_.assign(n, 0);
    for (std::uint32_t pos = 0; pos < n; ++pos) index.result_rank_[order[pos]] = pos;

    return index;
}

std::optional<DocOrdinal> Index::find_id(std::string_view id) const {
    auto it = ids_.find(std::string(id));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const FieldPostings& Index::field(RecordField field) const {
    return fields_[slot_of(field)];
}

ResultSet Index::all_docs() const {
    ResultSet rs;
    rs.ordinals.resize(records_.size());
    std::iota(rs.ordinals.begin(), rs.ordinals.end(), DocOrdinal{0});
    return rs;
}

std::string facet_key(std::string_view value) {
    return case_fold(collapse_whitespace(value));
}

ResultSet postings_lookup(const Index& index, RecordField field, std::string_view value) {
    const auto& fp = index.field(field);
    std::string key;
    if (field_kind(field) == FieldKind::tokenized) {
        auto tokens = tokenize(value);
        if (tokens.size() != 1) return {};
        key = std::move(tokens.front());
    } else {
        key = facet_key(value);
    }
    auto docs = fp.postings(key);
    return ResultSet{{docs.begin(), docs.end()}};
}

std::vector<FacetCount> facet_counts(const Index& index, const ResultSet& rs, RecordField field, std::size_t k) {
    const auto kind = field_kind(field);
    if (!kind || *kind == FieldKind::tokenized) {
        throw UnsupportedFieldError("facet counts are not available for field '" +
                                    std::string(to_string(field)) + "'");
    }
    if (k == 0) throw std::invalid_argument("facet count limit k must be at least 1");

    const auto& fp = index.field(field);
    std::vector<std::uint32_t> counts(fp.term_count(), 0);
    std::vector<TermId> touched;
    for (DocOrdinal d : rs.ordinals) {
        for (TermId t : fp.doc_terms(d)) {
            if (counts[t]++ == 0) touched.push_back(t);
        }
    }
    // Term ids ascend with key, so id order breaks count ties by key.
    auto better = [&](TermId a, TermId b) { return counts[a] != counts[b] ? counts[a] > counts[b] : a < b; };
    const std::size_t take = std::min(k, touched.size());
    std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(take), touched.end(), better);

    std::vector<FacetCount> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back({fp.display(touched[i]), counts[touched[i]]});
    return out;
}

void save_index(const Index& index, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);

    nlohmann::json manifest;
    manifest["format_version"] = kIndexFormatVersion;
    manifest["doc_count"] = index.doc_count();
    auto& catalog = manifest["fields"] = nlohmann::json::array();
    for (RecordField f : index.field_catalog()) catalog.push_back(std::string(to_string(f)));
    manifest["postings"] = postings_stats(index);

    {
        std::ofstream out(directory / "records.jsonl", std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + (directory / "records.jsonl").string());
        for (const auto& r : index.records()) out << serialize_record(r) << '\n';
    }
    std::ofstream out(directory / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (directory / "manifest.json").string());
    out << manifest.dump(2) << '\n';
}

Index load_index(const std::filesystem::path& directory) {
    const auto manifest_path = directory / "manifest.json";
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw IndexFormatError("cannot open " + manifest_path.string());
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IndexFormatError("malformed " + manifest_path.string() + ": " + e.what());
    }

    const auto version = manifest.value("format_version", -1);
    if (version != kIndexFormatVersion) {
        throw IndexFormatError("unsupported index format version " + std::to_string(version) + " in " +
                               manifest_path.string() + " (expected " + std::to_string(kIndexFormatVersion) + ")");
    }

    CorpusReadOptions options;
    options.strict = true;
    std::vector<Record> records;
    try {
        records = read_corpus(directory / "records.jsonl", options).records;
    } catch (const CorpusError& e) {
        throw IndexFormatError("corrupt records.jsonl: " + std::string(e.what()));
    }

    Index index = Index::build(std::move(records));
    if (manifest.value("doc_count", std::size_t{0}) != index.doc_count()) {
        throw IndexFormatError("doc_count mismatch in " + manifest_path.string());
    }
    nlohmann::json catalog = nlohmann::json::array();
    for (RecordField f : index.field_catalog()) catalog.push_back(std::string(to_string(f)));
    if (manifest.value("fields", nlohmann::json::array()) != catalog) {
        throw IndexFormatError("field catalog mismatch in " + manifest_path.string());
    }
    if (manifest.value("postings", nlohmann::json::object()) != postings_stats(index)) {
        throw IndexFormatError("postings statistics mismatch in " + manifest_path.string());
    }
    return index;
}

}  // namespace facetscope
