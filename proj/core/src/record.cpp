#include <facetscope/record.hpp>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include <array>
#include <fstream>
#include <memory>
#include <utility>

namespace facetscope {

namespace {

constexpr std::array<std::pair<InfoType, std::string_view>, 6> kInfoTypes{{
    {InfoType::literature, "literature"},
    {InfoType::journal, "journal"},
    {InfoType::research_project, "research_project"},
    {InfoType::event, "event"},
    {InfoType::institution, "institution"},
    {InfoType::study, "study"},
}};

constexpr std::array<std::pair<RecordField, std::string_view>, 11> kRecordFields{{
    {RecordField::id, "id"},
    {RecordField::title, "title"},
    {RecordField::persons, "persons"},
    {RecordField::subjects, "subjects"},
    {RecordField::year, "year"},
    {RecordField::locations, "locations"},
    {RecordField::info_type, "info_type"},
    {RecordField::database, "database"},
    {RecordField::source, "source"},
    {RecordField::institutions, "institutions"},
    {RecordField::language, "language"},
}};

[[noreturn]] void fail(std::size_t line, const std::string& message) {
    throw CorpusError(line, message);
}

std::string scalar_string(const nlohmann::json& object, RecordField field, std::size_t line,
                          const ValueNormalizer& normalizer) {
    auto it = object.find(std::string(to_string(field)));
    if (it == object.end() || it->is_null()) return {};
    if (!it->is_string()) fail(line, "field '" + std::string(to_string(field)) + "' must be a string");
    return normalize_value(it->get_ref<const std::string&>(), field, normalizer).value_or(std::string{});
}

std::vector<std::string> string_list(const nlohmann::json& object, RecordField field, std::size_t line,
                                     const ValueNormalizer& normalizer) {
    std::vector<std::string> values;
    auto it = object.find(std::string(to_string(field)));
    if (it == object.end() || it->is_null()) return values;
    auto take = [&](const nlohmann::json& item) {
        if (!item.is_string()) {
            fail(line, "field '" + std::string(to_string(field)) + "' must hold strings");
        }
        if (auto v = normalize_value(item.get_ref<const std::string&>(), field, normalizer)) {
            values.push_back(std::move(*v));
        }
    };
    if (it->is_array()) {
        for (const auto& item : *it) take(item);
    } else {
        take(*it);
    }
    return values;
}

}  // namespace

std::string_view to_string(InfoType type) {
    for (const auto& [t, name] : kInfoTypes) {
        if (t == type) return name;
    }
    return "literature";
}

std::optional<InfoType> parse_info_type(std::string_view text) {
    const std::string folded = case_fold(collapse_whitespace(text));
    for (const auto& [t, name] : kInfoTypes) {
        if (folded == name) return t;
    }
    return std::nullopt;
}

std::string_view to_string(RecordField field) {
    for (const auto& [f, name] : kRecordFields) {
        if (f == field) return name;
    }
    return "id";
}

std::optional<RecordField> parse_record_field(std::string_view name) {
    for (const auto& [f, n] : kRecordFields) {
        if (n == name) return f;
    }
    return std::nullopt;
}

bool is_multi_valued(RecordField field) {
    return field == RecordField::persons || field == RecordField::subjects ||
           field == RecordField::locations || field == RecordField::institutions;
}

CorpusError::CorpusError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

std::optional<std::string> normalize_value(std::string_view raw, RecordField field,
                                           const ValueNormalizer& normalizer) {
    if (is_multi_valued(field)) return normalizer.normalize(raw);
    std::string value = collapse_whitespace(raw);
    if (value.empty()) return std::nullopt;
    return value;
}

Record record_from_json(const nlohmann::json& object, std::size_t line, const ValueNormalizer& normalizer) {
    if (!object.is_object()) fail(line, "expected a JSON object");

    Record record;
    auto id = object.find("id");
    if (id == object.end() || id->is_null()) throw RecordRejected(line, "record has no id");
    if (!id->is_string()) throw RecordRejected(line, "record id must be a string");
    record.id = collapse_whitespace(id->get_ref<const std::string&>());
    if (record.id.empty()) throw RecordRejected(line, "record id is empty");

    record.title = scalar_string(object, RecordField::title, line, normalizer);
    record.persons = string_list(object, RecordField::persons, line, normalizer);
    record.subjects = string_list(object, RecordField::subjects, line, normalizer);
    record.locations = string_list(object, RecordField::locations, line, normalizer);
    record.institutions = string_list(object, RecordField::institutions, line, normalizer);
    record.database = scalar_string(object, RecordField::database, line, normalizer);
    record.source = scalar_string(object, RecordField::source, line, normalizer);

    if (auto year = object.find("year"); year != object.end() && !year->is_null()) {
        if (!year->is_number_integer()) fail(line, "field 'year' must be an integer");
        const auto value = year->get<long long>();
        if (value < kMinYear || value > kMaxYear) {
            fail(line, "year " + std::to_string(value) + " outside [1000, 3000]");
        }
        record.year = static_cast<int>(value);
    }

    if (auto type = scalar_string(object, RecordField::info_type, line, normalizer); !type.empty()) {
        record.info_type = parse_info_type(type);
        if (!record.info_type) fail(line, "unknown info_type '" + type + "'");
    }

    if (auto language = scalar_string(object, RecordField::language, line, normalizer); !language.empty()) {
        language = case_fold(language);
        auto is_letter = [](char c) { return c >= 'a' && c <= 'z'; };
        if (language.size() != 2 || !is_letter(language[0]) || !is_letter(language[1])) {
            fail(line, "language '" + language + "' is not a 2-letter code");
        }
        record.language = std::move(language);
    }
    return record;
}

Record parse_record(std::string_view line, std::size_t line_number, const ValueNormalizer& normalizer) {
    nlohmann::json object;
    try {
        object = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        fail(line_number, std::string("malformed JSON: ") + e.what());
    }
    return record_from_json(object, line_number, normalizer);
}

nlohmann::json record_to_json(const Record& record) {
    nlohmann::json out = nlohmann::json::object();
    out["id"] = record.id;
    out["title"] = record.title;
    out["persons"] = record.persons;
    out["subjects"] = record.subjects;
    if (record.year) out["year"] = *record.year;
    out["locations"] = record.locations;
    if (record.info_type) out["info_type"] = std::string(to_string(*record.info_type));
    out["database"] = record.database;
    out["source"] = record.source;
    out["institutions"] = record.institutions;
    if (record.language) out["language"] = *record.language;
    return out;
}

std::string serialize_record(const Record& record) {
    return record_to_json(record).dump();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::vector<std::string> lines;
    if (path.extension() == ".gz") {
        std::unique_ptr<gzFile_s, decltype(&gzclose)> file(gzopen(path.c_str(), "rb"), &gzclose);
        if (!file) throw std::runtime_error("cannot open " + path.string());
        std::string current;
        std::array<char, 1 << 16> buffer{};
        int n = 0;
        while ((n = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()))) > 0) {
            for (int i = 0; i < n; ++i) {
                if (buffer[static_cast<std::size_t>(i)] == '\n') {
                    lines.push_back(std::move(current));
                    current.clear();
                } else {
                    current.push_back(buffer[static_cast<std::size_t>(i)]);
                }
            }
        }
        if (n < 0) throw std::runtime_error("corrupt gzip stream in " + path.string());
        if (!current.empty()) lines.push_back(std::move(current));
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + path.string());
        std::string line;
        while (std::getline(in, line)) lines.push_back(std::move(line));
    }
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
    }
    return lines;
}

CorpusReadResult read_corpus(const std::filesystem::path& path, const CorpusReadOptions& options) {
    CorpusReadResult result;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (collapse_whitespace(lines[i]).empty()) continue;
        try {
            result.records.push_back(parse_record(lines[i], i + 1, options.normalizer));
        } catch (const CorpusError& e) {
            if (options.strict) throw;
            result.errors.push_back(e);
        }
    }
    return result;
}

}  // namespace facetscope
