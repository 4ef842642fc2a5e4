#pragma once

#include <facetscope/text.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace facetscope {

enum class InfoType { literature, journal, research_project, event, institution, study };

std::string_view to_string(InfoType type);
std::optional<InfoType> parse_info_type(std::string_view text);

/// Record fields as named in the corpus file format.
enum class RecordField {
    id,
    title,
    persons,
    subjects,
    year,
    locations,
    info_type,
    database,
    source,
    institutions,
    language,
};

std::string_view to_string(RecordField field);
std::optional<RecordField> parse_record_field(std::string_view name);
bool is_multi_valued(RecordField field);

inline constexpr int kMinYear = 1000;
inline constexpr int kMaxYear = 3000;

/// One bibliographic information item. Immutable once ingested.
struct Record {
    std::string id;
    std::string title;
    std::vector<std::string> persons;
    std::vector<std::string> subjects;
    std::optional<int> year;
    std::vector<std::string> locations;
    std::optional<InfoType> info_type;
    std::string database;
    std::string source;
    std::vector<std::string> institutions;
    std::optional<std::string> language;

    friend bool operator==(const Record&, const Record&) = default;
};

/// A corpus line that could not be turned into a Record. `line` is 1-based; 0 when unknown.
class CorpusError : public std::runtime_error {
public:
    CorpusError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The line parsed but lacks a usable id.
class RecordRejected : public CorpusError {
public:
    using CorpusError::CorpusError;
};

/// Normalizes one raw field value. Multi-valued fields drop junk values; scalar text
/// fields are only whitespace-normalized. Returns nullopt when the value is dropped.
std::optional<std::string> normalize_value(std::string_view raw, RecordField field,
                                           const ValueNormalizer& normalizer = ValueNormalizer{});

Record parse_record(std::string_view line, std::size_t line_number = 0,
                    const ValueNormalizer& normalizer = ValueNormalizer{});
Record record_from_json(const nlohmann::json& object, std::size_t line_number = 0,
                        const ValueNormalizer& normalizer = ValueNormalizer{});

nlohmann::json record_to_json(const Record& record);
/// Single-line form accepted by parse_record.
std::string serialize_record(const Record& record);

struct CorpusReadOptions {
    bool strict = false;  ///< throw on the first bad line instead of collecting errors
    ValueNormalizer normalizer;
};

struct CorpusReadResult {
    std::vector<Record> records;
    std::vector<CorpusError> errors;
};

/// Reads a line-delimited corpus file; files ending in ".gz" are decompressed on the fly.
/// Throws std::runtime_error naming the path when the file cannot be opened.
CorpusReadResult read_corpus(const std::filesystem::path& path, const CorpusReadOptions& options = {});

/// Reads every line of a plain or gzip-compressed text file.
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace facetscope
