#pragma once

#include <facetscope/index.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace facetscope {

inline constexpr int kTemporalWindowYears = 50;
/// Data spans shorter than this many years render as a bar chart, longer ones as a line chart.
inline constexpr int kBarChartMaxSpan = 15;
inline constexpr std::size_t kTopFacetLimit = 50;

enum class ChartKind { bar, line };
std::string_view to_string(ChartKind kind);

struct YearBin {
    int year = 0;
    std::size_t count = 0;
    friend bool operator==(const YearBin&, const YearBin&) = default;
};

struct TemporalHistogram {
    std::vector<YearBin> bins;  ///< 50 consecutive years ending at the reference year
    ChartKind chart_kind = ChartKind::bar;
    std::size_t covered = 0;    ///< docs with a year inside the window
    std::size_t uncovered = 0;  ///< docs with no year or a year outside the window
    friend bool operator==(const TemporalHistogram&, const TemporalHistogram&) = default;
};

/// Year histogram of `rs` over [reference_year - 49, reference_year].
TemporalHistogram temporal_distribution(const Index& index, const ResultSet& rs, int reference_year);

/// Chart kind from zero-filled bins: bar iff the nonzero span is below 15 years.
ChartKind chart_kind_for(const std::vector<YearBin>& bins);

int current_year();

struct GeoPoint {
    double latitude = 0.0;
    double longitude = 0.0;
    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Location name to coordinates table. Names match case-folded; later entries override earlier ones.
class Gazetteer {
public:
    Gazetteer() = default;

    /// Reads "name<TAB>lat<TAB>lon" lines. Blank lines and '#' comments are skipped.
    /// Throws CorpusError with the line number for malformed lines or out-of-range coordinates.
    static Gazetteer load(const std::filesystem::path& path);
    static Gazetteer parse(std::string_view content);

    void add(std::string_view name, GeoPoint point);
    std::optional<GeoPoint> resolve(std::string_view name) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    void add_line(std::string_view line, std::size_t line_number);

    std::unordered_map<std::string, GeoPoint> entries_;
};

struct SpatialBucket {
    std::string location;  ///< display name
    double latitude = 0.0;
    double longitude = 0.0;
    std::size_t count = 0;
    friend bool operator==(const SpatialBucket&, const SpatialBucket&) = default;
};

struct BoundingBox {
    double min_latitude = 0.0;
    double max_latitude = 0.0;
    double min_longitude = 0.0;
    double max_longitude = 0.0;
    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct SpatialBuckets {
    std::vector<SpatialBucket> buckets;  ///< count descending, then case-folded name
    std::vector<FacetCount> unresolved;  ///< locations missing from the gazetteer, same order
    std::optional<BoundingBox> bbox;
    friend bool operator==(const SpatialBuckets&, const SpatialBuckets&) = default;
};

SpatialBuckets spatial_distribution(const Index& index, const ResultSet& rs, const Gazetteer& gazetteer);

/// Up to 50 most frequent values of a categorical field.
std::vector<FacetCount> top_facet_chart(const Index& index, const ResultSet& rs, RecordField field);

}  // namespace facetscope
