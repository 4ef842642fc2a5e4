#include <facetscope/analytics.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

namespace facetscope {

std::string_view to_string(ChartKind kind) {
    return kind == ChartKind::bar ? "bar" : "line";
}

int current_year() {
    const auto now = std::chrono::system_clock::now();
    const std::chrono::year_month_day ymd{std::chrono::floor<std::chrono::days>(now)};
    return static_cast<int>(ymd.year());
}

ChartKind chart_kind_for(const std::vector<YearBin>& bins) {
    auto nonzero = [](const YearBin& b) { return b.count > 0; };
    auto first = std::find_if(bins.begin(), bins.end(), nonzero);
    if (first == bins.end()) return ChartKind::bar;
    auto last = std::find_if(bins.rbegin(), bins.rend(), nonzero);
    const int span = last->year - first->year + 1;
    return span < kBarChartMaxSpan ? ChartKind::bar : ChartKind::line;
}

TemporalHistogram temporal_distribution(const Index& index, const ResultSet& rs, int reference_year) {
    TemporalHistogram h;
    const int first_year = reference_year - (kTemporalWindowYears - 1);
    h.bins.reserve(kTemporalWindowYears);
    for (int y = first_year; y <= reference_year; ++y) h.bins.push_back({y, 0});

    for (DocOrdinal d : rs.ordinals) {
        const auto& year = index.record(d).year;
        if (year && *year >= first_year && *year <= reference_year) {
            ++h.bins[static_cast<std::size_t>(*year - first_year)].count;
            ++h.covered;
        } else {
            ++h.uncovered;
        }
    }
    h.chart_kind = chart_kind_for(h.bins);
    return h;
}

void Gazetteer::add(std::string_view name, GeoPoint point) {
    entries_[facet_key(name)] = point;
}

std::optional<GeoPoint> Gazetteer::resolve(std::string_view name) const {
    auto it = entries_.find(facet_key(name));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void Gazetteer::add_line(std::string_view line, std::size_t line_number) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (collapse_whitespace(line).empty() || line.front() == '#') return;

    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        auto tab = line.find('\t', start);
        parts.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    if (parts.size() != 3) throw CorpusError(line_number, "expected name<TAB>lat<TAB>lon");

    auto number = [&](std::string_view text, const char* what) {
        const std::string trimmed = collapse_whitespace(text);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
        if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size() || !std::isfinite(value)) {
            throw CorpusError(line_number, std::string("malformed ") + what + " '" + trimmed + "'");
        }
        return value;
    };
    const std::string name = collapse_whitespace(parts[0]);
    if (name.empty()) throw CorpusError(line_number, "empty location name");
    const double lat = number(parts[1], "latitude");
    const double lon = number(parts[2], "longitude");
    if (lat < -90.0 || lat > 90.0) throw CorpusError(line_number, "latitude out of range");
    if (lon < -180.0 || lon > 180.0) throw CorpusError(line_number, "longitude out of range");
    add(name, {lat, lon});
}

Gazetteer Gazetteer::parse(std::string_view content) {
    Gazetteer g;
    std::size_t line_number = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
        auto nl = content.find('\n', start);
        auto line = content.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        g.add_line(line, ++line_number);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return g;
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
    Gazetteer g;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) g.add_line(lines[i], i + 1);
    return g;
}

SpatialBuckets spatial_distribution(const Index& index, const ResultSet& rs, const Gazetteer& gazetteer) {
    // All location values present among rs, ranked by count then key.
    const auto& fp = index.field(RecordField::locations);
    const auto all = facet_counts(index, rs, RecordField::locations, std::max<std::size_t>(1, fp.term_count()));

    SpatialBuckets out;
    for (const auto& fc : all) {
        if (auto point = gazetteer.resolve(fc.value)) {
            out.buckets.push_back({fc.value, point->latitude, point->longitude, fc.count});
        } else {
            out.unresolved.push_back(fc);
        }
    }
    for (const auto& b : out.buckets) {
        if (!out.bbox) {
            out.bbox = BoundingBox{b.latitude, b.latitude, b.longitude, b.longitude};
            continue;
        }
        out.bbox->min_latitude = std::min(out.bbox->min_latitude, b.latitude);
        out.bbox->max_latitude = std::max(out.bbox->max_latitude, b.latitude);
        out.bbox->min_longitude = std::min(out.bbox->min_longitude, b.longitude);
        out.bbox->max_longitude = std::max(out.bbox->max_longitude, b.longitude);
    }
    return out;
}

std::vector<FacetCount> top_facet_chart(const Index& index, const ResultSet& rs, RecordField field) {
    return facet_counts(index, rs, field, kTopFacetLimit);
}

}  // namespace facetscope
