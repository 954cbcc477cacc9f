#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wise/series.hpp"

namespace wise::ingest {

struct CheckinRecord {
    std::chrono::sys_seconds timestamp;  // UTC instant
    double latitude = 0.0;
    double longitude = 0.0;
};

/// Bounding box split into rows x cols equal cells; rows run along latitude.
struct GridConfig {
    double lat_min = 35.5;
    double lat_max = 35.9;
    double lon_min = 139.0;
    double lon_max = 140.0;
    std::size_t rows = 20;
    std::size_t cols = 20;
};

/// Throws BadRange.
void validate(const GridConfig& grid);

/// Cell of a point inside the closed box, or nullopt outside it. The upper
/// edges belong to the last row and column.
std::optional<std::pair<std::size_t, std::size_t>> grid_cell(const GridConfig& grid, double lat, double lon);

/// Inclusive range of local calendar days.
struct DateRange {
    std::chrono::sys_days first;
    std::chrono::sys_days last;
};

struct IngestResult {
    ObservationSeries series;  // one count matrix per day, kind matrix(rows, cols)
    std::vector<std::chrono::sys_days> days;
    std::size_t binned = 0;
    std::size_t dropped_out_of_box = 0;
    std::size_t dropped_out_of_range = 0;  // inside the box but outside the dates
};

/// Daily rows x cols check-in counts. Days are bucketed in local time at
/// `utc_offset`; days without records give the zero matrix.
IngestResult ingest_checkins(std::span<const CheckinRecord> records, const GridConfig& grid, const DateRange& range,
                             std::chrono::minutes utc_offset = std::chrono::hours(9));

/// "YYYY-MM-DD".
std::chrono::sys_days parse_date(std::string_view text);
/// "+09:00", "-0530", "Z".
std::chrono::minutes parse_utc_offset(std::string_view text);
/// ISO-8601 "YYYY-MM-DD[T ]HH:MM[:SS[.fff]][Z|+HH:MM]". A timestamp without
/// an offset is read as local time at `local_offset`.
std::chrono::sys_seconds parse_timestamp(std::string_view text, std::chrono::minutes local_offset);

/// CSV with a header containing timestamp, lat and lon columns (any order,
/// extra columns ignored).
std::vector<CheckinRecord> read_checkins_csv(std::istream& in, std::chrono::minutes local_offset);

}  // namespace wise::ingest
