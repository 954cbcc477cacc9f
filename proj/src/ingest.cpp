#include "wise/ingest.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <string>

#include "wise/error.hpp"

namespace wise::ingest {
namespace {

using namespace std::chrono;

int parse_digits(std::string_view text, std::size_t pos, std::size_t len, std::string_view what) {
    int v = 0;
    if (pos + len > text.size()) fail(Errc::ParseError, "truncated " + std::string(what) + " in '" + std::string(text) + "'");
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, v);
    if (ec != std::errc{} || ptr != text.data() + pos + len) {
        fail(Errc::ParseError, "bad " + std::string(what) + " in '" + std::string(text) + "'");
    }
    return v;
}

void expect(std::string_view text, std::size_t pos, char c) {
    if (pos >= text.size() || text[pos] != c) {
        fail(Errc::ParseError, "expected '" + std::string(1, c) + "' at position " + std::to_string(pos) + " of '" +
                                   std::string(text) + "'");
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto comma = line.find(',');
        out.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) return out;
        line.remove_prefix(comma + 1);
    }
}

double parse_coord(std::string_view text, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        fail(Errc::ParseError, "line " + std::to_string(line_no) + ": bad coordinate '" + std::string(text) + "'");
    }
    return v;
}

// Bin index along one axis; the closed upper edge maps to the last bin.
std::size_t bin(double v, double lo, double hi, std::size_t count) {
    const double scaled = (v - lo) * static_cast<double>(count) / (hi - lo);
    const auto idx = static_cast<std::size_t>(std::floor(scaled));
    return std::min(idx, count - 1);
}

}  // namespace

void validate(const GridConfig& g) {
    if (!(std::isfinite(g.lat_min) && std::isfinite(g.lat_max) && g.lat_min < g.lat_max)) {
        fail(Errc::BadRange, "latitude bounds must satisfy min < max");
    }
    if (!(std::isfinite(g.lon_min) && std::isfinite(g.lon_max) && g.lon_min < g.lon_max)) {
        fail(Errc::BadRange, "longitude bounds must satisfy min < max");
    }
    if (g.rows < 1 || g.cols < 1) fail(Errc::BadRange, "grid needs at least one row and one column");
}

std::optional<std::pair<std::size_t, std::size_t>> grid_cell(const GridConfig& g, double lat, double lon) {
    if (!(lat >= g.lat_min && lat <= g.lat_max && lon >= g.lon_min && lon <= g.lon_max)) return std::nullopt;
    return std::pair{bin(lat, g.lat_min, g.lat_max, g.rows), bin(lon, g.lon_min, g.lon_max, g.cols)};
}

IngestResult ingest_checkins(std::span<const CheckinRecord> records, const GridConfig& grid, const DateRange& range,
                             minutes utc_offset) {
    validate(grid);
    if (range.last < range.first) fail(Errc::BadRange, "date range is empty");
    const auto day_count = static_cast<std::size_t>((range.last - range.first).count() + 1);
    const std::size_t cells = grid.rows * grid.cols;
    std::vector<double> counts(day_count * cells, 0.0);

    std::size_t binned = 0;
    std::size_t out_of_box = 0;
    std::size_t out_of_range = 0;
    for (const auto& r : records) {
        const auto cell = grid_cell(grid, r.latitude, r.longitude);
        if (!cell) {
            ++out_of_box;
            continue;
        }
        const sys_days day = floor<days>(r.timestamp + utc_offset);
        if (day < range.first || day > range.last) {
            ++out_of_range;
            continue;
        }
        const auto d = static_cast<std::size_t>((day - range.first).count());
        counts[d * cells + cell->first * grid.cols + cell->second] += 1.0;
        ++binned;
    }

    std::vector<sys_days> day_list;
    day_list.reserve(day_count);
    for (std::size_t d = 0; d < day_count; ++d) day_list.push_back(range.first + days(d));
    return IngestResult{ObservationSeries(ObservationKind::matrix(grid.rows, grid.cols), day_count, std::move(counts)),
                        std::move(day_list), binned, out_of_box, out_of_range};
}

sys_days parse_date(std::string_view text) {
    text = trim(text);
    const int y = parse_digits(text, 0, 4, "year");
    expect(text, 4, '-');
    const int m = parse_digits(text, 5, 2, "month");
    expect(text, 7, '-');
    const int d = parse_digits(text, 8, 2, "day");
    if (text.size() != 10) fail(Errc::ParseError, "trailing characters in date '" + std::string(text) + "'");
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) fail(Errc::ParseError, "invalid calendar date '" + std::string(text) + "'");
    return sys_days{ymd};
}

minutes parse_utc_offset(std::string_view text) {
    text = trim(text);
    if (text == "Z" || text == "z") return minutes{0};
    if (text.empty() || (text[0] != '+' && text[0] != '-')) {
        fail(Errc::ParseError, "UTC offset must start with + or -: '" + std::string(text) + "'");
    }
    const int sign = text[0] == '-' ? -1 : 1;
    const int h = parse_digits(text, 1, 2, "offset hours");
    std::size_t pos = 3;
    if (pos < text.size() && text[pos] == ':') ++pos;
    int m = 0;
    if (pos < text.size()) m = parse_digits(text, pos, 2, "offset minutes");
    if (pos < text.size() && pos + 2 != text.size()) {
        fail(Errc::ParseError, "trailing characters in offset '" + std::string(text) + "'");
    }
    if (h > 23 || m > 59) fail(Errc::ParseError, "UTC offset out of range: '" + std::string(text) + "'");
    return minutes{sign * (h * 60 + m)};
}

sys_seconds parse_timestamp(std::string_view text, minutes local_offset) {
    text = trim(text);
    if (text.size() < 16) fail(Errc::ParseError, "timestamp too short: '" + std::string(text) + "'");
    const sys_days day = parse_date(text.substr(0, 10));
    if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') {
        fail(Errc::ParseError, "expected 'T' after the date in '" + std::string(text) + "'");
    }
    const int hh = parse_digits(text, 11, 2, "hour");
    expect(text, 13, ':');
    const int mm = parse_digits(text, 14, 2, "minute");
    int ss = 0;
    std::size_t pos = 16;
    if (pos < text.size() && text[pos] == ':') {
        ss = parse_digits(text, pos + 1, 2, "second");
        pos += 3;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        }
    }
    if (hh > 23 || mm > 59 || ss > 60) fail(Errc::ParseError, "time of day out of range in '" + std::string(text) + "'");
    const sys_seconds wall = day + hours(hh) + minutes(mm) + seconds(ss);
    const minutes offset = pos < text.size() ? parse_utc_offset(text.substr(pos)) : local_offset;
    return wall - offset;
}

std::vector<CheckinRecord> read_checkins_csv(std::istream& in, minutes local_offset) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    const auto header = split(line);
    std::size_t ts_col = header.size();
    std::size_t lat_col = header.size();
    std::size_t lon_col = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "timestamp" || header[c] == "utcTimestamp" || header[c] == "time") ts_col = c;
        if (header[c] == "lat" || header[c] == "latitude") lat_col = c;
        if (header[c] == "lon" || header[c] == "lng" || header[c] == "longitude") lon_col = c;
    }
    if (ts_col == header.size() || lat_col == header.size() || lon_col == header.size()) {
        fail(Errc::ParseError, "check-in CSV header must name timestamp, lat and lon columns");
    }

    std::vector<CheckinRecord> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            fail(Errc::ParseError, "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                       " fields, header has " + std::to_string(header.size()));
        }
        out.push_back({parse_timestamp(cells[ts_col], local_offset), parse_coord(cells[lat_col], line_no),
                       parse_coord(cells[lon_col], line_no)});
    }
    return out;
}

}  // namespace wise::ingest
