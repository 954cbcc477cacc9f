#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_util.hpp"
#include "wise/engine.hpp"
#include "wise/heatmap.hpp"
#include "wise/ingest.hpp"
#include "wise/simgen.hpp"

using namespace wise;
using namespace wise::ingest;
using namespace std::chrono;

namespace {

CheckinRecord at(const char* ts, double lat, double lon) {
    return {parse_timestamp(ts, hours(9)), lat, lon};
}

double total(const ObservationSeries& s) {
    double t = 0;
    for (double v : s.data()) t += v;
    return t;
}

DateRange one_day(const char* day) { return {parse_date(day), parse_date(day)}; }

}  // namespace

TEST(Grid, CellOfTheCentre) {
    const GridConfig g;
    const auto cell = grid_cell(g, 35.7, 139.5);
    ASSERT_TRUE(cell);
    EXPECT_EQ(cell->first, 10u);
    EXPECT_EQ(cell->second, 10u);
}

TEST(Grid, UpperEdgesClampToLastCell) {
    const GridConfig g;
    EXPECT_EQ(grid_cell(g, 35.9, 139.0)->first, 19u);
    EXPECT_EQ(grid_cell(g, 35.5, 140.0)->second, 19u);
    EXPECT_EQ(grid_cell(g, 35.5, 139.0)->first, 0u);
    EXPECT_FALSE(grid_cell(g, 36.2, 139.5));
    EXPECT_FALSE(grid_cell(g, 35.7, 138.99));
}

TEST(Grid, MatchesBinWidthArithmetic) {
    const GridConfig g;
    for (int r = 0; r < 20; ++r) {
        for (int c = 0; c < 20; ++c) {
            // Cell centres: 0.02 degrees of latitude and 0.05 of longitude per cell.
            const auto cell = grid_cell(g, 35.5 + 0.02 * (r + 0.5), 139.0 + 0.05 * (c + 0.5));
            ASSERT_TRUE(cell);
            EXPECT_EQ(cell->first, std::size_t(r));
            EXPECT_EQ(cell->second, std::size_t(c));
        }
    }
}

TEST(Grid, Validation) {
    GridConfig g;
    g.lat_min = 36.0;
    EXPECT_ERRC(validate(g), Errc::BadRange);
    g = GridConfig{};
    g.cols = 0;
    EXPECT_ERRC(validate(g), Errc::BadRange);
}

TEST(Timestamps, OffsetsAndNaiveLocalTime) {
    const auto utc = parse_timestamp("2012-04-03T18:00:09Z", hours(9));
    EXPECT_EQ(utc, sys_days{2012y / April / 3} + 18h + 0min + 9s);
    EXPECT_EQ(parse_timestamp("2012-04-04T03:00:09+09:00", hours(0)), utc);
    EXPECT_EQ(parse_timestamp("2012-04-04 03:00:09", hours(9)), utc);
    EXPECT_EQ(parse_timestamp("2012-04-03T13:30:09.250-04:30", hours(9)), utc);
    EXPECT_EQ(parse_timestamp("2012-04-03T18:00Z", hours(9)), utc - 9s);
    EXPECT_ERRC(parse_timestamp("2012-13-01T00:00:00Z", hours(0)), Errc::ParseError);
    EXPECT_ERRC(parse_timestamp("2012-02-30T00:00:00Z", hours(0)), Errc::ParseError);
    EXPECT_ERRC(parse_timestamp("yesterday", hours(0)), Errc::ParseError);
    EXPECT_ERRC(parse_timestamp("2012-04-03T25:00:00Z", hours(0)), Errc::ParseError);
}

TEST(Timestamps, Offsets) {
    EXPECT_EQ(parse_utc_offset("+09:00"), minutes(540));
    EXPECT_EQ(parse_utc_offset("-0530"), minutes(-330));
    EXPECT_EQ(parse_utc_offset("Z"), minutes(0));
    EXPECT_ERRC(parse_utc_offset("09:00"), Errc::ParseError);
}

TEST(Ingest, SingleRecordLandsInItsCell) {
    const std::vector<CheckinRecord> records{at("2012-04-03T12:00:00+09:00", 35.7, 139.5)};
    const auto r = ingest_checkins(records, GridConfig{}, one_day("2012-04-03"));
    ASSERT_EQ(r.series.size(), 1u);
    EXPECT_EQ(r.series.kind(), ObservationKind::matrix(20, 20));
    const auto m = r.series[0];
    for (std::size_t k = 0; k < m.size(); ++k) EXPECT_EQ(m[k], k == 10 * 20 + 10 ? 1.0 : 0.0);
    EXPECT_EQ(r.binned, 1u);
    EXPECT_EQ(r.dropped_out_of_box, 0u);
}

TEST(Ingest, OutOfBoxIsCounted) {
    const std::vector<CheckinRecord> records{at("2012-04-03T12:00:00+09:00", 36.2, 139.5),
                                             at("2012-04-03T12:00:00+09:00", 35.9, 139.5)};
    const auto r = ingest_checkins(records, GridConfig{}, one_day("2012-04-03"));
    EXPECT_EQ(r.dropped_out_of_box, 1u);
    EXPECT_EQ(r.series[0][19 * 20 + 10], 1.0);
}

TEST(Ingest, LocalDayBoundaries) {
    // 23:30 local on the 3rd is 14:30 UTC; 00:30 local on the 4th is 15:30 UTC on the 3rd.
    const std::vector<CheckinRecord> records{at("2012-04-03T14:30:00Z", 35.6, 139.1),
                                             at("2012-04-03T15:30:00Z", 35.6, 139.1)};
    const auto r = ingest_checkins(records, GridConfig{}, {parse_date("2012-04-03"), parse_date("2012-04-05")});
    ASSERT_EQ(r.series.size(), 3u);
    EXPECT_EQ(total(r.series), 2.0);
    const auto day_total = [&](std::size_t d) {
        double t = 0;
        for (double v : r.series[d]) t += v;
        return t;
    };
    EXPECT_EQ(day_total(0), 1.0);
    EXPECT_EQ(day_total(1), 1.0);
    EXPECT_EQ(day_total(2), 0.0);  // a day without records is the zero matrix
    EXPECT_EQ(r.days[2], parse_date("2012-04-05"));
}

TEST(Ingest, RecordsOutsideTheDatesAreCountedSeparately) {
    const std::vector<CheckinRecord> records{at("2012-05-01T12:00:00+09:00", 35.7, 139.5)};
    const auto r = ingest_checkins(records, GridConfig{}, one_day("2012-04-03"));
    EXPECT_EQ(r.dropped_out_of_range, 1u);
    EXPECT_EQ(r.binned, 0u);
}

TEST(Ingest, EmptyRangeIsRejected) {
    EXPECT_ERRC(ingest_checkins({}, GridConfig{}, {parse_date("2012-04-05"), parse_date("2012-04-03")}),
                Errc::BadRange);
}

TEST(Ingest, CsvReader) {
    std::istringstream in(
        "venue,lat,lon,timestamp\n"
        "a,35.7,139.5,2012-04-03T12:00:00Z\n"
        "\n"
        "b,35.8,139.6,2012-04-03 21:00:00\n");
    const auto records = read_checkins_csv(in, hours(9));
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[0].latitude, 35.7);
    EXPECT_EQ(records[1].timestamp, sys_days{2012y / April / 3} + 12h);
    std::istringstream bad("timestamp,lat\n2012-04-03T12:00:00Z,35\n");
    EXPECT_ERRC(read_checkins_csv(bad, hours(9)), Errc::ParseError);
}

TEST(Heatmap, CsvShape) {
    SquareMatrix m(3);
    m(0, 1) = m(1, 0) = -0.5;
    m(1, 2) = m(2, 1) = 0.25;
    std::ostringstream out;
    heatmap::write_matrix_csv(out, SimilarityMatrix::from_symmetric(m));
    EXPECT_EQ(out.str(), "0,-0.5,0\n-0.5,0,0.25\n0,0.25,0\n");
}

TEST(Heatmap, PgmScaling) {
    SquareMatrix m(3);
    m(0, 1) = m(1, 0) = -1.0;
    m(0, 2) = m(2, 0) = 0.0;
    m(1, 2) = m(2, 1) = 1.0;
    for (std::size_t i = 0; i < 3; ++i) m(i, i) = 5.0;  // clamped to the off-diagonal max
    std::ostringstream out;
    heatmap::write_pgm(out, SimilarityMatrix::from_symmetric(m));
    EXPECT_EQ(out.str(), "P2\n3 3\n255\n255 0 128\n0 255 255\n128 255 255\n");
}

TEST(Heatmap, PgmLinesStayShort) {
    const auto x = sim::generate(sim::setting("setting1.1", 60, 3, 1));
    std::ostringstream out;
    heatmap::write_pgm(out, build_similarity_matrix(x, KernelSpec::neg_l2()));
    std::istringstream in(out.str());
    std::string line;
    std::size_t pixels = 0, lines = 0;
    while (std::getline(in, line)) {
        EXPECT_LE(line.size(), 70u);
        if (++lines > 3) {
            std::istringstream ls(line);
            int v;
            while (ls >> v) {
                EXPECT_GE(v, 0);
                EXPECT_LE(v, 255);
                ++pixels;
            }
        }
    }
    EXPECT_EQ(pixels, 60u * 60u);
}

TEST(Heatmap, LagProfileAndContrast) {
    SquareMatrix m(5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) m(i, j) = -double(i > j ? i - j : j - i);
    const auto S = SimilarityMatrix::from_symmetric(m);
    const auto prof = heatmap::lag_profile(S);
    ASSERT_EQ(prof.size(), 5u);
    for (std::size_t h = 0; h < 5; ++h) EXPECT_EQ(prof[h], -double(h));
    const auto c = heatmap::lag_contrast(S, 1, 3);
    EXPECT_EQ(c.near_mean, -1.0);
    EXPECT_EQ(c.far_mean, -4.0);
    EXPECT_EQ(c.near_count, 4u);
    EXPECT_EQ(c.far_count, 1u);
    EXPECT_ERRC(heatmap::lag_contrast(S, 2, 10), Errc::InvalidValue);
}

TEST(Heatmap, IidFieldHasNoBand) {
    // Differences between near and far lag means, across independent datasets.
    const int R = 200;
    double sum = 0, sq = 0;
    for (int rep = 0; rep < R; ++rep) {
        const auto x = sim::generate(sim::setting("setting1.1", 40, 100, 700 + rep));
        const auto c = heatmap::lag_contrast(build_similarity_matrix(x, KernelSpec::neg_l1()), 2, 10, true);
        const double d = c.near_mean - c.far_mean;
        sum += d;
        sq += d * d;
    }
    const double mean = sum / R;
    const double se = std::sqrt((sq / R - mean * mean) / R);
    EXPECT_LT(std::abs(mean), 3 * se);
}

TEST(Heatmap, VarSeriesShowsBand) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto x = sim::generate(sim::setting("var3", 40, 100, seed));
        const auto c = heatmap::lag_contrast(build_similarity_matrix(x, KernelSpec::neg_l1()), 2, 10);
        EXPECT_GT(c.near_mean, c.far_mean) << "seed " << seed;
    }
}
