#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "wise/series.hpp"

namespace wise::io {

/// Numeric CSV, one row per time point. A first line that does not parse as
/// numbers is treated as a header. Blank lines are skipped.
std::vector<std::vector<double>> read_csv_rows(std::istream& in);

struct MatrixRows {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<double>> data;  // row-major, ordered by t
};

/// JSON lines, each {"t": int, "rows": int, "cols": int, "data": [...]}.
/// Observations are ordered by t; duplicate t or differing shapes fail.
MatrixRows read_matrix_jsonl(std::istream& in);

ObservationSeries load_vector_csv(const std::filesystem::path& path);
ObservationSeries load_matrix_jsonl(const std::filesystem::path& path);

/// Full round-trip precision.
void write_series_csv(std::ostream& out, const ObservationSeries& series);
void write_matrix_jsonl(std::ostream& out, const ObservationSeries& series);

}  // namespace wise::io
