#include "wise/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <map>
#include <ostream>
#include <string>

#include "wise/error.hpp"
#include "wise/spec_grammar.hpp"

namespace wise::io {
namespace {

bool parse_number(std::string_view cell, double& out) {
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc{} && ptr == cell.data() + cell.size() && !cell.empty();
}

bool parse_row(const std::string& line, std::vector<double>& row) {
    row.clear();
    std::string_view rest(line);
    for (;;) {
        const auto comma = rest.find(',');
        double v = 0.0;
        if (!parse_number(rest.substr(0, comma), v)) return false;
        row.push_back(v);
        if (comma == std::string_view::npos) return true;
        rest.remove_prefix(comma + 1);
    }
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::Io, "cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::vector<std::vector<double>> read_csv_rows(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        if (!parse_row(line, row)) {
            if (first) {
                first = false;
                continue;
            }
            fail(Errc::ParseError, "line " + std::to_string(line_no) + " is not a row of numbers");
        }
        first = false;
        rows.push_back(row);
    }
    return rows;
}

MatrixRows read_matrix_jsonl(std::istream& in) {
    std::map<long long, std::vector<double>> by_time;
    MatrixRows out;
    bool have_shape = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto where = "line " + std::to_string(line_no);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            fail(Errc::ParseError, where + ": " + e.what());
        }
        long long t = 0;
        std::size_t rows = 0;
        std::size_t cols = 0;
        std::vector<double> data;
        try {
            t = j.at("t").get<long long>();
            rows = j.at("rows").get<std::size_t>();
            cols = j.at("cols").get<std::size_t>();
            data = j.at("data").get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
            fail(Errc::ParseError, where + ": " + e.what());
        }
        if (!have_shape) {
            out.rows = rows;
            out.cols = cols;
            have_shape = true;
        } else if (rows != out.rows || cols != out.cols) {
            fail(Errc::ShapeMismatch, where + ": shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                                          " differs from " + std::to_string(out.rows) + "x" + std::to_string(out.cols));
        }
        if (data.size() != rows * cols) {
            fail(Errc::ShapeMismatch, where + ": data has " + std::to_string(data.size()) + " values, expected " +
                                          std::to_string(rows * cols));
        }
        if (!by_time.emplace(t, std::move(data)).second) {
            fail(Errc::ParseError, where + ": duplicate t = " + std::to_string(t));
        }
    }
    for (auto& [t, data] : by_time) out.data.push_back(std::move(data));
    return out;
}

ObservationSeries load_vector_csv(const std::filesystem::path& path) {
    auto in = open(path);
    const auto rows = read_csv_rows(in);
    if (rows.empty()) fail(Errc::TooFewObservations, "'" + path.string() + "' has no data rows");
    return validate_series(rows, ObservationKind::vector(rows.front().size()));
}

ObservationSeries load_matrix_jsonl(const std::filesystem::path& path) {
    auto in = open(path);
    const auto m = read_matrix_jsonl(in);
    if (m.data.empty()) fail(Errc::TooFewObservations, "'" + path.string() + "' has no observations");
    return validate_series(m.data, ObservationKind::matrix(m.rows, m.cols));
}

void write_series_csv(std::ostream& out, const ObservationSeries& series) {
    for (std::size_t t = 0; t < series.size(); ++t) {
        const auto x = series[t];
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (k > 0) out << ',';
            out << detail::format_real(x[k]);
        }
        out << '\n';
    }
}

void write_matrix_jsonl(std::ostream& out, const ObservationSeries& series) {
    const auto& kind = series.kind();
    for (std::size_t t = 0; t < series.size(); ++t) {
        const auto x = series[t];
        const nlohmann::json j = {{"t", t},
                                  {"rows", kind.rows},
                                  {"cols", kind.cols},
                                  {"data", std::vector<double>(x.begin(), x.end())}};
        out << j.dump() << '\n';
    }
}

}  // namespace wise::io
