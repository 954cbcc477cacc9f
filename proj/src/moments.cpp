#include "wise/moments.hpp"

#include "wise/error.hpp"
#include "wise/summation.hpp"

namespace wise {
namespace {

struct FieldSums {
    double total = 0.0;
    double squares = 0.0;
    double row_squares = 0.0;
    std::vector<double> rows;
    double squares_centered = 0.0;
    double row_squares_centered = 0.0;
};

FieldSums field_sums(const SquareMatrix& m) {
    const std::size_t n = m.size();
    FieldSums out;
    out.rows.resize(n);
    CompensatedSum total;
    CompensatedSum squares;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum row;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double v = m(i, j);
            row.add(v);
            total.add(v);
            squares.add(v * v);
        }
        out.rows[i] = row.value();
    }
    out.total = total.value();
    out.squares = squares.value();

    CompensatedSum row_squares;
    for (double r : out.rows) row_squares.add(r * r);
    out.row_squares = row_squares.value();

    if (n < 2) return out;
    const double mean = out.total / static_cast<double>(n * (n - 1));
    CompensatedSum sq_c;
    CompensatedSum row_sq_c;
    for (std::size_t i = 0; i < n; ++i) {
        // sum_{j != i} (m_ij - mean) equals rows[i] - total / n, but is
        // accumulated from small terms.
        CompensatedSum row_dev;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = m(i, j) - mean;
            sq_c.add(d * d);
            row_dev.add(d);
        }
        const double r = row_dev.value();
        row_sq_c.add(r * r);
    }
    out.squares_centered = sq_c.value();
    out.row_squares_centered = row_sq_c.value();
    return out;
}

}  // namespace

double off_diagonal_mean(const SquareMatrix& m) {
    const std::size_t n = m.size();
    if (n < 2) return 0.0;
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) total.add(m(i, j));
        }
    }
    return total.value() / static_cast<double>(n * (n - 1));
}

MomentSummary moment_summary(const SimilarityMatrix& S, const WeightMatrix& W) {
    if (S.size() != W.size()) {
        fail(Errc::ShapeMismatch, "similarity matrix is " + std::to_string(S.size()) + " x " +
                                      std::to_string(S.size()) + " but weight matrix is " +
                                      std::to_string(W.size()) + " x " + std::to_string(W.size()));
    }
    auto ws = field_sums(W.values());
    auto ss = field_sums(S.values());
    MomentSummary m;
    m.n = S.size();
    m.w1 = ws.total;
    m.w2 = ws.squares;
    m.w3 = ws.row_squares;
    m.w_row = std::move(ws.rows);
    m.w2_centered = ws.squares_centered;
    m.w3_centered = ws.row_squares_centered;
    m.S1 = ss.total;
    m.S2 = ss.squares;
    m.S3 = ss.row_squares;
    m.S_row = std::move(ss.rows);
    m.S2_centered = ss.squares_centered;
    m.S3_centered = ss.row_squares_centered;
    return m;
}

}  // namespace wise
