#include "wise/series.hpp"

#include <cmath>

#include "wise/error.hpp"

namespace wise {

ObservationKind ObservationKind::vector(std::size_t p) { return {Tag::Vector, 1, p}; }
ObservationKind ObservationKind::matrix(std::size_t rows, std::size_t cols) {
    return {Tag::Matrix, rows, cols};
}
ObservationKind ObservationKind::function(std::size_t grid_len) { return {Tag::Function, 1, grid_len}; }
ObservationKind ObservationKind::quantile(std::size_t grid_len) { return {Tag::Quantile, 1, grid_len}; }

std::string to_string(const ObservationKind& kind) {
    switch (kind.tag) {
        case ObservationKind::Tag::Vector: return "vector(" + std::to_string(kind.cols) + ")";
        case ObservationKind::Tag::Matrix:
            return "matrix(" + std::to_string(kind.rows) + "x" + std::to_string(kind.cols) + ")";
        case ObservationKind::Tag::Function: return "function(" + std::to_string(kind.cols) + ")";
        case ObservationKind::Tag::Quantile: return "quantile(" + std::to_string(kind.cols) + ")";
    }
    return "unknown";
}

ObservationSeries::ObservationSeries(ObservationKind kind, std::size_t n, std::vector<double> data)
    : kind_(kind), n_(n), data_(std::move(data)) {
    if (kind_.dim() == 0) fail(Errc::ShapeMismatch, "observation kind has zero size");
    if (n_ == 0) fail(Errc::TooFewObservations, "series is empty");
    if (data_.size() != n_ * kind_.dim()) {
        fail(Errc::ShapeMismatch, "expected " + std::to_string(n_ * kind_.dim()) + " values for " +
                                      std::to_string(n_) + " x " + to_string(kind_) + ", got " +
                                      std::to_string(data_.size()));
    }
    const std::size_t d = kind_.dim();
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            fail(Errc::InvalidValue, "non-finite entry at observation " + std::to_string(i / d) +
                                         ", coordinate " + std::to_string(i % d));
        }
    }
    if (kind_.tag == ObservationKind::Tag::Quantile) {
        for (std::size_t t = 0; t < n_; ++t) {
            const auto x = (*this)[t];
            for (std::size_t k = 1; k < d; ++k) {
                if (x[k] < x[k - 1]) {
                    fail(Errc::NotAQuantile, "observation " + std::to_string(t) +
                                                 " decreases at grid point " + std::to_string(k));
                }
            }
        }
    }
}

ObservationSeries ObservationSeries::permuted(std::span<const std::size_t> order) const {
    if (order.size() != n_) fail(Errc::ShapeMismatch, "permutation length differs from series length");
    std::vector<double> out;
    out.reserve(data_.size());
    for (std::size_t t = 0; t < n_; ++t) {
        if (order[t] >= n_) fail(Errc::ShapeMismatch, "permutation index out of range");
        const auto x = (*this)[order[t]];
        out.insert(out.end(), x.begin(), x.end());
    }
    return {kind_, n_, std::move(out)};
}

ObservationSeries validate_series(const std::vector<std::vector<double>>& rows,
                                  const ObservationKind& kind) {
    if (rows.size() < kMinObservations) {
        fail(Errc::TooFewObservations, "need at least " + std::to_string(kMinObservations) +
                                           " observations, got " + std::to_string(rows.size()));
    }
    const std::size_t d = kind.dim();
    std::vector<double> flat;
    flat.reserve(rows.size() * d);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        if (rows[t].size() != d) {
            fail(Errc::ShapeMismatch, "row " + std::to_string(t) + " has " + std::to_string(rows[t].size()) +
                                          " values, expected " + std::to_string(d) + " for " +
                                          to_string(kind));
        }
        flat.insert(flat.end(), rows[t].begin(), rows[t].end());
    }
    return {kind, rows.size(), std::move(flat)};
}

}  // namespace wise
