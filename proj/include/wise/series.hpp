#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wise {

/// Shape of a single observation. Matrix observations are stored row-major;
/// function and quantile observations are sampled on a shared uniform grid.
struct ObservationKind {
    enum class Tag { Vector, Matrix, Function, Quantile };

    Tag tag = Tag::Vector;
    std::size_t rows = 1;
    std::size_t cols = 1;

    static ObservationKind vector(std::size_t p);
    static ObservationKind matrix(std::size_t rows, std::size_t cols);
    static ObservationKind function(std::size_t grid_len);
    static ObservationKind quantile(std::size_t grid_len);

    /// Number of stored reals per observation.
    [[nodiscard]] std::size_t dim() const noexcept { return rows * cols; }

    friend bool operator==(const ObservationKind&, const ObservationKind&) = default;
};

std::string to_string(const ObservationKind& kind);

/// An ordered sequence of equally shaped, finite observations.
///
/// Construction checks shape, finiteness and (for quantile series)
/// monotonicity. The minimum length required by the test is checked by
/// validate_series() and by the engine, not here, so that small series can
/// still be used to build similarity matrices.
class ObservationSeries {
public:
    ObservationSeries(ObservationKind kind, std::size_t n, std::vector<double> data);

    [[nodiscard]] const ObservationKind& kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return kind_.dim(); }

    [[nodiscard]] std::span<const double> operator[](std::size_t t) const noexcept {
        return {data_.data() + t * kind_.dim(), kind_.dim()};
    }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    /// Series with observation t taken from position order[t] of this one.
    [[nodiscard]] ObservationSeries permuted(std::span<const std::size_t> order) const;

private:
    ObservationKind kind_;
    std::size_t n_;
    std::vector<double> data_;
};

/// Minimum series length accepted by the test (the exact variance has
/// (n-3) in its denominators).
inline constexpr std::size_t kMinObservations = 4;

/// Checks raw rows against `kind` and returns a series of length >= 4.
ObservationSeries validate_series(const std::vector<std::vector<double>>& rows,
                                  const ObservationKind& kind);

/// Dense row-major n x n matrix.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * n_, n_};
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

}  // namespace wise
