#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wise/kernels.hpp"
#include "wise/series.hpp"
#include "wise/weights.hpp"

namespace wise {

/// Symmetric n x n matrix of pairwise similarities. The diagonal holds the
/// kernel's self-similarity; every statistic in the engine ignores it.
class SimilarityMatrix {
public:
    /// Returns (raw + raw^T) / 2. Throws InvalidValue on non-finite entries.
    static SimilarityMatrix symmetrized(const SquareMatrix& raw);
    /// Wraps an already symmetric matrix; throws ShapeMismatch if it is not
    /// exactly symmetric and InvalidValue on non-finite entries.
    static SimilarityMatrix from_symmetric(SquareMatrix values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
    [[nodiscard]] const SquareMatrix& values() const noexcept { return values_; }

private:
    explicit SimilarityMatrix(SquareMatrix values) : values_(std::move(values)) {}
    SquareMatrix values_;
};

/// Toeplitz matrix W[i][j] = w(|i - j|) with zero diagonal.
class WeightMatrix {
public:
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
    [[nodiscard]] const SquareMatrix& values() const noexcept { return values_; }
    [[nodiscard]] const WeightSpec& spec() const noexcept { return spec_; }
    /// w(lag) for lag in [0, n).
    [[nodiscard]] std::span<const double> lags() const noexcept { return lags_; }

private:
    friend WeightMatrix build_weight_matrix(std::size_t n, const WeightSpec& spec);
    WeightMatrix(SquareMatrix values, std::vector<double> lags, WeightSpec spec)
        : values_(std::move(values)), lags_(std::move(lags)), spec_(std::move(spec)) {}

    SquareMatrix values_;
    std::vector<double> lags_;
    WeightSpec spec_;
};

/// A pointwise similarity that need not be symmetric.
using RawKernel = std::function<double(std::span<const double>, std::span<const double>)>;

/// S[i][j] = (s(X_i, X_j) + s(X_j, X_i)) / 2. Rows are filled in parallel;
/// the result does not depend on the thread count.
SimilarityMatrix build_similarity_matrix(const ObservationSeries& series, const RawKernel& kernel);

/// Dispatches on the kernel family (knn goes through knn_affinity_matrix).
SimilarityMatrix build_similarity_matrix(const ObservationSeries& series, const KernelSpec& kernel);

/// Symmetrized k-nearest-neighbour adjacency under the base distance of
/// `kernel`: entries are 0, 1/2 or 1 and the diagonal is 0. Distance ties go
/// to the lower time index.
SimilarityMatrix knn_affinity_matrix(const ObservationSeries& series, std::size_t k, KernelFamily base);

/// Throws BadWeightParam for n == 0.
WeightMatrix build_weight_matrix(std::size_t n, const WeightSpec& spec);

}  // namespace wise
