#include "wise/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wise/error.hpp"
#include "wise/parallel.hpp"

namespace wise {
namespace {

void check_finite(const SquareMatrix& m) {
    for (double v : m.values()) {
        if (!std::isfinite(v)) fail(Errc::InvalidValue, "similarity matrix has a non-finite entry");
    }
}

}  // namespace

SimilarityMatrix SimilarityMatrix::symmetrized(const SquareMatrix& raw) {
    const std::size_t n = raw.size();
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = raw(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = (raw(i, j) + raw(j, i)) / 2.0;
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    check_finite(out);
    return SimilarityMatrix(std::move(out));
}

SimilarityMatrix SimilarityMatrix::from_symmetric(SquareMatrix values) {
    check_finite(values);
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values(i, j) != values(j, i)) {
                fail(Errc::ShapeMismatch, "similarity matrix is not symmetric at (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ")");
            }
        }
    }
    return SimilarityMatrix(std::move(values));
}

SimilarityMatrix build_similarity_matrix(const ObservationSeries& series, const RawKernel& kernel) {
    const std::size_t n = series.size();
    SquareMatrix out(n);
    // Row i owns the pairs (i, j >= i), so every cell is written by one task.
    parallel_for(n, [&](std::size_t i) {
        const auto xi = series[i];
        out(i, i) = (kernel(xi, xi) + kernel(xi, xi)) / 2.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto xj = series[j];
            const double v = (kernel(xi, xj) + kernel(xj, xi)) / 2.0;
            out(i, j) = v;
            out(j, i) = v;
        }
    });
    return SimilarityMatrix::from_symmetric(std::move(out));
}

SimilarityMatrix build_similarity_matrix(const ObservationSeries& series, const KernelSpec& kernel) {
    check_kernel(kernel, series.kind());
    if (kernel.family == KernelFamily::KnnAffinity) return knn_affinity_matrix(series, kernel.k, kernel.base);
    const ObservationKind kind = series.kind();
    return build_similarity_matrix(series, [&](std::span<const double> x, std::span<const double> y) {
        return similarity_evaluate(kernel, kind, x, y);
    });
}

SimilarityMatrix knn_affinity_matrix(const ObservationSeries& series, std::size_t k, KernelFamily base) {
    const std::size_t n = series.size();
    if (k < 1 || k >= n) {
        fail(Errc::BadWeightParam, "knn requires 1 <= k < n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
    }
    const KernelSpec base_spec{base};
    check_kernel(base_spec, series.kind());
    if (!is_distance_family(base)) fail(Errc::KernelMismatch, "knn base must be a distance similarity");

    const ObservationKind kind = series.kind();
    SquareMatrix dist(n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = -similarity_evaluate(base_spec, kind, series[i], series[j]);
            dist(i, j) = d;
            dist(j, i) = d;
        }
    });

    SquareMatrix adjacency(n);
    parallel_for(n, [&](std::size_t i) {
        std::vector<std::size_t> others;
        others.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) others.push_back(j);
        }
        std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k), others.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (dist(i, a) != dist(i, b)) return dist(i, a) < dist(i, b);
                              return a < b;
                          });
        for (std::size_t r = 0; r < k; ++r) adjacency(i, others[r]) = 1.0;
    });
    return SimilarityMatrix::symmetrized(adjacency);
}

WeightMatrix build_weight_matrix(std::size_t n, const WeightSpec& spec) {
    if (n == 0) fail(Errc::BadWeightParam, "weight matrix needs n >= 1");
    std::vector<double> lags(n);
    for (std::size_t t = 0; t < n; ++t) {
        lags[t] = weight_evaluate(spec, t);
        if (!std::isfinite(lags[t])) {
            fail(Errc::BadWeightParam, "weight '" + to_string(spec) + "' is not finite at lag " + std::to_string(t));
        }
    }
    SquareMatrix values(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) values(i, j) = lags[i > j ? i - j : j - i];
    }
    return WeightMatrix(std::move(values), std::move(lags), spec);
}

}  // namespace wise
