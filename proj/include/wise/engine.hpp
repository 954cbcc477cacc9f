#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wise/kernels.hpp"
#include "wise/matrices.hpp"
#include "wise/moments.hpp"
#include "wise/series.hpp"
#include "wise/weights.hpp"

namespace wise {

enum class Method { Analytic, Permutation };
enum class Sidedness { TwoSided, Upper, Lower };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(Sidedness s) noexcept;
Method parse_method(std::string_view text);
Sidedness parse_sidedness(std::string_view text);

struct TestConfig {
    double alpha = 0.05;
    Method method = Method::Analytic;
    std::size_t permutations = 1000;  // used by Method::Permutation; >= 100
    std::uint64_t seed = 0;
    Sidedness sidedness = Sidedness::TwoSided;

    friend bool operator==(const TestConfig&, const TestConfig&) = default;
};

/// Throws InvalidValue for alpha outside (0, 1) or fewer than 100 permutations.
void validate(const TestConfig& config);

struct DiagnosticsReport {
    double ratio1 = 0.0;     // n max|S~|^2 / S~_{2+}
    double ratio2 = 0.0;     // S~_{1+}^2 / (n S~_{2+})
    double ratio3 = 0.0;     // S~_{3+} / (n S~_{2+})
    double alignment = 0.0;  // tr(W~^T S) / sqrt(n)
    std::vector<std::string> warnings;
};

struct TestResult {
    double z = 0.0;
    double e_z = 0.0;
    double var_z = 0.0;
    double z_g = 0.0;
    double p_value = 1.0;
    bool reject = false;
    double alpha = 0.05;
    Method method = Method::Analytic;
    Sidedness sidedness = Sidedness::TwoSided;
    std::size_t permutations = 0;
    DiagnosticsReport diagnostics;
};

/// Z = sum_{i,j} W[i][j] S[i][j].
double compute_z(const SimilarityMatrix& S, const WeightMatrix& W);

/// Z on the permuted series: sum_{i,j} W[i][j] S[perm[i]][perm[j]].
double compute_z_permuted(const SimilarityMatrix& S, const WeightMatrix& W, std::span<const std::size_t> perm);

struct NullMoments {
    double mean = 0.0;
    double variance = 0.0;
    /// Variance at or below the rounding floor; it is then reported as 0.
    bool degenerate = false;
    /// A slightly negative rounding residue was clamped to 0.
    bool clamped = false;
};

/// Exact mean and variance of Z under uniformly random relabelling of the
/// observations. Throws TooFewObservations for n < 4.
NullMoments permutation_moments(const MomentSummary& moments, std::size_t n);

/// The same two moments by visiting all n! permutations. Throws TooLarge
/// for n > 8.
NullMoments enumerate_moments(const SimilarityMatrix& S, const WeightMatrix& W);

/// Throws DegenerateVariance when the centered similarity field is zero.
DiagnosticsReport regularity_diagnostics(const SimilarityMatrix& S, const WeightMatrix& W);

enum class BoundScope {
    AllEntries,   // sort all n^2 entries of each matrix
    OffDiagonal,  // sort only the n(n-1) off-diagonal entries (tighter)
};

struct RearrangementBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Extremes of Z over relabellings obtained by pairing sorted weights with
/// sorted similarities in opposite and matching order.
RearrangementBounds rearrangement_bounds(const SimilarityMatrix& S, const WeightMatrix& W,
                                         BoundScope scope = BoundScope::AllEntries);

/// Standardized test on prebuilt matrices.
TestResult run_test(const SimilarityMatrix& S, const WeightMatrix& W, const TestConfig& config);

/// Builds S and W for the series and runs the test.
TestResult run_test(const ObservationSeries& series, const KernelSpec& kernel, const WeightSpec& weight,
                    const TestConfig& config);

struct MahalanobisResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<double> z;     // observed Z_k
    std::vector<double> mean;  // exact permutation means mu_k
    std::vector<double> covariance;  // m x m row-major, before regularization
    std::size_t permutations = 0;
};

/// Combines several weight specs into M = (Z - mu)^T Sigma^{-1} (Z - mu),
/// with Sigma the covariance of the Z_k over `permutations` shared random
/// relabellings and the p-value taken over the same draws.
MahalanobisResult mahalanobis_aggregate(const SimilarityMatrix& S, std::span<const WeightSpec> weights,
                                        std::size_t permutations, std::uint64_t seed);

MahalanobisResult mahalanobis_aggregate(const ObservationSeries& series, const KernelSpec& kernel,
                                        std::span<const WeightSpec> weights, std::size_t permutations,
                                        std::uint64_t seed);

}  // namespace wise
