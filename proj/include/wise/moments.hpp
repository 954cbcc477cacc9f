#pragma once

#include <vector>

#include "wise/matrices.hpp"

namespace wise {

/// Off-diagonal sums of W and S that determine the permutation-null mean
/// and variance of Z. All sums skip i == j.
///
///   w1 = sum_{i != j} w_ij        w_row[i] = sum_{j != i} w_ij
///   w2 = sum_{i != j} w_ij^2      w3 = sum_i w_row[i]^2
///
/// and likewise for S. The *_centered members are the same second moments
/// about the off-diagonal mean, accumulated directly from the entries:
///
///   w2_centered = w2 - w1^2 / (n (n - 1))
///   w3_centered = w3 - w1^2 / n
///
/// They are algebraically determined by the raw sums but lose far less
/// precision when the mean similarity is large compared to its spread.
struct MomentSummary {
    std::size_t n = 0;
    double w1 = 0.0, w2 = 0.0, w3 = 0.0;
    std::vector<double> w_row;
    double S1 = 0.0, S2 = 0.0, S3 = 0.0;
    std::vector<double> S_row;
    double w2_centered = 0.0, w3_centered = 0.0;
    double S2_centered = 0.0, S3_centered = 0.0;
};

/// Throws ShapeMismatch when S and W differ in size.
MomentSummary moment_summary(const SimilarityMatrix& S, const WeightMatrix& W);

/// Mean of the off-diagonal entries.
double off_diagonal_mean(const SquareMatrix& m);

}  // namespace wise
