#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "wise/matrices.hpp"

namespace wise::heatmap {

/// Plot-ready CSV: n lines of n comma-separated values, no header.
void write_matrix_csv(std::ostream& out, const SimilarityMatrix& S);

/// ASCII P2 greyscale image, one pixel per entry, maxval 255. Pixel values
/// are scaled linearly from the off-diagonal [min, max] to [0, 255]; the
/// diagonal is clamped into that range. A constant field renders as 0.
void write_pgm(std::ostream& out, const SimilarityMatrix& S);

/// Mean of S[i][i+h] for h = 0 .. n-1.
std::vector<double> lag_profile(const SimilarityMatrix& S);

struct LagContrast {
    double near_mean = 0.0;  // lags 1 .. near_max
    double far_mean = 0.0;   // lags > far_min
    std::size_t near_count = 0;
    std::size_t far_count = 0;
    /// sqrt(var_near / near_count + var_far / far_count), treating entries
    /// as independent. Only a scale reference: entries sharing an index are
    /// correlated.
    double naive_se = 0.0;
};

/// Near-diagonal against far-lag mean over the upper triangle. With
/// `absolute` the means are of |S_ij|. Throws InvalidValue if either band is
/// empty.
LagContrast lag_contrast(const SimilarityMatrix& S, std::size_t near_max = 2, std::size_t far_min = 10,
                         bool absolute = false);

}  // namespace wise::heatmap
