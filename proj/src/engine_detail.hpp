#pragma once

#include <span>
#include <vector>

#include "wise/matrices.hpp"

namespace wise::detail {

double pair_sum(const SquareMatrix& field, const SquareMatrix& W, std::span<const std::size_t> perm);
SquareMatrix centered_field(const SquareMatrix& S);
std::vector<std::size_t> identity_permutation(std::size_t n);
void check_sizes(const SimilarityMatrix& S, const WeightMatrix& W);
void check_length(std::size_t n);

}  // namespace wise::detail
