#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "wise/series.hpp"

namespace wise {

enum class KernelFamily {
    NegL1,                 // -sum |x_k - y_k|
    NegL2,                 // -||x - y||_2
    NegSqL2Scaled,         // -sum (x_k - y_k)^2 / p
    Frobenius,             // -||x - y||_F, matrix observations only
    Gaussian,              // exp(-||x - y||^2 / (2 sigma^2))
    KnnAffinity,           // k-nearest-neighbour graph, matrix level only
    FunctionalL2,          // -(trapezoidal integral of (x - y)^2)^(1/2) on [0, 1]
    Wasserstein1Quantile,  // -mean |x_k - y_k| over the quantile grid
};

/// A similarity measure S(x, y) together with its parameters.
struct KernelSpec {
    KernelFamily family = KernelFamily::NegL1;
    double sigma = 1.0;                         // gaussian bandwidth
    std::size_t k = 1;                          // knn neighbour count
    KernelFamily base = KernelFamily::NegL2;    // knn distance

    static KernelSpec neg_l1() { return {KernelFamily::NegL1}; }
    static KernelSpec neg_l2() { return {KernelFamily::NegL2}; }
    static KernelSpec neg_sq_l2_scaled() { return {KernelFamily::NegSqL2Scaled}; }
    static KernelSpec frobenius() { return {KernelFamily::Frobenius}; }
    static KernelSpec gaussian(double sigma);
    static KernelSpec knn(std::size_t k, KernelFamily base = KernelFamily::NegL2);
    static KernelSpec functional_l2() { return {KernelFamily::FunctionalL2}; }
    static KernelSpec wasserstein1_quantile() { return {KernelFamily::Wasserstein1Quantile}; }

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// True for the negative-distance families (S(x, x) = 0, S <= 0).
[[nodiscard]] bool is_distance_family(KernelFamily family) noexcept;

/// True when the family can be applied to observations of `kind`.
[[nodiscard]] bool kernel_accepts(const KernelSpec& spec, const ObservationKind& kind) noexcept;

/// Throws KernelMismatch or BadWeightParam if `spec` cannot be used on `kind`.
void check_kernel(const KernelSpec& spec, const ObservationKind& kind);

/// Pointwise similarity. KnnAffinity has no pointwise form and is rejected
/// with KernelMismatch; use knn_affinity_matrix().
[[nodiscard]] double similarity_evaluate(const KernelSpec& spec, const ObservationKind& kind,
                                         std::span<const double> x, std::span<const double> y);

/// Grammar: `family[:key=value,...]`, e.g. `neg_l1`, `gaussian:sigma=2.5`,
/// `knn:k=5,base=neg_l2`.
[[nodiscard]] KernelSpec parse_kernel_spec(std::string_view text);
[[nodiscard]] std::string to_string(const KernelSpec& spec);
[[nodiscard]] std::string_view family_name(KernelFamily family) noexcept;

}  // namespace wise
