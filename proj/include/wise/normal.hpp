#pragma once

namespace wise {

/// Standard normal CDF, via erfc.
[[nodiscard]] double normal_cdf(double x) noexcept;
/// Upper tail 1 - Phi(x), accurate far into the tail.
[[nodiscard]] double normal_sf(double x) noexcept;
/// Phi^{-1}(p) for p in (0, 1); +-infinity at the endpoints, NaN outside.
[[nodiscard]] double normal_quantile(double p) noexcept;

}  // namespace wise
