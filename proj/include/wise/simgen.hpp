#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wise/series.hpp"

namespace wise::sim {

enum class ModelFamily {
    IidNormal,       // N(0, I_p)
    IidNormalArCov,  // N(0, Sigma), Sigma_ij = rho^|i-j|
    IidT1,           // multivariate t with 1 degree of freedom
    IidLogNormal,    // exp(N(0, I_p)) elementwise
    Var1,            // X_t = A X_{t-1} + e_t
    VarLags,         // X_t = sum_k c_k X_{t-k} + e_t, scalar c_k
    Svar,            // X_t = A X_{t-l} + B X_{t-1} - A B X_{t-l-1} + e_t
    Garch,           // X_t = h_t o e_t, h_t^2 = b + A X_{t-1}^2 + B h_{t-1}^2, diagonal A, B
    Nma2,            // X_t = e_t o e_{t-1} o e_{t-2}
};

std::string_view to_string(ModelFamily family) noexcept;
ModelFamily parse_model_family(std::string_view name);

/// Coefficient matrix recipe. Scalar gives c I_p. Banded draws
/// A_ij ~ U(lo, hi) independently for |i - j| <= floor(p / band_divisor) and
/// sets the rest to 0.
struct CoefRecipe {
    enum class Kind { Scalar, Banded };
    Kind kind = Kind::Scalar;
    double scalar = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double band_divisor = 50.0;

    static CoefRecipe identity_times(double c) { return {Kind::Scalar, c, 0.0, 0.0, 50.0}; }
    static CoefRecipe banded(double lo, double hi, double band_divisor) {
        return {Kind::Banded, 0.0, lo, hi, band_divisor};
    }
    friend bool operator==(const CoefRecipe&, const CoefRecipe&) = default;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Range&, const Range&) = default;
};

/// Recursive models start from a zero state (GARCH: X_0 = 0, h_0^2 = b) and
/// discard `burn_in` steps. Random coefficient matrices are drawn from the
/// same stream as the innovations, before them, so one seed fixes both.
struct ModelSpec {
    ModelFamily family = ModelFamily::IidNormal;
    std::size_t n = 100;
    std::size_t p = 10;
    std::uint64_t seed = 0;
    std::size_t burn_in = 200;

    double cross_rho = 0.6;          // IidNormalArCov
    CoefRecipe a;                    // Var1, Svar (seasonal)
    CoefRecipe b;                    // Svar (lag 1)
    std::vector<double> lag_coefs;   // VarLags
    std::size_t season = 4;          // Svar
    double garch_intercept = 0.002;  // Garch b
    Range garch_a{0.0, 0.15};        // Garch A_ii ~ U(lo, hi)
    Range garch_b{0.0, 0.4};         // Garch B_ii ~ U(lo, hi)

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Throws BadModelParam.
void validate(const ModelSpec& spec);

/// Named simulation settings: setting1.1 - 1.4, setting2.1 - 2.3,
/// setting3.1 - 3.2, setting4, setting5, and var3 (X_t = 0.4 X_{t-1} +
/// 0.3 X_{t-2} + 0.2 X_{t-3} + e_t). The "setting" prefix is optional.
ModelSpec setting(std::string_view id, std::size_t n, std::size_t p, std::uint64_t seed);
std::vector<std::string> setting_names();

/// Deterministic in `spec`; n observations of kind vector(p).
ObservationSeries generate(const ModelSpec& spec);

}  // namespace wise::sim
