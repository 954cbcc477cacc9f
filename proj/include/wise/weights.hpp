#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace wise {

// Lag-weight families. Every family is shifted so that w(0) = 0 and the
// off-diagonal weights are nonpositive.

/// 1 / (1 + t^2) - 1, the default proximity weight.
struct DefaultCauchy {
    friend bool operator==(const DefaultCauchy&, const DefaultCauchy&) = default;
};
/// (1 + t)^(-beta) - 1, beta > 1.
struct Algebraic {
    double beta = 2.0;
    friend bool operator==(const Algebraic&, const Algebraic&) = default;
};
/// rho^t - 1, 0 < rho < 1.
struct Geometric {
    double rho = 0.5;
    friend bool operator==(const Geometric&, const Geometric&) = default;
};
/// exp(-(t / lambda)^2) - 1, lambda > 0.
struct ExpDecay {
    double lambda = 1.0;
    friend bool operator==(const ExpDecay&, const ExpDecay&) = default;
};
/// cos(2 pi t / l) - 1.
struct Cosine {
    double period = 1.0;
    friend bool operator==(const Cosine&, const Cosine&) = default;
};
/// |cos(pi t / l)| - 1.
struct AbsCosine {
    double period = 1.0;
    friend bool operator==(const AbsCosine&, const AbsCosine&) = default;
};
struct FourierTerm {
    double alpha = 0.5;
    double period = 1.0;
    friend bool operator==(const FourierTerm&, const FourierTerm&) = default;
};
/// sum_k alpha_k cos(2 pi t / l_k) - 1 with alpha_k in (0, 1) summing to 1.
struct Fourier {
    std::vector<FourierTerm> terms;
    friend bool operator==(const Fourier&, const Fourier&) = default;
};
/// alpha (t^(-beta) - 1) + (1 - alpha) (cos(2 pi t / l) - 1); the proximity
/// term is taken as 0 at t = 0.
struct Mixed {
    double alpha = 0.5;
    double beta = 1.0;
    double period = 1.0;
    friend bool operator==(const Mixed&, const Mixed&) = default;
};

using WeightFamily =
    std::variant<DefaultCauchy, Algebraic, Geometric, ExpDecay, Cosine, AbsCosine, Fourier, Mixed>;

/// A validated lag-weight family. Default-constructs to DefaultCauchy.
class WeightSpec {
public:
    WeightSpec() = default;
    /// Throws BadWeightParam when a parameter is out of range.
    WeightSpec(WeightFamily family);  // NOLINT(google-explicit-constructor)
    /// From a single family struct, e.g. WeightSpec w = Geometric{0.5}.
    template <class F>
        requires(!std::same_as<std::remove_cvref_t<F>, WeightFamily> &&
                 !std::same_as<std::remove_cvref_t<F>, WeightSpec> && std::is_constructible_v<WeightFamily, F>)
    WeightSpec(F&& family)  // NOLINT(google-explicit-constructor)
        : WeightSpec(WeightFamily(std::forward<F>(family))) {}

    [[nodiscard]] const WeightFamily& family() const noexcept { return family_; }
    [[nodiscard]] std::string_view name() const noexcept;

    friend bool operator==(const WeightSpec&, const WeightSpec&) = default;

private:
    WeightFamily family_;
};

[[nodiscard]] double weight_evaluate(const WeightSpec& spec, std::size_t lag);

/// Grammar:
///   default | default_cauchy
///   algebraic:beta=B     geometric:rho=R     exp_decay:lambda=L
///   cosine:l=L           abs_cosine:l=L
///   fourier:a1=A,l1=L,a2=A,l2=L[,...]
///   mixed:alpha=A,beta=B,l=L
[[nodiscard]] WeightSpec parse_weight_spec(std::string_view text);
[[nodiscard]] std::string to_string(const WeightSpec& spec);

}  // namespace wise
