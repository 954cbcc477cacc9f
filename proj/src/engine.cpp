#include "wise/engine.hpp"

#include "engine_detail.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wise/error.hpp"
#include "wise/normal.hpp"
#include "wise/parallel.hpp"
#include "wise/random.hpp"
#include "wise/spec_grammar.hpp"
#include "wise/summation.hpp"

namespace wise {
namespace detail {

// 2 * sum_{i<j} W[i][j] field[perm[i]][perm[j]]; both matrices symmetric.
double pair_sum(const SquareMatrix& field, const SquareMatrix& W, std::span<const std::size_t> perm) {
    const std::size_t n = W.size();
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        const auto wrow = W.row(i);
        const auto frow = field.row(perm[i]);
        for (std::size_t j = i + 1; j < n; ++j) acc.add(wrow[j] * frow[perm[j]]);
    }
    return 2.0 * acc.value();
}

// S - mean off the diagonal, 0 on it.
SquareMatrix centered_field(const SquareMatrix& S) {
    const std::size_t n = S.size();
    const double mean = off_diagonal_mean(S);
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) out(i, j) = S(i, j) - mean;
        }
    }
    return out;
}

std::vector<std::size_t> identity_permutation(std::size_t n) {
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return id;
}

void check_sizes(const SimilarityMatrix& S, const WeightMatrix& W) {
    if (S.size() != W.size()) {
        fail(Errc::ShapeMismatch, "similarity matrix has size " + std::to_string(S.size()) +
                                      ", weight matrix has size " + std::to_string(W.size()));
    }
}

void check_length(std::size_t n) {
    if (n < kMinObservations) {
        fail(Errc::TooFewObservations, "the test needs at least " + std::to_string(kMinObservations) +
                                           " observations, got " + std::to_string(n));
    }
}

}  // namespace detail

using detail::check_length;
using detail::check_sizes;

std::string_view to_string(Method m) noexcept {
    return m == Method::Analytic ? "analytic" : "permutation";
}

std::string_view to_string(Sidedness s) noexcept {
    switch (s) {
        case Sidedness::TwoSided: return "two_sided";
        case Sidedness::Upper: return "upper";
        case Sidedness::Lower: return "lower";
    }
    return "two_sided";
}

Method parse_method(std::string_view text) {
    if (text == "analytic") return Method::Analytic;
    if (text == "perm" || text == "permutation") return Method::Permutation;
    fail(Errc::ParseError, "unknown method '" + std::string(text) + "' (expected analytic or perm)");
}

Sidedness parse_sidedness(std::string_view text) {
    if (text == "two_sided" || text == "two-sided") return Sidedness::TwoSided;
    if (text == "upper") return Sidedness::Upper;
    if (text == "lower") return Sidedness::Lower;
    fail(Errc::ParseError, "unknown sidedness '" + std::string(text) + "'");
}

void validate(const TestConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        fail(Errc::InvalidValue, "alpha must lie in (0, 1), got " + detail::format_real(config.alpha));
    }
    if (config.method == Method::Permutation && config.permutations < 100) {
        fail(Errc::InvalidValue, "permutation method needs at least 100 permutations, got " +
                                     std::to_string(config.permutations));
    }
}

double compute_z(const SimilarityMatrix& S, const WeightMatrix& W) {
    check_sizes(S, W);
    return detail::pair_sum(S.values(), W.values(), detail::identity_permutation(S.size()));
}

double compute_z_permuted(const SimilarityMatrix& S, const WeightMatrix& W, std::span<const std::size_t> perm) {
    check_sizes(S, W);
    if (perm.size() != S.size()) fail(Errc::ShapeMismatch, "permutation length differs from matrix size");
    return detail::pair_sum(S.values(), W.values(), perm);
}

NullMoments permutation_moments(const MomentSummary& m, std::size_t n) {
    check_length(n);
    if (m.n != n || m.w_row.size() != n || m.S_row.size() != n) {
        fail(Errc::ShapeMismatch, "moment summary does not describe n = " + std::to_string(n));
    }
    const double nd = static_cast<double>(n);
    NullMoments out;
    out.mean = m.w1 * m.S1 / (nd * (nd - 1.0));

    const double w_rows = m.w3_centered;  // w3 - w1^2 / n
    const double w_pairs = m.w2_centered; // w2 - w1^2 / (n (n - 1))
    const double s_rows = m.S3_centered;
    const double s_pairs = m.S2_centered;

    const double d4 = nd * (nd - 1.0) * (nd - 2.0) * (nd - 3.0);
    const double d3 = nd * (nd - 2.0) * (nd - 3.0);
    const double var = 4.0 * (nd + 1.0) * w_rows * s_rows / d4 + 2.0 * w_pairs * s_pairs / (nd * (nd - 3.0)) -
                       4.0 * w_pairs * s_rows / d3 - 4.0 * w_rows * s_pairs / d3;

    // Magnitude of the individual terms; rounding error is relative to it.
    const double scale = std::abs(m.w2) * std::abs(m.S2) / (nd * (nd - 1.0));
    if (var < -1e-9 * scale) {
        fail(Errc::DegenerateVariance, "permutation variance is negative (" + detail::format_real(var) +
                                           "); the moment summary is inconsistent");
    }
    if (var < 0.0) out.clamped = true;
    if (var <= 1e-12 * scale) {
        out.degenerate = true;
        out.variance = 0.0;
    } else {
        out.variance = var;
    }
    return out;
}

NullMoments enumerate_moments(const SimilarityMatrix& S, const WeightMatrix& W) {
    check_sizes(S, W);
    const std::size_t n = S.size();
    if (n > 8) fail(Errc::TooLarge, "enumeration is limited to n <= 8, got " + std::to_string(n));
    std::vector<std::size_t> perm = detail::identity_permutation(n);
    // Welford keeps the variance exactly 0 when every value is identical.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;
    do {
        const double z = detail::pair_sum(S.values(), W.values(), perm);
        ++count;
        const double delta = z - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (z - mean);
    } while (std::next_permutation(perm.begin(), perm.end()));
    NullMoments out;
    out.mean = mean;
    out.variance = m2 / static_cast<double>(count);
    out.degenerate = out.variance == 0.0;
    return out;
}

DiagnosticsReport regularity_diagnostics(const SimilarityMatrix& S, const WeightMatrix& W) {
    check_sizes(S, W);
    const std::size_t n = S.size();
    check_length(n);
    const SquareMatrix centered = detail::centered_field(S.values());

    double max_abs = 0.0;
    double max_row = 0.0;
    CompensatedSum sum_sq;
    CompensatedSum sum_row_sq;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum row;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = std::abs(centered(i, j));
            max_abs = std::max(max_abs, v);
            row.add(v);
            sum_sq.add(v * v);
        }
        max_row = std::max(max_row, row.value());
        sum_row_sq.add(row.value() * row.value());
    }
    const double s2 = sum_sq.value();
    if (!(s2 > 0.0)) {
        fail(Errc::DegenerateVariance, "centered similarity field is identically zero");
    }
    const double nd = static_cast<double>(n);
    DiagnosticsReport out;
    out.ratio1 = nd * max_abs * max_abs / s2;
    out.ratio2 = max_row * max_row / (nd * s2);
    out.ratio3 = sum_row_sq.value() / (nd * s2);
    // tr(W~^T S) = sum_{i != j} (w_ij - w_bar) S_ij = sum_{i != j} w_ij (S_ij - S_bar);
    // the second form avoids cancelling against a large mean similarity.
    out.alignment = detail::pair_sum(centered, W.values(), detail::identity_permutation(n)) / std::sqrt(nd);

    const double ratios[] = {out.ratio1, out.ratio2, out.ratio3};
    for (int k = 0; k < 3; ++k) {
        if (ratios[k] > 1.0) {
            out.warnings.push_back("ratio" + std::to_string(k + 1) + " = " + detail::format_real(ratios[k]) +
                                   " exceeds 1; the normal approximation may be inaccurate");
        }
    }
    return out;
}

RearrangementBounds rearrangement_bounds(const SimilarityMatrix& S, const WeightMatrix& W, BoundScope scope) {
    check_sizes(S, W);
    const std::size_t n = S.size();
    std::vector<double> s;
    std::vector<double> w;
    s.reserve(n * n);
    w.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (scope == BoundScope::OffDiagonal && i == j) continue;
            s.push_back(S(i, j));
            w.push_back(W(i, j));
        }
    }
    std::sort(s.begin(), s.end());
    std::sort(w.begin(), w.end());
    CompensatedSum lower;
    CompensatedSum upper;
    const std::size_t len = s.size();
    for (std::size_t k = 0; k < len; ++k) {
        lower.add(w[k] * s[len - 1 - k]);
        upper.add(w[k] * s[k]);
    }
    return {lower.value(), upper.value()};
}

namespace {

double tail_probability(double z_g, Sidedness sidedness) {
    switch (sidedness) {
        case Sidedness::TwoSided: return std::min(1.0, 2.0 * normal_sf(std::abs(z_g)));
        case Sidedness::Upper: return normal_sf(z_g);
        case Sidedness::Lower: return normal_cdf(z_g);
    }
    return 1.0;
}

// Ties within rounding of the observed value count as at least as extreme.
bool as_extreme(double dev, double observed, Sidedness sidedness) {
    const double slack = 1e-12 * std::abs(observed);
    switch (sidedness) {
        case Sidedness::TwoSided: return std::abs(dev) >= std::abs(observed) - slack;
        case Sidedness::Upper: return dev >= observed - slack;
        case Sidedness::Lower: return dev <= observed + slack;
    }
    return false;
}

}  // namespace

TestResult run_test(const SimilarityMatrix& S, const WeightMatrix& W, const TestConfig& config) {
    validate(config);
    check_sizes(S, W);
    const std::size_t n = S.size();
    check_length(n);

    TestResult r;
    r.alpha = config.alpha;
    r.method = config.method;
    r.sidedness = config.sidedness;
    r.permutations = config.method == Method::Permutation ? config.permutations : 0;

    const MomentSummary moments = moment_summary(S, W);
    const NullMoments null = permutation_moments(moments, n);
    r.z = compute_z(S, W);
    r.e_z = null.mean;
    r.var_z = null.variance;

    try {
        r.diagnostics = regularity_diagnostics(S, W);
    } catch (const Error& e) {
        if (e.code() != Errc::DegenerateVariance) throw;
        r.diagnostics = DiagnosticsReport{};
        r.diagnostics.warnings.emplace_back("centered similarity field is zero; regularity ratios undefined");
    }
    if (null.clamped) r.diagnostics.warnings.emplace_back("negative rounding residue in var(Z) clamped to 0");

    if (null.degenerate) {
        r.z_g = 0.0;
        r.p_value = 1.0;
        r.reject = false;
        r.diagnostics.warnings.emplace_back(
            "DegenerateVariance: permutation variance of Z is zero; no evidence against independence");
        return r;
    }

    const SquareMatrix centered = detail::centered_field(S.values());
    const auto id = detail::identity_permutation(n);
    // Z - E(Z) accumulated from the centered field.
    const double deviation = detail::pair_sum(centered, W.values(), id);
    r.z_g = deviation / std::sqrt(null.variance);

    if (config.method == Method::Analytic) {
        r.p_value = tail_probability(r.z_g, config.sidedness);
    } else {
        const std::size_t B = config.permutations;
        std::vector<double> draws(B);
        parallel_for(B, [&](std::size_t b) {
            Rng rng(derive_seed(config.seed, {static_cast<std::uint64_t>(b)}));
            const auto perm = random_permutation(n, rng);
            draws[b] = detail::pair_sum(centered, W.values(), perm);
        });
        std::size_t extreme = 0;
        for (double d : draws) extreme += as_extreme(d, deviation, config.sidedness) ? 1 : 0;
        r.p_value = static_cast<double>(1 + extreme) / static_cast<double>(B + 1);
    }
    r.reject = r.p_value < config.alpha;
    return r;
}

TestResult run_test(const ObservationSeries& series, const KernelSpec& kernel, const WeightSpec& weight,
                    const TestConfig& config) {
    validate(config);
    check_length(series.size());
    const SimilarityMatrix S = build_similarity_matrix(series, kernel);
    const WeightMatrix W = build_weight_matrix(series.size(), weight);
    return run_test(S, W, config);
}

}  // namespace wise
