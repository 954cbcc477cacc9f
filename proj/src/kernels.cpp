#include "wise/kernels.hpp"

#include <cmath>

#include "wise/error.hpp"
#include "wise/spec_grammar.hpp"

namespace wise {
namespace {

using Tag = ObservationKind::Tag;

double sum_abs_diff(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += std::abs(x[k] - y[k]);
    return s;
}

double sum_sq_diff(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        s += d * d;
    }
    return s;
}

// Trapezoidal rule on the uniform grid k / (G - 1) of [0, 1].
double trapezoid_sq_diff(std::span<const double> x, std::span<const double> y) {
    const std::size_t g = x.size();
    if (g == 1) {
        const double d = x[0] - y[0];
        return d * d;
    }
    double interior = 0.0;
    for (std::size_t k = 1; k + 1 < g; ++k) {
        const double d = x[k] - y[k];
        interior += d * d;
    }
    const double d0 = x[0] - y[0];
    const double d1 = x[g - 1] - y[g - 1];
    return (interior + 0.5 * (d0 * d0 + d1 * d1)) / static_cast<double>(g - 1);
}

KernelFamily parse_family(std::string_view name) {
    if (name == "neg_l1" || name == "l1") return KernelFamily::NegL1;
    if (name == "neg_l2" || name == "l2") return KernelFamily::NegL2;
    if (name == "neg_sq_l2_scaled") return KernelFamily::NegSqL2Scaled;
    if (name == "frobenius") return KernelFamily::Frobenius;
    if (name == "gaussian") return KernelFamily::Gaussian;
    if (name == "knn" || name == "knn_affinity") return KernelFamily::KnnAffinity;
    if (name == "functional_l2") return KernelFamily::FunctionalL2;
    if (name == "wasserstein1_quantile" || name == "wasserstein1") return KernelFamily::Wasserstein1Quantile;
    fail(Errc::ParseError, "unknown similarity '" + std::string(name) + "'");
}

}  // namespace

KernelSpec KernelSpec::gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        fail(Errc::BadWeightParam, "gaussian sigma must be positive, got " + detail::format_real(sigma));
    }
    KernelSpec s{KernelFamily::Gaussian};
    s.sigma = sigma;
    return s;
}

KernelSpec KernelSpec::knn(std::size_t k, KernelFamily base) {
    if (k < 1) fail(Errc::BadWeightParam, "knn k must be at least 1");
    if (!is_distance_family(base)) {
        fail(Errc::KernelMismatch, "knn base must be a distance similarity, got " + std::string(family_name(base)));
    }
    KernelSpec s{KernelFamily::KnnAffinity};
    s.k = k;
    s.base = base;
    return s;
}

bool is_distance_family(KernelFamily family) noexcept {
    switch (family) {
        case KernelFamily::NegL1:
        case KernelFamily::NegL2:
        case KernelFamily::NegSqL2Scaled:
        case KernelFamily::Frobenius:
        case KernelFamily::FunctionalL2:
        case KernelFamily::Wasserstein1Quantile: return true;
        case KernelFamily::Gaussian:
        case KernelFamily::KnnAffinity: return false;
    }
    return false;
}

namespace {

bool family_accepts(KernelFamily family, Tag tag) noexcept {
    switch (family) {
        case KernelFamily::NegL1:
        case KernelFamily::NegL2:
        case KernelFamily::NegSqL2Scaled:
        case KernelFamily::Gaussian: return tag == Tag::Vector || tag == Tag::Matrix;
        case KernelFamily::Frobenius: return tag == Tag::Matrix;
        case KernelFamily::FunctionalL2: return tag == Tag::Function;
        case KernelFamily::Wasserstein1Quantile: return tag == Tag::Quantile;
        case KernelFamily::KnnAffinity: return false;
    }
    return false;
}

}  // namespace

bool kernel_accepts(const KernelSpec& spec, const ObservationKind& kind) noexcept {
    if (spec.family == KernelFamily::KnnAffinity) {
        return is_distance_family(spec.base) && family_accepts(spec.base, kind.tag);
    }
    return family_accepts(spec.family, kind.tag);
}

void check_kernel(const KernelSpec& spec, const ObservationKind& kind) {
    if (!kernel_accepts(spec, kind)) {
        fail(Errc::KernelMismatch, "similarity '" + to_string(spec) + "' does not apply to " + to_string(kind) +
                                       " observations");
    }
    if (spec.family == KernelFamily::Gaussian && !(spec.sigma > 0.0)) {
        fail(Errc::BadWeightParam, "gaussian sigma must be positive");
    }
    if (spec.family == KernelFamily::KnnAffinity && spec.k < 1) {
        fail(Errc::BadWeightParam, "knn k must be at least 1");
    }
}

double similarity_evaluate(const KernelSpec& spec, const ObservationKind& kind, std::span<const double> x,
                           std::span<const double> y) {
    check_kernel(spec, kind);
    if (x.size() != kind.dim() || y.size() != kind.dim()) {
        fail(Errc::ShapeMismatch, "observation size does not match " + to_string(kind));
    }
    switch (spec.family) {
        case KernelFamily::NegL1: return -sum_abs_diff(x, y);
        case KernelFamily::NegL2:
        case KernelFamily::Frobenius: return -std::sqrt(sum_sq_diff(x, y));
        case KernelFamily::NegSqL2Scaled: return -sum_sq_diff(x, y) / static_cast<double>(x.size());
        case KernelFamily::Gaussian: return std::exp(-sum_sq_diff(x, y) / (2.0 * spec.sigma * spec.sigma));
        case KernelFamily::FunctionalL2: return -std::sqrt(trapezoid_sq_diff(x, y));
        case KernelFamily::Wasserstein1Quantile: return -sum_abs_diff(x, y) / static_cast<double>(x.size());
        case KernelFamily::KnnAffinity: break;
    }
    fail(Errc::KernelMismatch, "knn affinity is only defined for a whole series");
}

std::string_view family_name(KernelFamily family) noexcept {
    switch (family) {
        case KernelFamily::NegL1: return "neg_l1";
        case KernelFamily::NegL2: return "neg_l2";
        case KernelFamily::NegSqL2Scaled: return "neg_sq_l2_scaled";
        case KernelFamily::Frobenius: return "frobenius";
        case KernelFamily::Gaussian: return "gaussian";
        case KernelFamily::KnnAffinity: return "knn";
        case KernelFamily::FunctionalL2: return "functional_l2";
        case KernelFamily::Wasserstein1Quantile: return "wasserstein1_quantile";
    }
    return "unknown";
}

KernelSpec parse_kernel_spec(std::string_view text) {
    const auto parsed = detail::split_spec(text);
    const KernelFamily family = parse_family(parsed.family);
    switch (family) {
        case KernelFamily::Gaussian: {
            double sigma = 1.0;
            bool seen = false;
            for (const auto& [k, v] : parsed.params) {
                if (k != "sigma") fail(Errc::ParseError, "gaussian has no parameter '" + k + "'");
                sigma = detail::parse_real(k, v);
                seen = true;
            }
            if (!seen) fail(Errc::ParseError, "gaussian requires sigma=<value>");
            return KernelSpec::gaussian(sigma);
        }
        case KernelFamily::KnnAffinity: {
            std::size_t k = 0;
            KernelFamily base = KernelFamily::NegL2;
            bool seen_k = false;
            for (const auto& [key, v] : parsed.params) {
                if (key == "k") {
                    k = detail::parse_count(key, v);
                    seen_k = true;
                } else if (key == "base") {
                    base = parse_family(v);
                } else {
                    fail(Errc::ParseError, "knn has no parameter '" + key + "'");
                }
            }
            if (!seen_k) fail(Errc::ParseError, "knn requires k=<count>");
            return KernelSpec::knn(k, base);
        }
        default:
            if (!parsed.params.empty()) {
                fail(Errc::ParseError, "similarity '" + parsed.family + "' takes no parameters");
            }
            return KernelSpec{family};
    }
}

std::string to_string(const KernelSpec& spec) {
    std::string out(family_name(spec.family));
    if (spec.family == KernelFamily::Gaussian) out += ":sigma=" + detail::format_real(spec.sigma);
    if (spec.family == KernelFamily::KnnAffinity) {
        out += ":k=" + std::to_string(spec.k) + ",base=" + std::string(family_name(spec.base));
    }
    return out;
}

}  // namespace wise
