#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>

#include "engine_detail.hpp"
#include "wise/engine.hpp"
#include "wise/error.hpp"
#include "wise/parallel.hpp"
#include "wise/random.hpp"

namespace wise {

MahalanobisResult mahalanobis_aggregate(const SimilarityMatrix& S, std::span<const WeightSpec> weights,
                                        std::size_t permutations, std::uint64_t seed) {
    const std::size_t n = S.size();
    const std::size_t m = weights.size();
    detail::check_length(n);
    if (m < 2) fail(Errc::InvalidValue, "Mahalanobis aggregation needs at least 2 weight specs");
    if (permutations < 500) {
        fail(Errc::InvalidValue, "Mahalanobis aggregation needs at least 500 permutations, got " +
                                     std::to_string(permutations));
    }

    std::vector<WeightMatrix> W;
    W.reserve(m);
    for (const auto& spec : weights) W.push_back(build_weight_matrix(n, spec));

    MahalanobisResult out;
    out.permutations = permutations;
    const SquareMatrix centered = detail::centered_field(S.values());
    const auto id = detail::identity_permutation(n);
    Eigen::VectorXd observed(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
        const NullMoments null = permutation_moments(moment_summary(S, W[k]), n);
        if (null.degenerate) {
            fail(Errc::DegenerateVariance, "permutation variance is zero for weight '" + to_string(weights[k]) + "'");
        }
        out.z.push_back(compute_z(S, W[k]));
        out.mean.push_back(null.mean);
        observed(static_cast<Eigen::Index>(k)) = detail::pair_sum(centered, W[k].values(), id);
    }

    // One shared relabelling per draw, applied to every weight spec.
    Eigen::MatrixXd draws(static_cast<Eigen::Index>(permutations), static_cast<Eigen::Index>(m));
    parallel_for(permutations, [&](std::size_t b) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(b)}));
        const auto perm = random_permutation(n, rng);
        for (std::size_t k = 0; k < m; ++k) {
            draws(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(k)) =
                detail::pair_sum(centered, W[k].values(), perm);
        }
    });

    const Eigen::RowVectorXd mean = draws.colwise().mean();
    const Eigen::MatrixXd dev = draws.rowwise() - mean;
    Eigen::MatrixXd cov = (dev.transpose() * dev) / static_cast<double>(permutations - 1);
    out.covariance.assign(cov.data(), cov.data() + cov.size());

    const double trace = cov.trace();
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        fail(Errc::DegenerateVariance, "permutation covariance of the weighted statistics is zero");
    }
    cov.diagonal().array() += 1e-8 * trace / static_cast<double>(m);
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        fail(Errc::DegenerateVariance, "permutation covariance is singular after regularization");
    }

    auto quadratic = [&](const Eigen::VectorXd& d) { return d.dot(llt.solve(d)); };
    out.statistic = quadratic(observed);
    std::size_t extreme = 0;
    const double slack = 1e-12 * std::abs(out.statistic);
    for (Eigen::Index b = 0; b < draws.rows(); ++b) {
        if (quadratic(draws.row(b).transpose()) >= out.statistic - slack) ++extreme;
    }
    out.p_value = static_cast<double>(1 + extreme) / static_cast<double>(permutations + 1);
    return out;
}

MahalanobisResult mahalanobis_aggregate(const ObservationSeries& series, const KernelSpec& kernel,
                                        std::span<const WeightSpec> weights, std::size_t permutations,
                                        std::uint64_t seed) {
    detail::check_length(series.size());
    return mahalanobis_aggregate(build_similarity_matrix(series, kernel), weights, permutations, seed);
}

}  // namespace wise
