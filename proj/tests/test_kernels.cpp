#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wise/kernels.hpp"
#include "wise/matrices.hpp"

using namespace wise;

namespace {
const std::vector<double> origin{0.0, 0.0};
const std::vector<double> p34{3.0, 4.0};

double eval(const KernelSpec& k, const ObservationKind& kind, const std::vector<double>& x,
            const std::vector<double>& y) {
    return similarity_evaluate(k, kind, x, y);
}
}  // namespace

TEST(Kernels, DistanceFamilies) {
    const auto v2 = ObservationKind::vector(2);
    EXPECT_DOUBLE_EQ(eval(KernelSpec::neg_l1(), v2, origin, p34), -7.0);
    EXPECT_DOUBLE_EQ(eval(KernelSpec::neg_l2(), v2, origin, p34), -5.0);
    EXPECT_DOUBLE_EQ(eval(KernelSpec::neg_sq_l2_scaled(), v2, origin, p34), -12.5);
    EXPECT_DOUBLE_EQ(eval(KernelSpec::frobenius(), ObservationKind::matrix(1, 2), origin, p34), -5.0);
    EXPECT_DOUBLE_EQ(eval(KernelSpec::neg_l1(), v2, p34, p34), 0.0);
}

TEST(Kernels, Gaussian) {
    const auto v2 = ObservationKind::vector(2);
    EXPECT_DOUBLE_EQ(eval(KernelSpec::gaussian(1.0), v2, origin, p34), std::exp(-12.5));
    EXPECT_DOUBLE_EQ(eval(KernelSpec::gaussian(5.0), v2, origin, p34), std::exp(-0.5));
    EXPECT_DOUBLE_EQ(eval(KernelSpec::gaussian(2.0), v2, p34, p34), 1.0);
    EXPECT_ERRC(KernelSpec::gaussian(0.0), Errc::BadWeightParam);
    EXPECT_ERRC(KernelSpec::gaussian(-1.0), Errc::BadWeightParam);
}

TEST(Kernels, FunctionalAndQuantile) {
    const std::vector<double> zero{0, 0, 0};
    const std::vector<double> ramp{0, 1, 2};
    // Trapezoid on the grid {0, 1/2, 1}: (0/2 + 1 + 4/2) / 2 = 1.5.
    EXPECT_DOUBLE_EQ(eval(KernelSpec::functional_l2(), ObservationKind::function(3), zero, ramp), -std::sqrt(1.5));
    EXPECT_DOUBLE_EQ(eval(KernelSpec::wasserstein1_quantile(), ObservationKind::quantile(3), zero, ramp), -1.0);
}

TEST(Kernels, KindCompatibility) {
    EXPECT_TRUE(kernel_accepts(KernelSpec::neg_l1(), ObservationKind::matrix(2, 2)));
    EXPECT_FALSE(kernel_accepts(KernelSpec::frobenius(), ObservationKind::vector(4)));
    EXPECT_FALSE(kernel_accepts(KernelSpec::wasserstein1_quantile(), ObservationKind::vector(4)));
    EXPECT_FALSE(kernel_accepts(KernelSpec::functional_l2(), ObservationKind::quantile(4)));
    EXPECT_ERRC(check_kernel(KernelSpec::frobenius(), ObservationKind::vector(4)), Errc::KernelMismatch);
    EXPECT_ERRC(KernelSpec::knn(2, KernelFamily::Gaussian), Errc::KernelMismatch);
    EXPECT_ERRC(KernelSpec::knn(0), Errc::BadWeightParam);
}

TEST(Kernels, ParseAndPrint) {
    EXPECT_EQ(parse_kernel_spec("neg_l1"), KernelSpec::neg_l1());
    EXPECT_EQ(parse_kernel_spec("gaussian:sigma=2.5"), KernelSpec::gaussian(2.5));
    EXPECT_EQ(parse_kernel_spec("knn:k=5,base=neg_l1"), KernelSpec::knn(5, KernelFamily::NegL1));
    for (const auto& k : {KernelSpec::neg_l2(), KernelSpec::gaussian(0.3), KernelSpec::knn(3),
                          KernelSpec::wasserstein1_quantile(), KernelSpec::functional_l2()}) {
        EXPECT_EQ(parse_kernel_spec(to_string(k)), k) << to_string(k);
    }
    EXPECT_ERRC(parse_kernel_spec("cosine_sim"), Errc::ParseError);
    EXPECT_ERRC(parse_kernel_spec("gaussian"), Errc::ParseError);
    EXPECT_ERRC(parse_kernel_spec("gaussian:sigma=-1"), Errc::BadWeightParam);
    EXPECT_ERRC(parse_kernel_spec("neg_l1:sigma=1"), Errc::ParseError);
}

TEST(SimilarityMatrix, SymmetrizedAndChecked) {
    SquareMatrix raw(2);
    raw(0, 1) = 1.0;
    raw(1, 0) = 3.0;
    const auto s = SimilarityMatrix::symmetrized(raw);
    EXPECT_EQ(s(0, 1), 2.0);
    EXPECT_EQ(s(1, 0), 2.0);
    EXPECT_ERRC(SimilarityMatrix::from_symmetric(raw), Errc::ShapeMismatch);
    raw(0, 1) = raw(1, 0) = NAN;
    EXPECT_ERRC(SimilarityMatrix::from_symmetric(raw), Errc::InvalidValue);
}

TEST(SimilarityMatrix, BuiltFromSeriesMatchesPointwise) {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd;
    std::vector<double> data(9 * 3);
    for (auto& x : data) x = nd(gen);
    const ObservationSeries series(ObservationKind::vector(3), 9, data);
    for (const auto& k : {KernelSpec::neg_l1(), KernelSpec::neg_l2(), KernelSpec::gaussian(1.3)}) {
        const auto S = build_similarity_matrix(series, k);
        for (std::size_t i = 0; i < 9; ++i) {
            for (std::size_t j = 0; j < 9; ++j) {
                EXPECT_DOUBLE_EQ(S(i, j), similarity_evaluate(k, series.kind(), series[i], series[j]));
                EXPECT_EQ(S(i, j), S(j, i));
            }
        }
    }
}

TEST(SimilarityMatrix, RawKernelIsSymmetrized) {
    const ObservationSeries series(ObservationKind::vector(1), 3, {1.0, 2.0, 4.0});
    const auto S = build_similarity_matrix(series, [](std::span<const double> x, std::span<const double> y) {
        return x[0] - 2 * y[0];
    });
    // (x - 2y + y - 2x) / 2 = -(x + y) / 2
    EXPECT_DOUBLE_EQ(S(0, 2), -2.5);
    EXPECT_DOUBLE_EQ(S(2, 0), -2.5);
}

TEST(SimilarityMatrix, KindMismatchIsRejected) {
    const ObservationSeries series(ObservationKind::vector(2), 4, std::vector<double>(8, 0.0));
    EXPECT_ERRC(build_similarity_matrix(series, KernelSpec::frobenius()), Errc::KernelMismatch);
}

TEST(Knn, AffinityOnALine) {
    const ObservationSeries series(ObservationKind::vector(1), 4, {0.0, 1.0, 3.0, 10.0});
    const auto S = build_similarity_matrix(series, KernelSpec::knn(1));
    // Nearest neighbours: 0->1, 1->0, 3->1, 10->3.
    EXPECT_EQ(S(0, 1), 1.0);
    EXPECT_EQ(S(1, 2), 0.5);
    EXPECT_EQ(S(2, 3), 0.5);
    EXPECT_EQ(S(0, 2), 0.0);
    EXPECT_EQ(S(0, 3), 0.0);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(S(i, i), 0.0);
}

TEST(Knn, TiesGoToTheEarlierIndex) {
    const ObservationSeries series(ObservationKind::vector(1), 3, {0.0, 1.0, 2.0});
    const auto S = knn_affinity_matrix(series, 1, KernelFamily::NegL1);
    EXPECT_EQ(S(1, 0), 1.0);  // 0 and 2 are both at distance 1 from 1
    EXPECT_EQ(S(1, 2), 0.5);
    EXPECT_ERRC(knn_affinity_matrix(series, 3, KernelFamily::NegL1), Errc::BadWeightParam);
}

TEST(Knn, DegreesSumToNk) {
    std::mt19937_64 gen(9);
    std::normal_distribution<double> nd;
    std::vector<double> data(30 * 4);
    for (auto& x : data) x = nd(gen);
    const ObservationSeries series(ObservationKind::vector(4), 30, data);
    const auto S = knn_affinity_matrix(series, 5, KernelFamily::NegL2);
    double total = 0;
    for (double v : S.values().values()) total += v;
    EXPECT_DOUBLE_EQ(total, 30.0 * 5.0);
}
