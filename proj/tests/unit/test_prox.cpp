#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "hnn/error.hpp"
#include "hnn/prox.hpp"
#include "oracles.hpp"

namespace hnn {
namespace {

Matrix diag2(double a, double b)
{
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

double nuclear_norm_oracle(Matrix const& a)
{
    return Eigen::JacobiSVD<Matrix>(a).singularValues().sum();
}

TEST(Svd, DiagonalAndZero)
{
    SvdFactors const f = svd(diag2(1.0, 3.0));
    EXPECT_NEAR(f.sigma(0), 3.0, 1e-14);
    EXPECT_NEAR(f.sigma(1), 1.0, 1e-14);
    SvdFactors const z = svd(Matrix::Zero(3, 2));
    EXPECT_EQ(z.sigma.size(), 2);
    EXPECT_EQ(z.sigma.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Svd, ThinFactorsAreOrthonormalAndReconstruct)
{
    for (auto [r, c] : {std::pair{20, 8}, std::pair{8, 20}, std::pair{15, 15}}) {
        Matrix const a = oracle::random_matrix(r, c, static_cast<std::uint64_t>(r * 100 + c));
        SvdFactors const f = svd(a);
        Eigen::Index const k = std::min(r, c);
        ASSERT_EQ(f.u.cols(), k);
        ASSERT_EQ(f.vt.rows(), k);
        EXPECT_LE((f.u.transpose() * f.u - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LE((f.vt * f.vt.transpose() - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LE((f.reconstruct() - a).norm() / a.norm(), 1e-10);
        for (Eigen::Index i = 1; i < k; ++i) EXPECT_GE(f.sigma(i - 1), f.sigma(i));
        EXPECT_GE(f.sigma.minCoeff(), 0.0);
    }
}

TEST(Svd, RejectsNonFiniteInput)
{
    Matrix a = Matrix::Ones(3, 3);
    a(1, 2) = std::numeric_limits<double>::infinity();
    EXPECT_THROW((void)svd(a), DataError);
    a(1, 2) = std::nan("");
    EXPECT_THROW((void)svt(a, 1.0), DataError);
}

TEST(SoftThreshold, Formula)
{
    EXPECT_DOUBLE_EQ(soft_threshold(2.0, 0.5), 1.5);
    EXPECT_EQ(soft_threshold(-0.3, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(soft_threshold(-2.0, 0.5), -1.5);
    std::vector<double> v{3.0, -3.0, 0.1};
    soft_threshold(std::span<double>(v), 1.0);
    EXPECT_EQ(v, (std::vector<double>{2.0, -2.0, 0.0}));
    EXPECT_THROW(soft_threshold(std::span<double>(v), -0.1), InvalidArgument);
    EXPECT_THROW((void)soft_threshold(Tensor3({1, 1, 1}), -1.0), InvalidArgument);
}

TEST(SoftThreshold, MinimisesScalarProximalObjective)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    std::uniform_real_distribution<double> ug(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        double const x = ux(rng);
        double const g = ug(rng);
        auto const f = [&](double z) { return g * std::abs(z) + 0.5 * (z - x) * (z - x); };
        double best = 0.0;
        double best_val = f(0.0);
        for (int n = -40000; n <= 40000; ++n) {
            double const z = n * 1e-4;
            if (f(z) < best_val) {
                best_val = f(z);
                best = z;
            }
        }
        EXPECT_NEAR(soft_threshold(x, g), best, 1e-4) << "x=" << x << " g=" << g;
        EXPECT_LE(f(soft_threshold(x, g)), best_val + 1e-12);
    }
}

TEST(Svt, ZeroThresholdIsIdentity)
{
    Matrix const a = oracle::random_matrix(9, 6, 3);
    EXPECT_LE((svt(a, 0.0) - a).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Svt, ShrinksDiagonal)
{
    Matrix const out = svt(diag2(3.0, 1.0), 2.0);
    EXPECT_LE((out - diag2(1.0, 0.0)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_THROW((void)svt(out, -1.0), InvalidArgument);
}

TEST(Svt, NuclearNormOfResultIsShrunkSum)
{
    Matrix const a = oracle::random_matrix(12, 7, 4);
    double const tau = 1.5;
    Vector const s = Eigen::JacobiSVD<Matrix>(a).singularValues();
    double expected = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) expected += std::max(s(i) - tau, 0.0);
    EXPECT_NEAR(nuclear_norm_oracle(svt(a, tau)), expected, 1e-10);

    Matrix b = a;
    EXPECT_NEAR(svt_inplace(b, tau), expected, 1e-10);
    EXPECT_LE((b - svt(a, tau)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Svt, BeatsRandomPerturbations)
{
    Matrix const a = oracle::random_matrix(10, 6, 5);
    double const tau = 1.0;
    auto const objective = [&](Matrix const& z) {
        return tau * nuclear_norm_oracle(z) + 0.5 * (z - a).squaredNorm();
    };
    Matrix const z = svt(a, tau);
    double const best = objective(z);
    for (std::uint64_t p = 0; p < 200; ++p) {
        double const scale = 1e-3 * static_cast<double>(1 + p % 10);
        EXPECT_LE(best, objective(z + scale * oracle::random_matrix(10, 6, 1000 + p)) + 1e-12);
    }
}

TEST(Svt, IsNonexpansive)
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        Matrix const a = oracle::random_matrix(8, 5, 2 * s);
        Matrix const b = oracle::random_matrix(8, 5, 2 * s + 1);
        EXPECT_LE((svt(a, 0.8) - svt(b, 0.8)).norm(), (a - b).norm() + 1e-12);
    }
}

TEST(NuclearNorm, ClosedFormsAndTriangleInequality)
{
    EXPECT_NEAR(nuclear_norm(Matrix::Identity(3, 3)), 3.0, 1e-14);
    Vector u = oracle::random_matrix(6, 1, 1).col(0).normalized();
    Vector v = oracle::random_matrix(4, 1, 2).col(0).normalized();
    EXPECT_NEAR(nuclear_norm(u * v.transpose()), 1.0, 1e-12);
    EXPECT_EQ(nuclear_norm(Matrix::Zero(3, 4)), 0.0);
    for (std::uint64_t s = 0; s < 20; ++s) {
        Matrix const a = oracle::random_matrix(7, 5, 10 + 2 * s);
        Matrix const b = oracle::random_matrix(7, 5, 11 + 2 * s);
        EXPECT_LE(nuclear_norm(a + b), nuclear_norm(a) + nuclear_norm(b) + 1e-12);
    }
}

TEST(Hnn, ZeroAndConstant)
{
    EXPECT_EQ(hnn(Tensor3::zeros({4, 4, 3})), 0.0);
    for (double c : {0.5, -2.0}) {
        for (Index s : {1u, 4u, 9u}) EXPECT_NEAR(hnn(Tensor3({2, 2, s}, c)), 2 * std::abs(c) * std::sqrt(double(s)), 1e-12);
    }
    EXPECT_THROW((void)hnn(Tensor3({3, 4, 2})), OddDimensionError);
}

TEST(Hnn, EqualsSumOfBlockNuclearNorms)
{
    Tensor3 const t = oracle::random_tensor({8, 10, 5}, 21);
    Tensor3 const coeff = oracle::mode_product_loops(
        oracle::mode_product_loops(t, haar_matrix(8).dense(), 1), haar_matrix(10).dense(), 2);
    double expected = 0.0;
    for (Index bi = 0; bi < 2; ++bi)
        for (Index bj = 0; bj < 2; ++bj) {
            Matrix unfolded(5, 20);
            for (Index k = 0; k < 5; ++k)
                for (Index j = 0; j < 5; ++j)
                    for (Index i = 0; i < 4; ++i)
                        unfolded(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i + 4 * j)) =
                            coeff(i + 4 * bi, j + 5 * bj, k);
            expected += nuclear_norm_oracle(unfolded);
        }
    EXPECT_NEAR(hnn(t), expected, 1e-10 * expected);
}

TEST(Hnn, IsANorm)
{
    Tensor3 const t = oracle::random_tensor({6, 8, 4}, 31);
    Tensor3 const u = oracle::random_tensor({6, 8, 4}, 32);
    EXPECT_NEAR(hnn(-2.5 * t), 2.5 * hnn(t), 1e-10);
    EXPECT_LE(hnn(t + u), hnn(t) + hnn(u) + 1e-8);
    EXPECT_GT(hnn(t), 0.0);
}

TEST(Hnn, InvariantUnderOrthogonalBandMixing)
{
    Tensor3 const t = oracle::random_tensor({8, 6, 5}, 41);
    Matrix const q = Eigen::HouseholderQR<Matrix>(oracle::random_matrix(5, 5, 42)).householderQ();
    EXPECT_NEAR(hnn(mode_n_product(t, q, 3)), hnn(t), 1e-8);
}

} // namespace
} // namespace hnn
