#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <Eigen/SVD>

#include "hnn/error.hpp"
#include "hnn/haar.hpp"
#include "oracles.hpp"

namespace hnn {
namespace {

double const kHalfSqrt2 = std::sqrt(2.0) / 2.0;

/// Oracle for the block layout: entries of W_M * A * W_N^T built element by element.
Tensor3 two_sided_product(Tensor3 const& t)
{
    Matrix const wm = haar_matrix(t.rows()).dense();
    Matrix const wn = haar_matrix(t.cols()).dense();
    Tensor3 out(t.dims());
    for (Index k = 0; k < t.bands(); ++k)
        for (Index p = 0; p < t.rows(); ++p)
            for (Index q = 0; q < t.cols(); ++q) {
                double s = 0.0;
                for (Index i = 0; i < t.rows(); ++i)
                    for (Index j = 0; j < t.cols(); ++j)
                        s += wm(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i)) * t(i, j, k) *
                             wn(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(j));
                out(p, q, k) = s;
            }
    return out;
}

TEST(HaarMatrix, OrderTwoValues)
{
    Matrix const w = haar_matrix(2).dense();
    EXPECT_NEAR(w(0, 0), kHalfSqrt2, 1e-16);
    EXPECT_NEAR(w(0, 1), kHalfSqrt2, 1e-16);
    EXPECT_NEAR(w(1, 0), kHalfSqrt2, 1e-16);
    EXPECT_NEAR(w(1, 1), -kHalfSqrt2, 1e-16);
}

TEST(HaarMatrix, OrthogonalForSeveralOrders)
{
    for (Index n : {2u, 4u, 8u, 64u, 256u}) {
        Matrix const w = haar_matrix(n).dense();
        auto const sn = static_cast<Eigen::Index>(n);
        EXPECT_LE((w * w.transpose() - Matrix::Identity(sn, sn)).cwiseAbs().maxCoeff(), 1e-12) << n;
    }
}

TEST(HaarMatrix, RowSums)
{
    Index const n = 16;
    Matrix const w = haar_matrix(n).dense();
    for (Eigen::Index r = 0; r < 8; ++r) {
        EXPECT_NEAR(w.row(r).sum(), std::sqrt(2.0), 1e-15);
        EXPECT_NEAR(w.row(r + 8).sum(), 0.0, 1e-15);
    }
}

TEST(HaarMatrix, RejectsOddAndZeroOrders)
{
    EXPECT_THROW((void)haar_matrix(0), OddDimensionError);
    EXPECT_THROW((void)haar_matrix(3), OddDimensionError);
    EXPECT_THROW((void)hwt1(Vector::Ones(5)), OddDimensionError);
}

TEST(Hwt1, SmallExamples)
{
    Vector const a = hwt1(Vector::Ones(2));
    EXPECT_NEAR(a(0), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(a(1), 0.0, 1e-15);
    Vector v(2);
    v << 1.0, -1.0;
    Vector const b = hwt1(v);
    EXPECT_NEAR(b(0), 0.0, 1e-15);
    EXPECT_NEAR(b(1), std::sqrt(2.0), 1e-15);
}

TEST(Hwt1, MatchesDenseProductAndInverts)
{
    Vector const a = oracle::random_matrix(16, 1, 5).col(0);
    Vector const dense = haar_matrix(16).dense() * a;
    Vector const fast = hwt1(a);
    EXPECT_LE((fast - dense).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((ihwt1(fast) - a).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fhwt2, ConstantPatch)
{
    double const c = 0.7;
    WaveletBlocks const b = fhwt2(Tensor3({2, 2, 3}, c));
    for (Index k = 0; k < 3; ++k) {
        EXPECT_NEAR(b[0](0, 0, k), 2 * c, 1e-15);
        for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(b[i](0, 0, k), 0.0, 1e-15);
    }
}

TEST(Fhwt2, BlocksAreTheTwoSidedMatrixProduct)
{
    Tensor3 const t = oracle::random_tensor({8, 6, 3}, 12);
    Tensor3 const expected = two_sided_product(t);
    WaveletBlocks const b = fhwt2(t);
    for (Index k = 0; k < 3; ++k)
        for (Index j = 0; j < 3; ++j)
            for (Index i = 0; i < 4; ++i) {
                EXPECT_NEAR(b[0](i, j, k), expected(i, j, k), 1e-14);
                EXPECT_NEAR(b[1](i, j, k), expected(i, j + 3, k), 1e-14);
                EXPECT_NEAR(b[2](i, j, k), expected(i + 4, j, k), 1e-14);
                EXPECT_NEAR(b[3](i, j, k), expected(i + 4, j + 3, k), 1e-14);
            }
}

TEST(Fhwt2, FastPathEqualsDensePath)
{
    Tensor3 const t = oracle::random_tensor({8, 8, 3}, 13);
    WaveletBlocks const fast = fhwt2(t);
    WaveletBlocks const dense = fhwt2_dense(t);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(oracle::max_abs_diff(fast[i], dense[i]), 1e-12);
    Tensor3 const back = ifhwt2(fast);
    EXPECT_LE(oracle::max_abs_diff(back, ifhwt2_dense(fast)), 1e-12);
}

TEST(Fhwt2, PreservesFrobeniusNorm)
{
    Tensor3 const t = oracle::random_tensor({10, 14, 4}, 14);
    WaveletBlocks const b = fhwt2(t);
    EXPECT_NEAR(b.norm(), frobenius_norm(t), 1e-10);
    EXPECT_NEAR(frobenius_norm(assemble(b)), frobenius_norm(t), 1e-10);
}

TEST(Fhwt2, IsLinear)
{
    Tensor3 const t = oracle::random_tensor({6, 8, 2}, 15);
    Tensor3 const u = oracle::random_tensor({6, 8, 2}, 16);
    double const alpha = 1.7;
    double const beta = -0.4;
    WaveletBlocks const lhs = fhwt2(alpha * t + beta * u);
    WaveletBlocks const bt = fhwt2(t);
    WaveletBlocks const bu = fhwt2(u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(oracle::max_abs_diff(lhs[i], alpha * bt[i] + beta * bu[i]), 1e-10);
}

TEST(Fhwt2, RejectsOddSpatialExtents)
{
    EXPECT_THROW((void)fhwt2(Tensor3({3, 4, 1})), OddDimensionError);
    EXPECT_THROW((void)fhwt2(Tensor3({4, 5, 1})), OddDimensionError);
    EXPECT_THROW((void)fhwt2(Tensor3({0, 4, 1})), DimensionError);
}

TEST(Ifhwt2, ZeroBlocksAndConstantInverse)
{
    Tensor3 const z = ifhwt2(WaveletBlocks({4, 6, 2}));
    EXPECT_EQ(z, Tensor3::zeros({4, 6, 2}));

    WaveletBlocks b({2, 2, 1});
    b[0](0, 0, 0) = 2.0;
    Tensor3 const ones = ifhwt2(b);
    for (Index n = 0; n < 4; ++n) EXPECT_NEAR(ones[n], 1.0, 1e-15);
}

TEST(Ifhwt2, RoundtripsBothWays)
{
    for (std::uint64_t s = 0; s < 100; ++s) {
        Dims3 const d{2 * (1 + s % 32), 2 * (1 + (s * 13) % 32), 1 + s % 8};
        Tensor3 const t = oracle::random_tensor(d, 500 + s);
        EXPECT_LE(oracle::rel_diff(ifhwt2(fhwt2(t)), t), 1e-10);
    }
    WaveletBlocks b({6, 4, 3});
    for (std::size_t i = 0; i < 4; ++i) b[i] = oracle::random_tensor(b.block_dims(), 900 + i);
    WaveletBlocks const again = fhwt2(ifhwt2(b));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(oracle::rel_diff(again[i], b[i]), 1e-10);
}

TEST(Ifhwt2, RejectsMismatchedBlocks)
{
    WaveletBlocks b({4, 4, 2});
    b[2] = Tensor3({2, 3, 2});
    EXPECT_THROW((void)ifhwt2(b), DimensionError);
}

TEST(AssemblePartition, AreInverse)
{
    Tensor3 const t = oracle::random_tensor({6, 10, 3}, 17);
    EXPECT_EQ(assemble(partition(t)), t);
}

TEST(CumulativeEnergy, SmallExamples)
{
    std::vector<double> const a{1.0, 0.0, 0.0};
    EXPECT_EQ(cumulative_energy(a), (std::vector<double>{1.0, 1.0, 1.0}));
    std::vector<double> const b{2.0, 1.0, 1.0};
    auto const ce = cumulative_energy(b);
    ASSERT_EQ(ce.size(), 3u);
    EXPECT_DOUBLE_EQ(ce[0], 0.5);
    EXPECT_DOUBLE_EQ(ce[1], 0.75);
    EXPECT_EQ(ce[2], 1.0);
}

TEST(CumulativeEnergy, RejectsDegenerateInput)
{
    std::vector<double> const zeros{0.0, 0.0};
    EXPECT_THROW((void)cumulative_energy(zeros), InvalidArgument);
    std::vector<double> const negative{1.0, -0.5};
    EXPECT_THROW((void)cumulative_energy(negative), InvalidArgument);
}

TEST(CumulativeEnergy, ApproximationDominatesDiagonalOnPiecewiseSmoothImage)
{
    Index const n = 64;
    Tensor3 img({n, n, 1});
    Tensor3 const texture = oracle::random_tensor({n, n, 1}, 18, -0.01, 0.01);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) {
            double const x = static_cast<double>(i) / n;
            double const y = static_cast<double>(j) / n;
            double v = 0.4 + 0.2 * std::sin(3 * x) * std::cos(2 * y);
            if (x > 0.3 && x < 0.7 && y > 0.2 && y < 0.6) v += 0.3;
            img(i, j, 0) = v + texture(i, j, 0);
        }
    WaveletBlocks const b = fhwt2(img);
    auto const curve = [&](std::size_t block) {
        Eigen::JacobiSVD<Matrix> svd(b[block].slice(0));
        Vector const s = svd.singularValues();
        return cumulative_energy(std::span<double const>(s.data(), static_cast<std::size_t>(s.size())));
    };
    auto const ce1 = curve(0);
    auto const ce4 = curve(3);
    ASSERT_EQ(ce1.size(), ce4.size());
    for (std::size_t k = 0; k < ce1.size(); ++k) EXPECT_GE(ce1[k], ce4[k]) << "k=" << k;
}

TEST(WaveletRanks, BlockRanksDoNotExceedParentRanks)
{
    for (std::uint64_t s = 0; s < 10; ++s) {
        Dims3 const d{20 + 2 * (s % 6), 24 + 2 * (s % 4), 20 + s};
        Index const r = 1 + s % 8;
        Tensor3 const t = random_tucker(d, {{r, r, std::min<Index>(r + 1, d[2])}, 300 + s});
        WaveletBlocks const b = fhwt2(t);
        for (int mode = 1; mode <= 3; ++mode) {
            Index const parent = numerical_n_rank(t, mode);
            for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(numerical_n_rank(b[i], mode), parent);
        }
    }
}

} // namespace
} // namespace hnn
