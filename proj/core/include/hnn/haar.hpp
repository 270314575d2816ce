#pragma once

#include <array>
#include <span>
#include <vector>

#include "hnn/tensor.hpp"

namespace hnn {

/// Orthogonal one-level Haar matrix W_N = [H; G] of even order N.
///
/// Row r < N/2 of H averages entries (2r, 2r+1) with weight sqrt(2)/2; row r
/// of G takes their difference (2r minus 2r+1) with the same weight. The
/// matrix is never stored; apply() and apply_transpose() run in O(N).
class HaarMatrix {
public:
    explicit HaarMatrix(Index order);

    [[nodiscard]] Index order() const noexcept { return order_; }

    /// W_N * a.
    [[nodiscard]] Vector apply(Eigen::Ref<Vector const> const& a) const;
    /// W_N^T * b, which is also W_N^{-1} * b.
    [[nodiscard]] Vector apply_transpose(Eigen::Ref<Vector const> const& b) const;
    /// Dense N x N matrix. Test and reference paths only.
    [[nodiscard]] Matrix dense() const;

private:
    Index order_;
};

/// Throws OddDimensionError unless N is even and at least 2.
HaarMatrix haar_matrix(Index order);

/// 1-D Haar transform b = W_N a.
Vector hwt1(Eigen::Ref<Vector const> const& a);
/// Inverse 1-D Haar transform a = W_N^T b.
Vector ihwt1(Eigen::Ref<Vector const> const& b);

/// The four M/2 x N/2 x S coefficient tensors of a slice-wise 2-D Haar transform:
/// approximation, horizontal, vertical and diagonal, laid out per frontal slice
/// as [b1 b2; b3 b4] = W_M A W_N^T.
struct WaveletBlocks {
    std::array<Tensor3, 4> b;
    Dims3 parent_dims{0, 0, 0};

    WaveletBlocks() = default;
    /// Four zero blocks for a parent of extents `parent`.
    explicit WaveletBlocks(Dims3 parent);

    Tensor3& operator[](std::size_t i) { return b[i]; }
    Tensor3 const& operator[](std::size_t i) const { return b[i]; }

    [[nodiscard]] Dims3 block_dims() const noexcept
    {
        return {parent_dims[0] / 2, parent_dims[1] / 2, parent_dims[2]};
    }

    /// Joint Frobenius norm of all four blocks.
    [[nodiscard]] double norm() const;
};

/// Validates that t can be Haar transformed (non-empty, even M and N).
void require_even_spatial(Dims3 const& dims);

/// Slice-wise 2-D Haar transform via the per-2x2-patch formulas, O(MNS).
WaveletBlocks fhwt2(Tensor3 const& t);

/// Inverse of fhwt2 via the per-patch formulas.
Tensor3 ifhwt2(WaveletBlocks const& blocks);

/// Reference path: A x1 W_M x2 W_N with dense Haar matrices, then partitioned.
WaveletBlocks fhwt2_dense(Tensor3 const& t);

/// Reference path: B x1 W_M^T x2 W_N^T on the assembled coefficient tensor.
Tensor3 ifhwt2_dense(WaveletBlocks const& blocks);

/// Places the blocks as [b1 b2; b3 b4] in every frontal slice of an M x N x S tensor.
Tensor3 assemble(WaveletBlocks const& blocks);

/// Inverse of assemble.
WaveletBlocks partition(Tensor3 const& coefficients);

/// CE_k = (sum_{i<=k} s_i) / (sum_i s_i) for a nonincreasing, nonnegative sequence.
std::vector<double> cumulative_energy(std::span<double const> singular_values);

} // namespace hnn
