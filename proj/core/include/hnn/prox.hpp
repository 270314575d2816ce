#pragma once

#include <span>

#include "hnn/haar.hpp"
#include "hnn/tensor.hpp"

namespace hnn {

/// Thin SVD a = u * diag(sigma) * vt with sigma nonincreasing.
struct SvdFactors {
    Matrix u;     // R x r
    Vector sigma; // r
    Matrix vt;    // r x C

    [[nodiscard]] Matrix reconstruct() const { return u * sigma.asDiagonal() * vt; }
};

/// Economy SVD. Throws DataError on non-finite input.
SvdFactors svd(Matrix const& a);

/// sign(x) * max(|x| - gamma, 0).
inline double soft_threshold(double x, double gamma) noexcept
{
    double const mag = (x < 0.0 ? -x : x) - gamma;
    if (mag <= 0.0) return 0.0;
    return x < 0.0 ? -mag : mag;
}

/// Elementwise soft-thresholding in place. Throws InvalidArgument for gamma < 0.
void soft_threshold(std::span<double> values, double gamma);
Tensor3 soft_threshold(Tensor3 t, double gamma);

/// Singular value thresholding U G_tau(Sigma) V^T: the proximal map of tau * ||.||_*.
Matrix svt(Matrix const& a, double tau);

/// In-place SVT on a matrix view. Returns the nuclear norm of the result.
double svt_inplace(Eigen::Ref<Matrix> a, double tau);

/// Sum of singular values.
double nuclear_norm(Matrix const& a);

/// Sum of the nuclear norms of the mode-3 unfoldings of four wavelet blocks.
double hnn(WaveletBlocks const& blocks);

/// Haar nuclear norm: hnn(fhwt2(t)). Requires even spatial extents.
double hnn(Tensor3 const& t);

} // namespace hnn
