#include "hnn/haar.hpp"

#include <cmath>
#include <string>

#include "hnn/error.hpp"

namespace hnn {
namespace {

constexpr double kHalfSqrt2 = 0.70710678118654752440;

void check_order(Index order)
{
    if (order < 2 || order % 2 != 0)
        throw OddDimensionError("Haar transform needs an even order >= 2, got " + std::to_string(order));
}

void check_blocks(WaveletBlocks const& blocks)
{
    require_even_spatial(blocks.parent_dims);
    Dims3 const expected = blocks.block_dims();
    for (auto const& b : blocks.b)
        if (b.dims() != expected) throw DimensionError("wavelet blocks do not match their parent extents");
}

} // namespace

HaarMatrix::HaarMatrix(Index order) : order_(order) { check_order(order); }

Vector HaarMatrix::apply(Eigen::Ref<Vector const> const& a) const
{
    if (static_cast<Index>(a.size()) != order_) throw DimensionError("HaarMatrix::apply: length mismatch");
    Index const half = order_ / 2;
    Vector b(a.size());
    for (Index r = 0; r < half; ++r) {
        auto const e = static_cast<Eigen::Index>(2 * r);
        b(static_cast<Eigen::Index>(r)) = kHalfSqrt2 * (a(e) + a(e + 1));
        b(static_cast<Eigen::Index>(half + r)) = kHalfSqrt2 * (a(e) - a(e + 1));
    }
    return b;
}

Vector HaarMatrix::apply_transpose(Eigen::Ref<Vector const> const& b) const
{
    if (static_cast<Index>(b.size()) != order_) throw DimensionError("HaarMatrix::apply_transpose: length mismatch");
    Index const half = order_ / 2;
    Vector a(b.size());
    for (Index r = 0; r < half; ++r) {
        double const h = b(static_cast<Eigen::Index>(r));
        double const g = b(static_cast<Eigen::Index>(half + r));
        auto const e = static_cast<Eigen::Index>(2 * r);
        a(e) = kHalfSqrt2 * (h + g);
        a(e + 1) = kHalfSqrt2 * (h - g);
    }
    return a;
}

Matrix HaarMatrix::dense() const
{
    auto const n = static_cast<Eigen::Index>(order_);
    auto const half = n / 2;
    Matrix w = Matrix::Zero(n, n);
    for (Eigen::Index r = 0; r < half; ++r) {
        w(r, 2 * r) = kHalfSqrt2;
        w(r, 2 * r + 1) = kHalfSqrt2;
        w(half + r, 2 * r) = kHalfSqrt2;
        w(half + r, 2 * r + 1) = -kHalfSqrt2;
    }
    return w;
}

HaarMatrix haar_matrix(Index order) { return HaarMatrix(order); }

Vector hwt1(Eigen::Ref<Vector const> const& a)
{
    return HaarMatrix(static_cast<Index>(a.size())).apply(a);
}

Vector ihwt1(Eigen::Ref<Vector const> const& b)
{
    return HaarMatrix(static_cast<Index>(b.size())).apply_transpose(b);
}

WaveletBlocks::WaveletBlocks(Dims3 parent) : parent_dims(parent)
{
    require_even_spatial(parent);
    for (auto& blk : b) blk = Tensor3(block_dims());
}

double WaveletBlocks::norm() const
{
    double sq = 0.0;
    for (auto const& blk : b) sq += blk.vec().squaredNorm();
    return std::sqrt(sq);
}

void require_even_spatial(Dims3 const& dims)
{
    if (dims[2] == 0) throw DimensionError("tensor has no bands");
    if (dims[0] < 2 || dims[0] % 2 != 0 || dims[1] < 2 || dims[1] % 2 != 0)
        throw OddDimensionError("Haar transform needs even spatial extents, got " + std::to_string(dims[0]) + "x" +
                                std::to_string(dims[1]));
}

// With a00 = A(2i,2j), a01 = A(2i,2j+1), a10 = A(2i+1,2j), a11 = A(2i+1,2j+1)
// (0-based), W_M A W_N^T gives
//   b1 = (a00 + a01 + a10 + a11) / 2     H . H
//   b2 = (a00 - a01 + a10 - a11) / 2     H . G
//   b3 = (a00 + a01 - a10 - a11) / 2     G . H
//   b4 = (a00 - a01 - a10 + a11) / 2     G . G
WaveletBlocks fhwt2(Tensor3 const& t)
{
    require_even_spatial(t.dims());
    WaveletBlocks out(t.dims());
    Index const m = t.rows();
    Index const hm = m / 2;
    Index const hn = t.cols() / 2;
    Index const plane = m * t.cols();
    Index const half_plane = hm * hn;
    double const* src = t.data().data();
    double* b1 = out.b[0].data().data();
    double* b2 = out.b[1].data().data();
    double* b3 = out.b[2].data().data();
    double* b4 = out.b[3].data().data();
    for (Index k = 0; k < t.bands(); ++k) {
        double const* slice = src + k * plane;
        for (Index j = 0; j < hn; ++j) {
            double const* c0 = slice + (2 * j) * m;
            double const* c1 = c0 + m;
            Index const dst = k * half_plane + j * hm;
            for (Index i = 0; i < hm; ++i) {
                double const a00 = c0[2 * i];
                double const a10 = c0[2 * i + 1];
                double const a01 = c1[2 * i];
                double const a11 = c1[2 * i + 1];
                double const sr0 = a00 + a10;
                double const sr1 = a01 + a11;
                double const dr0 = a00 - a10;
                double const dr1 = a01 - a11;
                b1[dst + i] = 0.5 * (sr0 + sr1);
                b2[dst + i] = 0.5 * (sr0 - sr1);
                b3[dst + i] = 0.5 * (dr0 + dr1);
                b4[dst + i] = 0.5 * (dr0 - dr1);
            }
        }
    }
    return out;
}

Tensor3 ifhwt2(WaveletBlocks const& blocks)
{
    check_blocks(blocks);
    Tensor3 t(blocks.parent_dims);
    Index const m = t.rows();
    Index const hm = m / 2;
    Index const hn = t.cols() / 2;
    Index const plane = m * t.cols();
    Index const half_plane = hm * hn;
    double const* b1 = blocks.b[0].data().data();
    double const* b2 = blocks.b[1].data().data();
    double const* b3 = blocks.b[2].data().data();
    double const* b4 = blocks.b[3].data().data();
    double* dst = t.data().data();
    for (Index k = 0; k < t.bands(); ++k) {
        double* slice = dst + k * plane;
        for (Index j = 0; j < hn; ++j) {
            double* c0 = slice + (2 * j) * m;
            double* c1 = c0 + m;
            Index const src = k * half_plane + j * hm;
            for (Index i = 0; i < hm; ++i) {
                double const p = b1[src + i];
                double const q = b2[src + i];
                double const r = b3[src + i];
                double const s = b4[src + i];
                double const h0 = p + q;
                double const h1 = p - q;
                double const g0 = r + s;
                double const g1 = r - s;
                c0[2 * i] = 0.5 * (h0 + g0);
                c0[2 * i + 1] = 0.5 * (h0 - g0);
                c1[2 * i] = 0.5 * (h1 + g1);
                c1[2 * i + 1] = 0.5 * (h1 - g1);
            }
        }
    }
    return t;
}

WaveletBlocks fhwt2_dense(Tensor3 const& t)
{
    require_even_spatial(t.dims());
    Matrix const wm = HaarMatrix(t.rows()).dense();
    Matrix const wn = HaarMatrix(t.cols()).dense();
    return partition(mode_n_product(mode_n_product(t, wm, 1), wn, 2));
}

Tensor3 ifhwt2_dense(WaveletBlocks const& blocks)
{
    check_blocks(blocks);
    Matrix const wm = HaarMatrix(blocks.parent_dims[0]).dense();
    Matrix const wn = HaarMatrix(blocks.parent_dims[1]).dense();
    return mode_n_product(mode_n_product(assemble(blocks), wm.transpose(), 1), wn.transpose(), 2);
}

Tensor3 assemble(WaveletBlocks const& blocks)
{
    check_blocks(blocks);
    Tensor3 t(blocks.parent_dims);
    auto const hm = static_cast<Eigen::Index>(blocks.parent_dims[0] / 2);
    auto const hn = static_cast<Eigen::Index>(blocks.parent_dims[1] / 2);
    for (Index k = 0; k < t.bands(); ++k) {
        auto s = t.slice(k);
        s.topLeftCorner(hm, hn) = blocks.b[0].slice(k);
        s.topRightCorner(hm, hn) = blocks.b[1].slice(k);
        s.bottomLeftCorner(hm, hn) = blocks.b[2].slice(k);
        s.bottomRightCorner(hm, hn) = blocks.b[3].slice(k);
    }
    return t;
}

WaveletBlocks partition(Tensor3 const& coefficients)
{
    WaveletBlocks out(coefficients.dims());
    auto const hm = static_cast<Eigen::Index>(coefficients.rows() / 2);
    auto const hn = static_cast<Eigen::Index>(coefficients.cols() / 2);
    for (Index k = 0; k < coefficients.bands(); ++k) {
        auto s = coefficients.slice(k);
        out.b[0].slice(k) = s.topLeftCorner(hm, hn);
        out.b[1].slice(k) = s.topRightCorner(hm, hn);
        out.b[2].slice(k) = s.bottomLeftCorner(hm, hn);
        out.b[3].slice(k) = s.bottomRightCorner(hm, hn);
    }
    return out;
}

std::vector<double> cumulative_energy(std::span<double const> singular_values)
{
    double total = 0.0;
    for (double s : singular_values) {
        if (s < 0.0 || !std::isfinite(s)) throw InvalidArgument("cumulative_energy: values must be finite and >= 0");
        total += s;
    }
    if (total == 0.0) throw InvalidArgument("cumulative_energy: all singular values are zero");
    std::vector<double> ce;
    ce.reserve(singular_values.size());
    double running = 0.0;
    for (double s : singular_values) {
        running += s;
        ce.push_back(running / total);
    }
    if (!ce.empty()) ce.back() = 1.0;
    return ce;
}

} // namespace hnn
