#include "hnn/tensor.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "hnn/error.hpp"
#include "hnn/rng.hpp"

namespace hnn {
namespace {

Index product(Dims3 const& d) { return d[0] * d[1] * d[2]; }

void check_mode(int mode)
{
    if (mode < 1 || mode > 3) throw InvalidArgument("tensor mode must be 1, 2 or 3, got " + std::to_string(mode));
}

void check_same_dims(Tensor3 const& a, Tensor3 const& b)
{
    if (a.dims() != b.dims()) throw DimensionError("tensor extents differ");
}

} // namespace

Tensor3::Tensor3(Dims3 dims, double fill) : dims_(dims), data_(product(dims), fill) {}

Tensor3::Tensor3(Dims3 dims, std::vector<double> data) : dims_(dims), data_(std::move(data))
{
    if (data_.size() != product(dims_)) throw DimensionError("tensor data length does not match extents");
}

Eigen::Map<Matrix> Tensor3::slice(Index k)
{
    auto const m = static_cast<Eigen::Index>(dims_[0]);
    auto const n = static_cast<Eigen::Index>(dims_[1]);
    return {data_.data() + k * dims_[0] * dims_[1], m, n};
}

Eigen::Map<Matrix const> Tensor3::slice(Index k) const
{
    auto const m = static_cast<Eigen::Index>(dims_[0]);
    auto const n = static_cast<Eigen::Index>(dims_[1]);
    return {data_.data() + k * dims_[0] * dims_[1], m, n};
}

Eigen::Map<Matrix> Tensor3::pixels_by_band()
{
    return {data_.data(), static_cast<Eigen::Index>(dims_[0] * dims_[1]), static_cast<Eigen::Index>(dims_[2])};
}

Eigen::Map<Matrix const> Tensor3::pixels_by_band() const
{
    return {data_.data(), static_cast<Eigen::Index>(dims_[0] * dims_[1]), static_cast<Eigen::Index>(dims_[2])};
}

bool Tensor3::all_finite() const noexcept
{
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

Tensor3& Tensor3::operator+=(Tensor3 const& other)
{
    check_same_dims(*this, other);
    vec() += other.vec();
    return *this;
}

Tensor3& Tensor3::operator-=(Tensor3 const& other)
{
    check_same_dims(*this, other);
    vec() -= other.vec();
    return *this;
}

Tensor3& Tensor3::operator*=(double s) noexcept
{
    vec() *= s;
    return *this;
}

Tensor3 operator+(Tensor3 a, Tensor3 const& b) { return a += b; }
Tensor3 operator-(Tensor3 a, Tensor3 const& b) { return a -= b; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

Matrix unfold(Tensor3 const& t, int mode)
{
    check_mode(mode);
    auto const [m, n, s] = t.dims();
    switch (mode) {
    case 1: {
        Eigen::Map<Matrix const> view(t.data().data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n * s));
        return view;
    }
    case 2: {
        Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m * s));
        for (Index k = 0; k < s; ++k)
            out.middleCols(static_cast<Eigen::Index>(k * m), static_cast<Eigen::Index>(m)) = t.slice(k).transpose();
        return out;
    }
    default:
        return t.pixels_by_band().transpose();
    }
}

Tensor3 fold(Matrix const& a, int mode, Dims3 dims)
{
    check_mode(mode);
    auto const [m, n, s] = dims;
    auto const rows = static_cast<Index>(a.rows());
    auto const cols = static_cast<Index>(a.cols());
    if (rows != dims[static_cast<std::size_t>(mode - 1)] || rows * cols != m * n * s)
        throw DimensionError("fold: matrix shape does not match target extents");
    Tensor3 t(dims);
    switch (mode) {
    case 1:
        t.vec() = a.reshaped();
        break;
    case 2:
        for (Index k = 0; k < s; ++k)
            t.slice(k) = a.middleCols(static_cast<Eigen::Index>(k * m), static_cast<Eigen::Index>(m)).transpose();
        break;
    default:
        t.pixels_by_band() = a.transpose();
        break;
    }
    return t;
}

Tensor3 mode_n_product(Tensor3 const& t, Matrix const& b, int mode)
{
    check_mode(mode);
    if (static_cast<Index>(b.cols()) != t.dim(mode))
        throw DimensionError("mode_n_product: matrix columns do not match tensor extent");
    Dims3 out_dims = t.dims();
    out_dims[static_cast<std::size_t>(mode - 1)] = static_cast<Index>(b.rows());
    Matrix const product = b * unfold(t, mode);
    return fold(product, mode, out_dims);
}

double frobenius_norm(Tensor3 const& t) { return t.vec().norm(); }

Index numerical_n_rank(Tensor3 const& t, int mode, double tol)
{
    if (!(tol > 0.0)) throw InvalidArgument("numerical_n_rank: tol must be positive");
    Matrix const a = unfold(t, mode);
    if (a.size() == 0) return 0;
    Eigen::BDCSVD<Matrix> svd(a);
    auto const& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
    double const cut = tol * sigma(0);
    Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cut) ++rank;
    return rank;
}

Tensor3 random_normal(Dims3 dims, std::uint64_t seed)
{
    Rng rng(seed);
    std::normal_distribution<double> gauss;
    Tensor3 t(dims);
    for (auto& v : t.data()) v = gauss(rng);
    return t;
}

Tensor3 random_tucker(Dims3 dims, TuckerSpec const& spec)
{
    for (std::size_t n = 0; n < 3; ++n) {
        if (spec.core_dims[n] < 1 || spec.core_dims[n] > dims[n])
            throw InvalidArgument("random_tucker: core extent out of range for mode " + std::to_string(n + 1));
    }
    Rng rng(spec.seed);
    std::normal_distribution<double> gauss;
    Tensor3 x(spec.core_dims);
    for (auto& v : x.data()) v = gauss(rng);
    for (int mode = 1; mode <= 3; ++mode) {
        auto const n = static_cast<std::size_t>(mode - 1);
        Matrix factor(static_cast<Eigen::Index>(dims[n]), static_cast<Eigen::Index>(spec.core_dims[n]));
        for (Eigen::Index c = 0; c < factor.cols(); ++c)
            for (Eigen::Index r = 0; r < factor.rows(); ++r) factor(r, c) = gauss(rng);
        x = mode_n_product(x, factor, mode);
    }
    double const norm = frobenius_norm(x);
    if (norm > 0.0) x *= 1.0 / norm;
    return x;
}

} // namespace hnn
