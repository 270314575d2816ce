#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace hnn {

using Index = std::size_t;
using Dims3 = std::array<Index, 3>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real 3-order tensor of extents (M, N, S).
///
/// Storage is column-major with the first index fastest: entry (i, j, k)
/// lives at i + M * (j + N * k). Each frontal slice (:, :, k) is therefore
/// a contiguous column-major M x N matrix, which the Haar transform and the
/// mode-3 unfolding exploit directly.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(Dims3 dims, double fill = 0.0);
    Tensor3(Dims3 dims, std::vector<double> data);

    static Tensor3 zeros(Dims3 dims) { return Tensor3(dims, 0.0); }
    static Tensor3 ones(Dims3 dims) { return Tensor3(dims, 1.0); }

    [[nodiscard]] Dims3 const& dims() const noexcept { return dims_; }
    [[nodiscard]] Index dim(int mode) const { return dims_.at(static_cast<std::size_t>(mode - 1)); }
    [[nodiscard]] Index rows() const noexcept { return dims_[0]; }
    [[nodiscard]] Index cols() const noexcept { return dims_[1]; }
    [[nodiscard]] Index bands() const noexcept { return dims_[2]; }
    [[nodiscard]] Index size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] Index offset(Index i, Index j, Index k) const noexcept
    {
        return i + dims_[0] * (j + dims_[1] * k);
    }
    double& operator()(Index i, Index j, Index k) noexcept { return data_[offset(i, j, k)]; }
    double operator()(Index i, Index j, Index k) const noexcept { return data_[offset(i, j, k)]; }
    double& operator[](Index flat) noexcept { return data_[flat]; }
    double operator[](Index flat) const noexcept { return data_[flat]; }

    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<double const> data() const noexcept { return data_; }

    /// Whole tensor viewed as a flat vector.
    Eigen::Map<Vector> vec() { return {data_.data(), static_cast<Eigen::Index>(data_.size())}; }
    Eigen::Map<Vector const> vec() const
    {
        return {data_.data(), static_cast<Eigen::Index>(data_.size())};
    }

    /// Frontal slice k as an M x N matrix view.
    Eigen::Map<Matrix> slice(Index k);
    Eigen::Map<Matrix const> slice(Index k) const;

    /// (MN) x S view whose columns are the vectorised frontal slices; this is
    /// the transpose of the mode-3 unfolding.
    Eigen::Map<Matrix> pixels_by_band();
    Eigen::Map<Matrix const> pixels_by_band() const;

    [[nodiscard]] bool all_finite() const noexcept;

    Tensor3& operator+=(Tensor3 const& other);
    Tensor3& operator-=(Tensor3 const& other);
    Tensor3& operator*=(double s) noexcept;

    friend bool operator==(Tensor3 const&, Tensor3 const&) = default;

private:
    Dims3 dims_{0, 0, 0};
    std::vector<double> data_;
};

Tensor3 operator+(Tensor3 a, Tensor3 const& b);
Tensor3 operator-(Tensor3 a, Tensor3 const& b);
Tensor3 operator*(double s, Tensor3 a);

/// Mode-n unfolding (mode in {1,2,3}). Remaining indices vary with the
/// lower-numbered mode fastest, so unfold(t,1) is M x (N*S) with column j + N*k.
Matrix unfold(Tensor3 const& t, int mode);

/// Inverse of unfold for a tensor of extents `dims`.
Tensor3 fold(Matrix const& a, int mode, Dims3 dims);

/// t x_n B: replaces extent n by B.rows(). Requires B.cols() == dim n.
Tensor3 mode_n_product(Tensor3 const& t, Matrix const& b, int mode);

double frobenius_norm(Tensor3 const& t);

/// Number of singular values of unfold(t, mode) strictly above tol * sigma_max.
Index numerical_n_rank(Tensor3 const& t, int mode, double tol = 1e-8);

/// Tucker core extents and RNG seed for random_tucker.
struct TuckerSpec {
    Dims3 core_dims{1, 1, 1};
    std::uint64_t seed = 0;
};

/// C x1 U1 x2 U2 x3 U3 with Gaussian core and factors, scaled to unit
/// Frobenius norm. Deterministic in spec.seed.
Tensor3 random_tucker(Dims3 dims, TuckerSpec const& spec);

/// Tensor with i.i.d. standard normal entries.
Tensor3 random_normal(Dims3 dims, std::uint64_t seed);

} // namespace hnn
