#include "hnn/prox.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "hnn/error.hpp"

namespace hnn {
namespace {

void require_finite(Eigen::Ref<Matrix const> const& a, char const* what)
{
    if (!a.allFinite()) throw DataError(std::string(what) + ": matrix has non-finite entries");
}

void require_threshold(double gamma, char const* what)
{
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument(std::string(what) + ": threshold must be finite and >= 0");
}

// Nuclear norm of a block's mode-3 unfolding. The (MN/4) x S view is its transpose.
double block_nuclear_norm(Tensor3 const& block)
{
    if (block.empty()) return 0.0;
    Eigen::BDCSVD<Matrix> solver(block.pixels_by_band());
    return solver.singularValues().sum();
}

} // namespace

SvdFactors svd(Matrix const& a)
{
    require_finite(a, "svd");
    Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {solver.matrixU(), solver.singularValues(), solver.matrixV().transpose()};
}

void soft_threshold(std::span<double> values, double gamma)
{
    require_threshold(gamma, "soft_threshold");
    for (auto& v : values) v = soft_threshold(v, gamma);
}

Tensor3 soft_threshold(Tensor3 t, double gamma)
{
    soft_threshold(t.data(), gamma);
    return t;
}

double svt_inplace(Eigen::Ref<Matrix> a, double tau)
{
    require_threshold(tau, "svt");
    require_finite(a, "svt");
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector const& sigma = solver.singularValues();
    Eigen::Index kept = 0;
    while (kept < sigma.size() && sigma(kept) > tau) ++kept;
    if (kept == 0) {
        a.setZero();
        return 0.0;
    }
    Vector const shrunk = sigma.head(kept).array() - tau;
    a.noalias() = solver.matrixU().leftCols(kept) * shrunk.asDiagonal() * solver.matrixV().leftCols(kept).transpose();
    return shrunk.sum();
}

Matrix svt(Matrix const& a, double tau)
{
    Matrix out = a;
    svt_inplace(out, tau);
    return out;
}

double nuclear_norm(Matrix const& a)
{
    require_finite(a, "nuclear_norm");
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> solver(a);
    return solver.singularValues().sum();
}

double hnn(WaveletBlocks const& blocks)
{
    double total = 0.0;
    for (auto const& b : blocks.b) total += block_nuclear_norm(b);
    return total;
}

double hnn(Tensor3 const& t)
{
    if (!t.all_finite()) throw DataError("hnn: tensor has non-finite entries");
    return hnn(fhwt2(t));
}

} // namespace hnn
