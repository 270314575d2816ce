#pragma once

// Independent reference computations for tests. Everything here uses plain
// loops over the (i, j, k) index space and never calls the code under test
// beyond element access.

#include <cmath>
#include <cstdint>
#include <random>

#include "hnn/tensor.hpp"

namespace hnn::oracle {

inline Tensor3 random_tensor(Dims3 dims, std::uint64_t seed, double lo = -1.0, double hi = 1.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    Tensor3 t(dims);
    for (auto& v : t.data()) v = u(rng);
    return t;
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix a(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) a(r, c) = g(rng);
    return a;
}

/// c(i..j..) = sum_{i_n} a(..i_n..) b(j, i_n), written out per mode.
inline Tensor3 mode_product_loops(Tensor3 const& a, Matrix const& b, int mode)
{
    Dims3 d = a.dims();
    Dims3 od = d;
    od[static_cast<std::size_t>(mode - 1)] = static_cast<Index>(b.rows());
    Tensor3 c(od);
    for (Index k = 0; k < od[2]; ++k)
        for (Index j = 0; j < od[1]; ++j)
            for (Index i = 0; i < od[0]; ++i) {
                double s = 0.0;
                Index const len = d[static_cast<std::size_t>(mode - 1)];
                for (Index n = 0; n < len; ++n) {
                    double av = 0.0;
                    double bv = 0.0;
                    if (mode == 1) {
                        av = a(n, j, k);
                        bv = b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n));
                    } else if (mode == 2) {
                        av = a(i, n, k);
                        bv = b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n));
                    } else {
                        av = a(i, j, n);
                        bv = b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
                    }
                    s += av * bv;
                }
                c(i, j, k) = s;
            }
    return c;
}

inline double sum_of_squares(Tensor3 const& t)
{
    double s = 0.0;
    for (Index k = 0; k < t.bands(); ++k)
        for (Index j = 0; j < t.cols(); ++j)
            for (Index i = 0; i < t.rows(); ++i) s += t(i, j, k) * t(i, j, k);
    return s;
}

inline double max_abs_diff(Tensor3 const& a, Tensor3 const& b)
{
    double m = 0.0;
    for (Index n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

inline double rel_diff(Tensor3 const& a, Tensor3 const& b)
{
    return std::sqrt(sum_of_squares(a - b) / std::max(sum_of_squares(b), 1e-300));
}

/// Loop MSE -> PSNR.
inline double psnr_loops(Tensor3 const& x, Tensor3 const& ref, double peak)
{
    double s = 0.0;
    for (Index n = 0; n < x.size(); ++n) s += (x[n] - ref[n]) * (x[n] - ref[n]);
    double const mse = s / static_cast<double>(x.size());
    return 10.0 * std::log10(peak * peak / mse);
}

inline double ergas_loops(Tensor3 const& x, Tensor3 const& ref)
{
    double acc = 0.0;
    for (Index k = 0; k < x.bands(); ++k) {
        double se = 0.0;
        double mean = 0.0;
        for (Index j = 0; j < x.cols(); ++j)
            for (Index i = 0; i < x.rows(); ++i) {
                se += (x(i, j, k) - ref(i, j, k)) * (x(i, j, k) - ref(i, j, k));
                mean += ref(i, j, k);
            }
        double const px = static_cast<double>(x.rows() * x.cols());
        double const rmse = std::sqrt(se / px);
        mean /= px;
        acc += (rmse / mean) * (rmse / mean);
    }
    return 100.0 * std::sqrt(acc / static_cast<double>(x.bands()));
}

inline double sam_loops(Tensor3 const& x, Tensor3 const& ref)
{
    double total = 0.0;
    int used = 0;
    for (Index j = 0; j < x.cols(); ++j)
        for (Index i = 0; i < x.rows(); ++i) {
            double dot = 0.0, nx = 0.0, nr = 0.0;
            for (Index k = 0; k < x.bands(); ++k) {
                dot += x(i, j, k) * ref(i, j, k);
                nx += x(i, j, k) * x(i, j, k);
                nr += ref(i, j, k) * ref(i, j, k);
            }
            if (nx == 0.0 || nr == 0.0) continue;
            double c = dot / std::sqrt(nx * nr);
            c = std::max(-1.0, std::min(1.0, c));
            total += std::acos(c);
            ++used;
        }
    return total / used;
}

} // namespace hnn::oracle
