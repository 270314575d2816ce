#pragma once

#include <limits>
#include <vector>

#include "hnn/tensor.hpp"

namespace hnn {

/// PSNR returned for identical inputs.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// 10 log10(peak^2 / MSE) over all entries.
double psnr(Tensor3 const& x, Tensor3 const& ref, double peak = 1.0);

/// PSNR of every frontal slice.
std::vector<double> band_psnr(Tensor3 const& x, Tensor3 const& ref, double peak = 1.0);

/// Mean over bands of 2-D SSIM with an 11x11 Gaussian window (sigma 1.5),
/// K1 = 0.01, K2 = 0.03, dynamic range 1, evaluated on valid window positions.
double ssim(Tensor3 const& x, Tensor3 const& ref);

/// 100 * sqrt(mean_b (RMSE_b / mean(ref_b))^2), resolution ratio 1.
double ergas(Tensor3 const& x, Tensor3 const& ref);

/// Mean spectral angle (radians) over pixels. Pixels where either spectrum
/// has zero norm are skipped; `skipped` receives their count.
double sam(Tensor3 const& x, Tensor3 const& ref, Index* skipped = nullptr);

struct MetricsReport {
    double psnr = 0.0;
    double ssim = 0.0;
    double ergas = 0.0;
    double sam = 0.0;
    std::vector<double> band_psnr;
};

MetricsReport evaluate(Tensor3 const& x, Tensor3 const& ref, double peak = 1.0);

} // namespace hnn
