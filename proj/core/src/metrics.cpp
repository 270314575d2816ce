#include "hnn/metrics.hpp"

#include <cmath>

#include "hnn/error.hpp"

namespace hnn {
namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void require_same(Tensor3 const& x, Tensor3 const& ref, char const* what)
{
    if (x.dims() != ref.dims()) throw DimensionError(std::string(what) + ": tensor extents differ");
    if (x.empty()) throw DimensionError(std::string(what) + ": empty tensors");
}

double to_psnr(double mse, double peak)
{
    if (mse == 0.0) return kInfinitePsnr;
    return 10.0 * std::log10(peak * peak / mse);
}

Eigen::VectorXd gaussian_window()
{
    Eigen::VectorXd w(kWindow);
    for (int i = 0; i < kWindow; ++i) {
        double const d = i - kWindow / 2;
        w(i) = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
    }
    return w / w.sum();
}

// Valid-mode separable filtering with the 1-D window along both axes.
Matrix filter_valid(Matrix const& a, Eigen::VectorXd const& w)
{
    Eigen::Index const rows = a.rows() - kWindow + 1;
    Eigen::Index const cols = a.cols() - kWindow + 1;
    Matrix tmp = Matrix::Zero(rows, a.cols());
    for (int t = 0; t < kWindow; ++t) tmp += w(t) * a.middleRows(t, rows);
    Matrix out = Matrix::Zero(rows, cols);
    for (int t = 0; t < kWindow; ++t) out += w(t) * tmp.middleCols(t, cols);
    return out;
}

double band_ssim(Matrix const& x, Matrix const& y, Eigen::VectorXd const& w)
{
    Matrix const mx = filter_valid(x, w);
    Matrix const my = filter_valid(y, w);
    Matrix const sxx = filter_valid(x.cwiseProduct(x), w) - mx.cwiseProduct(mx);
    Matrix const syy = filter_valid(y.cwiseProduct(y), w) - my.cwiseProduct(my);
    Matrix const sxy = filter_valid(x.cwiseProduct(y), w) - mx.cwiseProduct(my);
    auto const num = (2.0 * mx.cwiseProduct(my).array() + kC1) * (2.0 * sxy.array() + kC2);
    auto const den = (mx.array().square() + my.array().square() + kC1) * (sxx.array() + syy.array() + kC2);
    return (num / den).mean();
}

} // namespace

double psnr(Tensor3 const& x, Tensor3 const& ref, double peak)
{
    require_same(x, ref, "psnr");
    if (!(peak > 0.0)) throw InvalidArgument("psnr: peak must be positive");
    double const mse = (x.vec() - ref.vec()).squaredNorm() / static_cast<double>(x.size());
    return to_psnr(mse, peak);
}

std::vector<double> band_psnr(Tensor3 const& x, Tensor3 const& ref, double peak)
{
    require_same(x, ref, "band_psnr");
    if (!(peak > 0.0)) throw InvalidArgument("band_psnr: peak must be positive");
    std::vector<double> out;
    out.reserve(x.bands());
    for (Index k = 0; k < x.bands(); ++k) {
        double const mse = (x.slice(k) - ref.slice(k)).squaredNorm() / static_cast<double>(x.rows() * x.cols());
        out.push_back(to_psnr(mse, peak));
    }
    return out;
}

double ssim(Tensor3 const& x, Tensor3 const& ref)
{
    require_same(x, ref, "ssim");
    if (x.rows() < kWindow || x.cols() < kWindow)
        throw DimensionError("ssim: bands must be at least 11x11");
    Eigen::VectorXd const w = gaussian_window();
    double total = 0.0;
    for (Index k = 0; k < x.bands(); ++k) total += band_ssim(x.slice(k), ref.slice(k), w);
    return total / static_cast<double>(x.bands());
}

double ergas(Tensor3 const& x, Tensor3 const& ref)
{
    require_same(x, ref, "ergas");
    double const pixels = static_cast<double>(x.rows() * x.cols());
    double acc = 0.0;
    for (Index k = 0; k < x.bands(); ++k) {
        double const mean = ref.slice(k).sum() / pixels;
        if (mean == 0.0) throw DataError("ergas: reference band " + std::to_string(k) + " has zero mean");
        double const rmse = std::sqrt((x.slice(k) - ref.slice(k)).squaredNorm() / pixels);
        acc += (rmse / mean) * (rmse / mean);
    }
    return 100.0 * std::sqrt(acc / static_cast<double>(x.bands()));
}

double sam(Tensor3 const& x, Tensor3 const& ref, Index* skipped)
{
    require_same(x, ref, "sam");
    Index const pixels = x.rows() * x.cols();
    Index const bands = x.bands();
    Vector u(static_cast<Eigen::Index>(bands));
    Vector v(static_cast<Eigen::Index>(bands));
    double total = 0.0;
    Index used = 0;
    for (Index p = 0; p < pixels; ++p) {
        for (Index k = 0; k < bands; ++k) {
            u(static_cast<Eigen::Index>(k)) = x[p + k * pixels];
            v(static_cast<Eigen::Index>(k)) = ref[p + k * pixels];
        }
        double const nu = u.norm();
        double const nv = v.norm();
        if (nu == 0.0 || nv == 0.0) continue;
        u /= nu;
        v /= nv;
        // 2 atan2(|u - v|, |u + v|) equals arccos(u.v) but stays accurate near 0 and pi.
        total += 2.0 * std::atan2((u - v).norm(), (u + v).norm());
        ++used;
    }
    if (skipped) *skipped = pixels - used;
    if (used == 0) throw DataError("sam: every pixel spectrum has zero norm");
    return total / static_cast<double>(used);
}

MetricsReport evaluate(Tensor3 const& x, Tensor3 const& ref, double peak)
{
    MetricsReport r;
    r.psnr = psnr(x, ref, peak);
    r.ssim = ssim(x, ref);
    r.ergas = ergas(x, ref);
    r.sam = sam(x, ref);
    r.band_psnr = band_psnr(x, ref, peak);
    return r;
}

} // namespace hnn
