#include "hnn/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hnn/error.hpp"
#include "hnn/haar.hpp"
#include "hnn/prox.hpp"

namespace hnn {
namespace {

// Shared ADMM loop. `update_e` overwrites E from R = M - X + Gamma5 / mu_a and
// returns the E-part of the objective.
template <typename EUpdate>
RestorationResult run_admm(Tensor3 const& m, Tensor3 x, SolverConfig const& cfg, EUpdate&& update_e,
                           IterationObserver const& observer)
{
    Dims3 const dims = m.dims();
    double const m_norm = frobenius_norm(m);
    double const scale = m_norm > 0.0 ? m_norm : 1.0;

    Tensor3 e(dims);
    Tensor3 gamma5(dims);
    Tensor3 r(dims);
    WaveletBlocks fx = fhwt2(x);
    WaveletBlocks b = fx;
    WaveletBlocks gamma(dims);
    WaveletBlocks w(dims);

    double mu_a = cfg.mu_a0.value_or(1.0 / scale);
    double mu_b = cfg.mu_b0.value_or(1.0 / scale);

    RestorationResult result;
    result.trace.reserve(static_cast<std::size_t>(cfg.max_iter));

    for (int it = 1; it <= cfg.max_iter; ++it) {
        // E-step on R = M - X + Gamma5 / mu_a.
        r.vec() = m.vec() - x.vec() + gamma5.vec() / mu_a;
        double const e_objective = update_e(r, e, mu_a);

        // B-step: SVT of each mode-3 unfolding with threshold 1 / mu_b.
        double nuclear = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            b[i].vec() = fx[i].vec() - gamma[i].vec() / mu_b;
            nuclear += svt_inplace(b[i].pixels_by_band(), 1.0 / mu_b);
        }

        // X-step: closed form, using F^{-1} F = I.
        for (std::size_t i = 0; i < 4; ++i) w[i].vec() = mu_b * b[i].vec() + gamma[i].vec();
        Tensor3 x_next = ifhwt2(w);
        x_next.vec() += mu_a * (m.vec() - e.vec()) + gamma5.vec();
        x_next *= 1.0 / (mu_a + mu_b);

        // Multipliers.
        fx = fhwt2(x_next);
        IterationRecord rec;
        for (std::size_t i = 0; i < 4; ++i) {
            w[i].vec() = b[i].vec() - fx[i].vec();
            rec.block_residual = std::max(rec.block_residual, w[i].vec().norm());
            gamma[i].vec() += mu_b * w[i].vec();
        }
        r.vec() = m.vec() - x_next.vec() - e.vec();
        rec.feasibility = r.vec().norm();
        gamma5.vec() += mu_a * r.vec();

        double const x_norm = frobenius_norm(x);
        double const delta = (x_next.vec() - x.vec()).norm();
        rec.relative_change = x_norm > 0.0 ? delta / x_norm : (delta > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        rec.objective = nuclear + e_objective;
        rec.mu_a = mu_a;
        rec.mu_b = mu_b;
        result.trace.push_back(rec);

        x = std::move(x_next);
        result.iterations = it;
        if (observer) observer(IterationState{it, x, e, result.trace.back()});

        double const residual = std::max(rec.feasibility, rec.block_residual) / scale;
        if (residual < cfg.tol && rec.relative_change < cfg.tol) {
            result.converged = true;
            break;
        }
        mu_a = std::min(mu_a * cfg.rho, cfg.mu_cap);
        mu_b = std::min(mu_b * cfg.rho, cfg.mu_cap);
    }

    result.x = std::move(x);
    result.e = std::move(e);
    return result;
}

} // namespace

void SolverConfig::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (mu_a0 && !positive(*mu_a0)) throw InvalidArgument("mu_a0 must be finite and > 0");
    if (mu_b0 && !positive(*mu_b0)) throw InvalidArgument("mu_b0 must be finite and > 0");
    if (!(std::isfinite(rho) && rho > 1.0)) throw InvalidArgument("rho must be finite and > 1");
    if (lambda && !positive(*lambda)) throw InvalidArgument("lambda must be finite and > 0");
    if (max_iter < 1) throw InvalidArgument("max_iter must be positive");
    if (!positive(tol)) throw InvalidArgument("tol must be finite and > 0");
    if (!positive(mu_cap)) throw InvalidArgument("mu_cap must be finite and > 0");
}

double auto_lambda(Dims3 const& dims)
{
    double const n1 = std::max(static_cast<double>(dims[0] * dims[1]) / 4.0, static_cast<double>(dims[2]));
    return 4.0 / std::sqrt(n1);
}

RestorationResult hnn_mc(Tensor3 const& m, Mask const& mask, SolverConfig const& cfg, IterationObserver const& observer)
{
    cfg.validate();
    require_even_spatial(m.dims());
    if (mask.dims() != m.dims()) throw DimensionError("hnn_mc: mask extents differ from observation");
    if (mask.count() == 0) throw DataError("hnn_mc: mask has no observed entries");
    for (Index n = 0; n < m.size(); ++n)
        if (mask[n] && !std::isfinite(m[n])) throw DataError("hnn_mc: observed entry is not finite");

    Tensor3 observed = project(m, mask);
    auto update_e = [&mask](Tensor3 const& r, Tensor3& e, double) {
        for (Index n = 0; n < r.size(); ++n) e[n] = mask[n] ? 0.0 : r[n];
        return 0.0;
    };
    RestorationResult result = run_admm(observed, observed, cfg, update_e, observer);

    for (Index n = 0; n < observed.size(); ++n)
        if (mask[n]) result.x[n] = observed[n];
    return result;
}

RestorationResult hnn_rpca(Tensor3 const& m, SolverConfig const& cfg, IterationObserver const& observer)
{
    cfg.validate();
    require_even_spatial(m.dims());
    if (!m.all_finite()) throw DataError("hnn_rpca: observation has non-finite entries");

    double const lambda = cfg.lambda.value_or(auto_lambda(m.dims()));
    auto update_e = [lambda](Tensor3 const& r, Tensor3& e, double mu_a) {
        double const gamma = lambda / mu_a;
        double l1 = 0.0;
        for (Index n = 0; n < r.size(); ++n) {
            e[n] = soft_threshold(r[n], gamma);
            l1 += std::abs(e[n]);
        }
        return lambda * l1;
    };
    RestorationResult result = run_admm(m, m, cfg, update_e, observer);
    result.lambda = lambda;
    return result;
}

double objective_mc(Tensor3 const& x) { return hnn(x); }

double objective_rpca(Tensor3 const& x, Tensor3 const& e, double lambda)
{
    if (x.dims() != e.dims()) throw DimensionError("objective_rpca: x and e extents differ");
    double const l1 = e.vec().lpNorm<1>();
    return lambda == 0.0 ? hnn(x) : hnn(x) + lambda * l1;
}

} // namespace hnn
