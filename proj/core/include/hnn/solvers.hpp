#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hnn/mask.hpp"
#include "hnn/tensor.hpp"

namespace hnn {

/// ADMM hyperparameters shared by the completion and robust PCA solvers.
struct SolverConfig {
    std::optional<double> mu_a0;  // initial penalty on M = X + E; empty means 1 / ||P_Omega(M)||_F
    std::optional<double> mu_b0;  // initial penalty on B_i = F_i(X); empty means 1 / ||P_Omega(M)||_F
    double rho = 1.2;             // penalty growth factor, > 1
    std::optional<double> lambda; // sparse weight for RPCA; empty means 4/sqrt(max(MN/4, S))
    int max_iter = 200;
    double tol = 1e-4;            // relative residual and relative change threshold
    double mu_cap = 1e8;

    /// Throws InvalidArgument when any field is out of range.
    void validate() const;
};

/// 4 / sqrt(max(M*N/4, S)).
double auto_lambda(Dims3 const& dims);

/// One ADMM iteration's monitoring data.
struct IterationRecord {
    double feasibility = 0.0;     // ||M - X - E||_F
    double block_residual = 0.0;  // max_i ||B_i - F_i(X)||_F
    double objective = 0.0;       // sum_i ||(B_i)_(3)||_* (+ lambda ||E||_1), at the split variables
    double relative_change = 0.0; // ||X^k - X^{k-1}||_F / ||X^{k-1}||_F
    double mu_a = 0.0;
    double mu_b = 0.0;
};

struct RestorationResult {
    Tensor3 x; // recovered low-rank tensor
    Tensor3 e; // residual (MC) or sparse noise estimate (RPCA)
    int iterations = 0;
    bool converged = false;
    double lambda = 0.0; // resolved sparse weight; 0 for MC
    std::vector<IterationRecord> trace;
};

/// Read-only view of the solver state after one iteration. References are
/// valid only for the duration of the observer call.
struct IterationState {
    int iteration; // 1-based
    Tensor3 const& x;
    Tensor3 const& e;
    IterationRecord const& record;
};

using IterationObserver = std::function<void(IterationState const&)>;

/// HNN tensor completion: min ||X||_HNN s.t. X agrees with m on the mask.
/// Entries of m outside the mask are ignored and may be non-finite.
/// Non-convergence is reported through RestorationResult::converged.
RestorationResult hnn_mc(Tensor3 const& m, Mask const& mask, SolverConfig const& cfg = {},
                         IterationObserver const& observer = {});

/// HNN robust PCA: min ||X||_HNN + lambda ||E||_1 s.t. m = X + E.
RestorationResult hnn_rpca(Tensor3 const& m, SolverConfig const& cfg = {}, IterationObserver const& observer = {});

/// ||x||_HNN.
double objective_mc(Tensor3 const& x);

/// ||x||_HNN + lambda * sum |e|.
double objective_rpca(Tensor3 const& x, Tensor3 const& e, double lambda);

} // namespace hnn
