#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hnn/mask.hpp"
#include "hnn/solvers.hpp"
#include "hnn/tensor.hpp"

namespace hnn {

// ---------------------------------------------------------------------------
// Noise simulation
// ---------------------------------------------------------------------------

/// Parameters of the six hyperspectral noise scenarios. Standard deviations are
/// on the 0-255 scale and divided by 255 when applied to unit-range data.
///
///   1  i.i.d. Gaussian, sigma
///   2  Gaussian with per-band sigma ~ U[sigma_range]
///   3  case 2 + salt-and-pepper impulses on band_fraction of the bands
///   4  case 2 + stripes: constant offsets in U[-0.25, 0.25] on whole columns
///   5  case 2 + deadlines: whole columns set to zero
///   6  case 2 + impulse, stripe and deadline, each on its own band subset
///
/// Each corrupted band draws its ratio p ~ U[ratio_range].
struct NoiseCase {
    int id = 1;
    double sigma = 75.0;
    std::pair<double, double> sigma_range{30.0, 100.0};
    std::pair<double, double> ratio_range{0.05, 0.20};
    double band_fraction = 1.0 / 3.0;
    std::uint64_t seed = 0;

    static NoiseCase preset(int id, std::uint64_t seed);
    void validate() const;
};

struct NoisyObservation {
    Tensor3 m;
    Mask support; // entries hit by impulse/stripe/deadline (or sparse) corruption
};

/// Corrupts unit-range data x. Deterministic in noise.seed.
NoisyObservation apply_noise(Tensor3 const& x, NoiseCase const& noise);

/// Adds +-magnitude (random sign) to round(fraction * size) uniformly chosen entries.
NoisyObservation sparse_corruption(Tensor3 const& x, double fraction, double magnitude, std::uint64_t seed);

/// Uniform mask with exactly round(rate * M*N*S) observed entries, drawn without replacement.
Mask random_mask(Dims3 dims, double rate, std::uint64_t seed);

/// Fills unobserved entries with the mean of the observed ones.
Tensor3 mean_fill(Tensor3 const& m, Mask const& mask);

double relative_error(Tensor3 const& estimate, Tensor3 const& truth);

// ---------------------------------------------------------------------------
// Phase transitions
// ---------------------------------------------------------------------------

enum class Problem { Completion, RobustPca };

/// Parses "mc" / "rpca".
Problem parse_problem(std::string const& name);
char const* to_string(Problem p);

/// Second axis is the sampling rate (completion) or the corrupted-entry
/// fraction (robust PCA, magnitudes +-0.5 of the data range).
struct PhaseGrid {
    Dims3 dims{30, 30, 30};
    std::vector<Index> ranks;
    std::vector<double> axis2;
    int repeats = 10;
    double threshold = 0.1;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
};

/// One synthetic recovery problem.
struct TrialInstance {
    Problem problem = Problem::Completion;
    Index rank = 1;
    double axis2 = 0.0;
    int repeat = 0;
    Tensor3 truth;
    Tensor3 observation;
    Mask mask;    // observed set (completion) or corruption support (robust PCA)
};

/// Tensor seed depends on (seed, rank, repeat) so every column of a row shares
/// its ground truth; mask/corruption seed depends on the full cell.
TrialInstance make_trial(Problem problem, Dims3 dims, Index rank, double axis2, int repeat, std::uint64_t grid_seed);

struct TrialOutcome {
    double relative_error = 0.0;
    bool solved = false; // false when the solver threw
    bool converged = false;
    int iterations = 0;
};

/// Optional instrumentation. Hooks may be called from several threads when
/// PhaseGrid::threads > 1.
struct PhaseMapHooks {
    /// Returns a per-iteration observer for this trial (may return an empty function).
    std::function<IterationObserver(TrialInstance const&)> observer;
    /// Called once per trial after the solve.
    std::function<void(TrialInstance const&, RestorationResult const&, TrialOutcome const&)> on_trial;
};

struct PhaseMap {
    Problem problem = Problem::Completion;
    std::vector<Index> ranks;
    std::vector<double> axis2;
    std::vector<double> success;    // ranks.size() x axis2.size(), row-major
    std::vector<double> mean_error; // same layout

    [[nodiscard]] double rate(std::size_t r, std::size_t c) const { return success[r * axis2.size() + c]; }
    [[nodiscard]] double error(std::size_t r, std::size_t c) const { return mean_error[r * axis2.size() + c]; }

    /// Header row "rank,<axis2...>" then one row per rank.
    [[nodiscard]] std::string to_csv() const;
};

/// Success rate per (rank, axis2) cell: fraction of repeats with relative
/// error below grid.threshold. A throwing solver counts as a failed trial.
PhaseMap phase_map(PhaseGrid const& grid, Problem problem, SolverConfig const& cfg, PhaseMapHooks const& hooks = {});

/// Completion phase map of the mean_fill baseline.
PhaseMap mean_fill_phase_map(PhaseGrid const& grid);

// ---------------------------------------------------------------------------
// Multitemporal data
// ---------------------------------------------------------------------------

/// Dense M x N x C x T array, first index fastest.
struct Tensor4 {
    std::array<Index, 4> dims{0, 0, 0, 0};
    std::vector<double> data;

    Tensor4() = default;
    explicit Tensor4(std::array<Index, 4> d) : dims(d), data(d[0] * d[1] * d[2] * d[3], 0.0) {}

    double& operator()(Index i, Index j, Index c, Index t)
    {
        return data[i + dims[0] * (j + dims[1] * (c + dims[2] * t))];
    }
    double operator()(Index i, Index j, Index c, Index t) const
    {
        return data[i + dims[0] * (j + dims[1] * (c + dims[2] * t))];
    }
};

/// M x N x C x T -> M x N x (C*T) with band index c + C*t (channel fastest).
Tensor3 multitemporal_reshape(Tensor4 const& t4);

/// Inverse of multitemporal_reshape.
Tensor4 multitemporal_unreshape(Tensor3 const& t3, Index channels, Index frames);

/// Piecewise-smooth video in [0.1, 0.9]. Every band is an affine mix of three
/// spatial patterns, so the (MN) x (C*T) band matrix has rank <= 4.
Tensor4 synthetic_video(std::array<Index, 4> dims, std::uint64_t seed);

/// Per-frame elliptical cloud masks (shared by all channels of a frame), each
/// covering at most max_coverage of the frame's pixels. True means observed.
Mask cloud_mask(std::array<Index, 4> dims, double max_coverage, std::uint64_t seed);

} // namespace hnn
