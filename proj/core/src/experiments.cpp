#include "hnn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "hnn/error.hpp"
#include "hnn/rng.hpp"

namespace hnn {
namespace {

constexpr double kScale255 = 255.0;

// First `count` entries of a uniformly shuffled 0..n-1.
std::vector<Index> sample_without_replacement(Index n, Index count, Rng& rng)
{
    std::vector<Index> idx(n);
    std::iota(idx.begin(), idx.end(), Index{0});
    count = std::min(count, n);
    for (Index i = 0; i < count; ++i) {
        std::uniform_int_distribution<Index> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(count);
    return idx;
}

Index rounded_count(double fraction, Index n)
{
    return static_cast<Index>(std::llround(fraction * static_cast<double>(n)));
}

void add_gaussian(Tensor3& m, Index band, double sigma, Rng& rng)
{
    if (sigma == 0.0) return;
    std::normal_distribution<double> gauss(0.0, sigma);
    for (auto& v : m.slice(band).reshaped()) v += gauss(rng);
}

std::vector<Index> pick_bands(Index bands, double fraction, Rng& rng)
{
    auto chosen = sample_without_replacement(bands, rounded_count(fraction, bands), rng);
    std::ranges::sort(chosen);
    return chosen;
}

double draw_ratio(NoiseCase const& noise, Rng& rng)
{
    std::uniform_real_distribution<double> u(noise.ratio_range.first, noise.ratio_range.second);
    return noise.ratio_range.first == noise.ratio_range.second ? noise.ratio_range.first : u(rng);
}

Index column_count(double ratio, Index cols)
{
    return std::clamp<Index>(rounded_count(ratio, cols), 1, cols);
}

void add_impulse(Tensor3& m, Mask& support, Index band, double ratio, Rng& rng)
{
    Index const plane = m.rows() * m.cols();
    std::bernoulli_distribution salt(0.5);
    for (Index p : sample_without_replacement(plane, rounded_count(ratio, plane), rng)) {
        Index const flat = band * plane + p;
        m[flat] = salt(rng) ? 1.0 : 0.0;
        support.set(flat, true);
    }
}

void add_stripes(Tensor3& m, Mask& support, Index band, double ratio, Rng& rng)
{
    std::uniform_real_distribution<double> offset(-0.25, 0.25);
    for (Index j : sample_without_replacement(m.cols(), column_count(ratio, m.cols()), rng)) {
        double const shift = offset(rng);
        for (Index i = 0; i < m.rows(); ++i) {
            m(i, j, band) += shift;
            support.set(m.offset(i, j, band), true);
        }
    }
}

void add_deadlines(Tensor3& m, Mask& support, Index band, double ratio, Rng& rng)
{
    for (Index j : sample_without_replacement(m.cols(), column_count(ratio, m.cols()), rng)) {
        for (Index i = 0; i < m.rows(); ++i) {
            m(i, j, band) = 0.0;
            support.set(m.offset(i, j, band), true);
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------

NoiseCase NoiseCase::preset(int id, std::uint64_t seed)
{
    NoiseCase c;
    c.id = id;
    c.seed = seed;
    c.validate();
    return c;
}

void NoiseCase::validate() const
{
    if (id < 1 || id > 6) throw InvalidArgument("noise case must be in 1..6");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("noise sigma must be finite and >= 0");
    if (!(sigma_range.first >= 0.0 && sigma_range.first <= sigma_range.second) || !std::isfinite(sigma_range.second))
        throw InvalidArgument("noise sigma range must satisfy 0 <= lo <= hi");
    if (!(ratio_range.first >= 0.0 && ratio_range.first <= ratio_range.second && ratio_range.second <= 1.0))
        throw InvalidArgument("noise ratio range must satisfy 0 <= lo <= hi <= 1");
    if (!(band_fraction >= 0.0 && band_fraction <= 1.0)) throw InvalidArgument("band fraction must lie in [0, 1]");
}

NoisyObservation apply_noise(Tensor3 const& x, NoiseCase const& noise)
{
    noise.validate();
    Rng rng(noise.seed);
    NoisyObservation out{x, Mask(x.dims())};

    if (noise.id == 1) {
        for (Index k = 0; k < x.bands(); ++k) add_gaussian(out.m, k, noise.sigma / kScale255, rng);
        return out;
    }

    std::uniform_real_distribution<double> band_sigma(noise.sigma_range.first, noise.sigma_range.second);
    for (Index k = 0; k < x.bands(); ++k) add_gaussian(out.m, k, band_sigma(rng) / kScale255, rng);

    bool const impulse = noise.id == 3 || noise.id == 6;
    bool const stripe = noise.id == 4 || noise.id == 6;
    bool const deadline = noise.id == 5 || noise.id == 6;
    if (impulse)
        for (Index k : pick_bands(x.bands(), noise.band_fraction, rng))
            add_impulse(out.m, out.support, k, draw_ratio(noise, rng), rng);
    if (stripe)
        for (Index k : pick_bands(x.bands(), noise.band_fraction, rng))
            add_stripes(out.m, out.support, k, draw_ratio(noise, rng), rng);
    if (deadline)
        for (Index k : pick_bands(x.bands(), noise.band_fraction, rng))
            add_deadlines(out.m, out.support, k, draw_ratio(noise, rng), rng);
    return out;
}

NoisyObservation sparse_corruption(Tensor3 const& x, double fraction, double magnitude, std::uint64_t seed)
{
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("corruption fraction must lie in [0, 1]");
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) throw InvalidArgument("corruption magnitude must be >= 0");
    Rng rng(seed);
    std::bernoulli_distribution sign(0.5);
    NoisyObservation out{x, Mask(x.dims())};
    for (Index n : sample_without_replacement(x.size(), rounded_count(fraction, x.size()), rng)) {
        out.m[n] += sign(rng) ? magnitude : -magnitude;
        out.support.set(n, true);
    }
    return out;
}

Mask random_mask(Dims3 dims, double rate, std::uint64_t seed)
{
    if (!(rate > 0.0 && rate <= 1.0)) throw InvalidArgument("sampling rate must lie in (0, 1]");
    Mask mask(dims);
    Rng rng(seed);
    for (Index n : sample_without_replacement(mask.size(), rounded_count(rate, mask.size()), rng)) mask.set(n, true);
    return mask;
}

Tensor3 mean_fill(Tensor3 const& m, Mask const& mask)
{
    if (m.dims() != mask.dims()) throw DimensionError("mean_fill: mask extents differ");
    if (mask.count() == 0) throw DataError("mean_fill: mask has no observed entries");
    double sum = 0.0;
    for (Index n = 0; n < m.size(); ++n)
        if (mask[n]) sum += m[n];
    double const mean = sum / static_cast<double>(mask.count());
    Tensor3 out = m;
    for (Index n = 0; n < m.size(); ++n)
        if (!mask[n]) out[n] = mean;
    return out;
}

double relative_error(Tensor3 const& estimate, Tensor3 const& truth)
{
    if (estimate.dims() != truth.dims()) throw DimensionError("relative_error: extents differ");
    double const denom = frobenius_norm(truth);
    double const num = (estimate.vec() - truth.vec()).norm();
    return denom > 0.0 ? num / denom : num;
}

// ---------------------------------------------------------------------------

Problem parse_problem(std::string const& name)
{
    if (name == "mc") return Problem::Completion;
    if (name == "rpca") return Problem::RobustPca;
    throw InvalidArgument("problem must be 'mc' or 'rpca', got '" + name + "'");
}

char const* to_string(Problem p) { return p == Problem::Completion ? "mc" : "rpca"; }

void PhaseGrid::validate() const
{
    if (ranks.empty() || axis2.empty()) throw InvalidArgument("phase grid needs at least one rank and one axis-2 value");
    for (Index r : ranks)
        if (r < 1 || r > *std::ranges::min_element(dims)) throw InvalidArgument("phase grid rank out of range");
    for (double v : axis2)
        if (!(v > 0.0 && v <= 1.0)) throw InvalidArgument("phase grid axis-2 values must lie in (0, 1]");
    if (repeats < 1) throw InvalidArgument("phase grid repeats must be positive");
    if (!(threshold > 0.0)) throw InvalidArgument("phase grid threshold must be positive");
}

TrialInstance make_trial(Problem problem, Dims3 dims, Index rank, double axis2, int repeat, std::uint64_t grid_seed)
{
    TrialInstance trial;
    trial.problem = problem;
    trial.rank = rank;
    trial.axis2 = axis2;
    trial.repeat = repeat;
    auto const rep = static_cast<std::uint64_t>(repeat);
    std::uint64_t const axis_bits = std::bit_cast<std::uint64_t>(axis2);
    trial.truth = random_tucker(dims, {{rank, rank, rank}, derive_seed(grid_seed, {0, rank, rep})});
    std::uint64_t const cell_seed = derive_seed(grid_seed, {1, rank, axis_bits, rep});
    if (problem == Problem::Completion) {
        trial.mask = random_mask(dims, axis2, cell_seed);
        trial.observation = project(trial.truth, trial.mask);
    } else {
        auto const [lo, hi] = std::ranges::minmax(trial.truth.data());
        auto noisy = sparse_corruption(trial.truth, axis2, 0.5 * (hi - lo), cell_seed);
        trial.observation = std::move(noisy.m);
        trial.mask = std::move(noisy.support);
    }
    return trial;
}

namespace {

TrialOutcome run_trial(TrialInstance const& trial, SolverConfig const& cfg, PhaseMapHooks const& hooks)
{
    TrialOutcome outcome;
    IterationObserver observer = hooks.observer ? hooks.observer(trial) : IterationObserver{};
    try {
        RestorationResult result = trial.problem == Problem::Completion
                                       ? hnn_mc(trial.observation, trial.mask, cfg, observer)
                                       : hnn_rpca(trial.observation, cfg, observer);
        outcome.solved = result.x.all_finite();
        outcome.converged = result.converged;
        outcome.iterations = result.iterations;
        outcome.relative_error = outcome.solved ? relative_error(result.x, trial.truth)
                                                : std::numeric_limits<double>::infinity();
        if (hooks.on_trial) hooks.on_trial(trial, result, outcome);
    } catch (Error const&) {
        outcome.solved = false;
        outcome.relative_error = std::numeric_limits<double>::infinity();
    }
    return outcome;
}

template <typename TrialFn>
PhaseMap sweep(PhaseGrid const& grid, Problem problem, TrialFn&& trial_fn)
{
    grid.validate();
    std::size_t const rows = grid.ranks.size();
    std::size_t const cols = grid.axis2.size();
    std::size_t const reps = static_cast<std::size_t>(grid.repeats);
    std::size_t const total = rows * cols * reps;
    std::vector<double> errors(total, 0.0);

    auto work = [&](std::size_t t) {
        std::size_t const rep = t % reps;
        std::size_t const cell = t / reps;
        std::size_t const c = cell % cols;
        std::size_t const r = cell / cols;
        TrialInstance trial = make_trial(problem, grid.dims, grid.ranks[r], grid.axis2[c], static_cast<int>(rep), grid.seed);
        errors[t] = trial_fn(trial);
    };

    unsigned const threads = std::max(1u, grid.threads);
    if (threads == 1) {
        for (std::size_t t = 0; t < total; ++t) work(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < total; t = next++) work(t);
            });
    }

    PhaseMap map;
    map.problem = problem;
    map.ranks = grid.ranks;
    map.axis2 = grid.axis2;
    map.success.assign(rows * cols, 0.0);
    map.mean_error.assign(rows * cols, 0.0);
    for (std::size_t cell = 0; cell < rows * cols; ++cell) {
        int hits = 0;
        double sum = 0.0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            double const e = errors[cell * reps + rep];
            if (e < grid.threshold) ++hits;
            sum += e;
        }
        map.success[cell] = static_cast<double>(hits) / static_cast<double>(reps);
        map.mean_error[cell] = sum / static_cast<double>(reps);
    }
    return map;
}

} // namespace

PhaseMap phase_map(PhaseGrid const& grid, Problem problem, SolverConfig const& cfg, PhaseMapHooks const& hooks)
{
    cfg.validate();
    return sweep(grid, problem, [&](TrialInstance const& trial) { return run_trial(trial, cfg, hooks).relative_error; });
}

PhaseMap mean_fill_phase_map(PhaseGrid const& grid)
{
    return sweep(grid, Problem::Completion, [](TrialInstance const& trial) {
        return relative_error(mean_fill(trial.observation, trial.mask), trial.truth);
    });
}

std::string PhaseMap::to_csv() const
{
    std::ostringstream out;
    out << "rank";
    for (double v : axis2) out << ',' << v;
    out << '\n';
    out << std::fixed << std::setprecision(4);
    for (std::size_t r = 0; r < ranks.size(); ++r) {
        out << ranks[r];
        for (std::size_t c = 0; c < axis2.size(); ++c) out << ',' << rate(r, c);
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------

Tensor3 multitemporal_reshape(Tensor4 const& t4)
{
    auto const [m, n, c, t] = t4.dims;
    // First-index-fastest storage makes (c, t) -> c + C*t a relabelling of the same buffer.
    return Tensor3({m, n, c * t}, t4.data);
}

Tensor4 multitemporal_unreshape(Tensor3 const& t3, Index channels, Index frames)
{
    if (channels * frames != t3.bands()) throw DimensionError("multitemporal_unreshape: C*T does not match band count");
    Tensor4 out({t3.rows(), t3.cols(), channels, frames});
    std::ranges::copy(t3.data(), out.data.begin());
    return out;
}

Tensor4 synthetic_video(std::array<Index, 4> dims, std::uint64_t seed)
{
    auto const [m, n, channels, frames] = dims;
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    constexpr int kPatterns = 3;

    // Smooth spatial patterns: a plane, a pair of Gaussian bumps, and a step edge blended in.
    std::vector<Matrix> patterns;
    for (int r = 0; r < kPatterns; ++r) {
        Matrix p(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
        double const gx = u(rng) - 0.5;
        double const gy = u(rng) - 0.5;
        double const cx = u(rng) * static_cast<double>(m);
        double const cy = u(rng) * static_cast<double>(n);
        double const width = 0.15 * static_cast<double>(std::max(m, n)) * (1.0 + u(rng));
        double const edge = (0.3 + 0.4 * u(rng)) * static_cast<double>(n);
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < m; ++i) {
                double const x = static_cast<double>(i) / static_cast<double>(m);
                double const y = static_cast<double>(j) / static_cast<double>(n);
                double const dx = static_cast<double>(i) - cx;
                double const dy = static_cast<double>(j) - cy;
                double v = gx * x + gy * y + std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
                if (r == 0 && static_cast<double>(j) > edge) v += 0.5;
                p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            }
        }
        patterns.push_back(std::move(p));
    }

    Matrix spectral(static_cast<Eigen::Index>(channels), kPatterns);
    for (auto& v : spectral.reshaped()) v = 0.2 + u(rng);
    std::array<double, kPatterns> phase{};
    for (auto& p : phase) p = 6.283185307179586 * u(rng);

    Tensor4 video(dims);
    for (Index t = 0; t < frames; ++t) {
        for (Index c = 0; c < channels; ++c) {
            Matrix band = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
            for (int r = 0; r < kPatterns; ++r) {
                double const temporal = 1.0 + 0.3 * std::sin(0.7 * static_cast<double>(t) + phase[static_cast<std::size_t>(r)]);
                band += spectral(static_cast<Eigen::Index>(c), r) * temporal * patterns[static_cast<std::size_t>(r)];
            }
            for (Index j = 0; j < n; ++j)
                for (Index i = 0; i < m; ++i) video(i, j, c, t) = band(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    auto const [lo, hi] = std::ranges::minmax(video.data);
    double const span = hi > lo ? hi - lo : 1.0;
    for (auto& v : video.data) v = 0.1 + 0.8 * (v - lo) / span;
    return video;
}

Mask cloud_mask(std::array<Index, 4> dims, double max_coverage, std::uint64_t seed)
{
    if (!(max_coverage > 0.0 && max_coverage < 1.0)) throw InvalidArgument("cloud coverage must lie in (0, 1)");
    auto const [m, n, channels, frames] = dims;
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Mask mask({m, n, channels * frames}, true);
    double const pixels = static_cast<double>(m * n);
    for (Index t = 0; t < frames; ++t) {
        // Ellipse area pi*a*b targets 60-100% of the coverage budget.
        double const area = max_coverage * pixels * (0.6 + 0.4 * u(rng));
        double const aspect = 0.6 + 0.8 * u(rng);
        double const a = std::sqrt(area * aspect / 3.141592653589793);
        double const b = std::sqrt(area / (aspect * 3.141592653589793));
        double const ci = u(rng) * static_cast<double>(m);
        double const cj = u(rng) * static_cast<double>(n);
        std::vector<Index> covered;
        for (Index j = 0; j < n; ++j) {
            for (Index i = 0; i < m; ++i) {
                double const di = (static_cast<double>(i) - ci) / a;
                double const dj = (static_cast<double>(j) - cj) / b;
                if (di * di + dj * dj <= 1.0) covered.push_back(i + m * j);
            }
        }
        covered.resize(std::min<Index>(covered.size(), static_cast<Index>(std::floor(max_coverage * pixels))));
        for (Index c = 0; c < channels; ++c) {
            Index const band = c + channels * t;
            for (Index p : covered) mask.set(band * m * n + p, false);
        }
    }
    return mask;
}

} // namespace hnn
