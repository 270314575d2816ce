#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hnn/error.hpp"
#include "hnn/experiments.hpp"
#include "hnn/haar.hpp"
#include "hnn/io.hpp"
#include "hnn/metrics.hpp"
#include "hnn/solvers.hpp"

namespace hnn::cli {
namespace {

struct SolverFlags {
    std::optional<double> mu_a;
    std::optional<double> mu_b;
    double rho = SolverConfig{}.rho;
    double tol = SolverConfig{}.tol;
    int max_iter = SolverConfig{}.max_iter;
    double mu_cap = SolverConfig{}.mu_cap;
    std::string lambda = "auto";

    void add_to(CLI::App& app, bool with_lambda)
    {
        app.add_option("--mu-a", mu_a, "Initial penalty on M = X + E (default 1/||M||_F)");
        app.add_option("--mu-b", mu_b, "Initial penalty on the wavelet split (default 1/||M||_F)");
        app.add_option("--rho", rho, "Penalty growth factor (> 1)")->capture_default_str();
        app.add_option("--tol", tol, "Relative stopping tolerance")->capture_default_str();
        app.add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
        app.add_option("--mu-cap", mu_cap, "Upper bound on both penalties")->capture_default_str();
        if (with_lambda) app.add_option("--lambda", lambda, "Sparse weight, a number or 'auto'")->capture_default_str();
    }

    [[nodiscard]] SolverConfig config() const
    {
        SolverConfig cfg;
        cfg.mu_a0 = mu_a;
        cfg.mu_b0 = mu_b;
        cfg.rho = rho;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.mu_cap = mu_cap;
        if (lambda != "auto") {
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(lambda, &used);
            } catch (std::exception const&) {
                used = 0;
            }
            if (used != lambda.size()) throw InvalidArgument("--lambda must be a number or 'auto'");
            cfg.lambda = value;
        }
        cfg.validate();
        return cfg;
    }
};

Dims3 to_dims(std::vector<Index> const& v)
{
    if (v.size() != 3) throw InvalidArgument("--dims expects M,N,S");
    for (Index d : v)
        if (d == 0) throw InvalidArgument("--dims entries must be positive");
    return {v[0], v[1], v[2]};
}

// Symmetric extension by one row/column where an extent is odd.
Tensor3 pad_even(Tensor3 const& t)
{
    Dims3 const d = t.dims();
    Dims3 const padded{d[0] + d[0] % 2, d[1] + d[1] % 2, d[2]};
    if (padded == d) return t;
    Tensor3 out(padded);
    for (Index k = 0; k < d[2]; ++k)
        for (Index j = 0; j < padded[1]; ++j)
            for (Index i = 0; i < padded[0]; ++i) out(i, j, k) = t(std::min(i, d[0] - 1), std::min(j, d[1] - 1), k);
    return out;
}

Tensor3 crop(Tensor3 const& t, Dims3 const& d)
{
    if (t.dims() == d) return t;
    Tensor3 out(d);
    for (Index k = 0; k < d[2]; ++k)
        for (Index j = 0; j < d[1]; ++j)
            for (Index i = 0; i < d[0]; ++i) out(i, j, k) = t(i, j, k);
    return out;
}

std::string format_number(double v)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

int report(RestorationResult const& result, std::ostream& err)
{
    auto const& last = result.trace.back();
    err << "iterations=" << result.iterations << " converged=" << (result.converged ? "yes" : "no")
        << " feasibility=" << format_number(last.feasibility) << " block_residual=" << format_number(last.block_residual)
        << '\n';
    return result.converged ? kOk : kNotConverged;
}

std::string block_path(std::string const& prefix, int i) { return prefix + ".b" + std::to_string(i) + ".hnt"; }

} // namespace

int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Haar nuclear norm tensor restoration"};
    app.require_subcommand(1);

    // inpaint
    auto* inpaint = app.add_subcommand("inpaint", "Complete missing entries with HNN-MC");
    std::string in_path, mask_path, out_path;
    bool pad = false;
    SolverFlags mc_flags;
    inpaint->add_option("--input", in_path, "Observed tensor")->required();
    inpaint->add_option("--mask", mask_path, "Mask tensor (nonzero = observed)")->required();
    inpaint->add_option("--out", out_path, "Recovered tensor")->required();
    inpaint->add_flag("--pad", pad, "Symmetric-pad odd spatial extents and crop afterwards");
    mc_flags.add_to(*inpaint, false);

    // denoise
    auto* denoise = app.add_subcommand("denoise", "Separate low-rank and sparse parts with HNN-RPCA");
    std::string sparse_path;
    SolverFlags rpca_flags;
    denoise->add_option("--input", in_path, "Noisy tensor")->required();
    denoise->add_option("--out", out_path, "Recovered low-rank tensor")->required();
    denoise->add_option("--sparse-out", sparse_path, "Optional output for the sparse component");
    denoise->add_flag("--pad", pad, "Symmetric-pad odd spatial extents and crop afterwards");
    rpca_flags.add_to(*denoise, true);

    // phase-map
    auto* phase = app.add_subcommand("phase-map", "Success-rate grid over rank and sampling rate / corruption");
    std::string problem_name;
    std::vector<Index> dims_list;
    PhaseGrid grid;
    SolverFlags phase_flags;
    phase->add_option("--problem", problem_name, "mc or rpca")->required()->check(CLI::IsMember({"mc", "rpca"}));
    phase->add_option("--dims", dims_list, "M,N,S")->delimiter(',')->required();
    phase->add_option("--ranks", grid.ranks, "Comma-separated Tucker ranks")->delimiter(',')->required();
    phase->add_option("--axis2", grid.axis2, "Comma-separated sampling rates or corruption fractions")->delimiter(',')->required();
    phase->add_option("--repeats", grid.repeats, "Trials per cell")->required();
    phase->add_option("--seed", grid.seed, "Grid seed")->required();
    phase->add_option("--out", out_path, "CSV output")->required();
    phase->add_option("--threshold", grid.threshold, "Success threshold on relative error")->capture_default_str();
    phase->add_option("--threads", grid.threads, "Worker threads")->capture_default_str();
    phase_flags.add_to(*phase, true);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Apply one of the six noise cases to unit-range data");
    int case_id = 1;
    std::uint64_t seed = 0;
    std::optional<double> sigma;
    std::string support_path;
    simulate->add_option("--case", case_id, "Noise case 1..6")->required()->check(CLI::Range(1, 6));
    simulate->add_option("--input", in_path, "Clean tensor")->required();
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_option("--out", out_path, "Noisy tensor")->required();
    simulate->add_option("--sigma", sigma, "Override the case-1 sigma (0-255 scale)");
    simulate->add_option("--support-out", support_path, "Optional mask of structured corruption");

    // mask
    auto* mask_cmd = app.add_subcommand("mask", "Uniform random observation mask");
    double rate = 0.0;
    mask_cmd->add_option("--rate", rate, "Sampling rate in (0, 1]")->required();
    mask_cmd->add_option("--dims", dims_list, "M,N,S")->delimiter(',')->required();
    mask_cmd->add_option("--seed", seed, "RNG seed")->required();
    mask_cmd->add_option("--out", out_path, "Mask tensor")->required();

    // metrics
    auto* metrics = app.add_subcommand("metrics", "PSNR, SSIM, ERGAS and SAM of a test tensor");
    std::string test_path, ref_path;
    double peak = 1.0;
    metrics->add_option("--test", test_path, "Tensor under test")->required();
    metrics->add_option("--ref", ref_path, "Reference tensor")->required();
    metrics->add_option("--peak", peak, "PSNR peak value")->capture_default_str();

    // transform
    auto* transform = app.add_subcommand("transform", "Slice-wise 2-D Haar transform");
    std::string prefix;
    bool inverse = false;
    transform->add_option("--input", in_path, "Tensor, or block prefix with --inverse")->required();
    transform->add_option("--out-prefix", prefix, "Output prefix")->required();
    transform->add_flag("--inverse", inverse, "Read <input>.b1..b4.hnt and write <out-prefix>.hnt");
    transform->add_flag("--pad", pad, "Symmetric-pad odd spatial extents before the forward transform");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (inpaint->parsed()) {
            SolverConfig const cfg = mc_flags.config();
            Tensor3 m = io::load(in_path);
            Mask mask = Mask::from_tensor(io::load(mask_path));
            if (mask.dims() != m.dims()) throw DimensionError("mask extents differ from input");
            Dims3 const original = m.dims();
            if (pad) {
                m = pad_even(m);
                mask = Mask::from_tensor(pad_even(mask.to_tensor()));
            }
            RestorationResult result = hnn_mc(m, mask, cfg);
            io::save(crop(result.x, original), out_path);
            return report(result, err);
        }
        if (denoise->parsed()) {
            SolverConfig const cfg = rpca_flags.config();
            Tensor3 m = io::load(in_path);
            Dims3 const original = m.dims();
            if (pad) m = pad_even(m);
            RestorationResult result = hnn_rpca(m, cfg);
            io::save(crop(result.x, original), out_path);
            if (!sparse_path.empty()) io::save(crop(result.e, original), sparse_path);
            return report(result, err);
        }
        if (phase->parsed()) {
            SolverConfig const cfg = phase_flags.config();
            grid.dims = to_dims(dims_list);
            PhaseMap const map = phase_map(grid, parse_problem(problem_name), cfg);
            std::ofstream csv(out_path, std::ios::trunc);
            if (!csv) throw Error("cannot open " + out_path);
            csv << map.to_csv();
            return kOk;
        }
        if (simulate->parsed()) {
            NoiseCase noise = NoiseCase::preset(case_id, seed);
            if (sigma) noise.sigma = *sigma;
            NoisyObservation const noisy = apply_noise(io::load(in_path), noise);
            io::save(noisy.m, out_path);
            if (!support_path.empty()) io::save(noisy.support.to_tensor(), support_path);
            return kOk;
        }
        if (mask_cmd->parsed()) {
            io::save(random_mask(to_dims(dims_list), rate, seed).to_tensor(), out_path);
            return kOk;
        }
        if (metrics->parsed()) {
            Tensor3 const x = io::load(test_path);
            Tensor3 const ref = io::load(ref_path);
            MetricsReport const r = evaluate(x, ref, peak);
            out << "psnr,ssim,ergas,sam\n"
                << format_number(r.psnr) << ',' << format_number(r.ssim) << ',' << format_number(r.ergas) << ','
                << format_number(r.sam) << '\n';
            return kOk;
        }
        if (transform->parsed()) {
            if (inverse) {
                WaveletBlocks blocks;
                for (int i = 0; i < 4; ++i) blocks.b[static_cast<std::size_t>(i)] = io::load(block_path(in_path, i + 1));
                Dims3 const bd = blocks.b[0].dims();
                blocks.parent_dims = {2 * bd[0], 2 * bd[1], bd[2]};
                io::save(ifhwt2(blocks), prefix + ".hnt");
            } else {
                Tensor3 t = io::load(in_path);
                if (pad) t = pad_even(t);
                WaveletBlocks const blocks = fhwt2(t);
                for (int i = 0; i < 4; ++i) io::save(blocks.b[static_cast<std::size_t>(i)], block_path(prefix, i + 1));
            }
            return kOk;
        }
    } catch (InvalidArgument const& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (std::exception const& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsage;
}

} // namespace hnn::cli
