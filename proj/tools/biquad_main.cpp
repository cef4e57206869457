// Command-line surface for the biquadratic tensor library: eigenvalue
// computation, spectrum enumeration, irreducibility verification, Collatz
// ratio bounds, Kronecker construction, benchmarks, and instance generation.

#include <unistd.h>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "biquad/bench.hpp"
#include "biquad/collatz.hpp"
#include "biquad/io.hpp"
#include "biquad/kronecker.hpp"
#include "biquad/oracle.hpp"
#include "biquad/structure.hpp"

namespace {

using namespace biquad;

enum class Format { Auto, Table, Json, Csv };

Format g_format = Format::Auto;

Format effective_format() {
    if (g_format != Format::Auto) return g_format;
    return isatty(fileno(stdout)) ? Format::Table : Format::Json;
}

bool json_output() { return effective_format() == Format::Json; }

// All randomness flows from one seed; when absent we draw one from entropy
// and announce it so the run can be reproduced.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed_flag) {
    if (seed_flag) return *seed_flag;
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::fprintf(stderr, "seed: %" PRIu64 " (use --seed to reproduce)\n", seed);
    return seed;
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::string format_vec(const std::vector<double>& v) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.4f", v[i]);
        s += buf;
        if (i + 1 < v.size()) s += ", ";
    }
    return s + ")";
}

BiquadraticTensor load_tensor(const std::string& path, bool require_nonneg, bool allow_general) {
    BiquadraticTensor t = read_tensor_file(path);
    if (require_nonneg && !t.is_nonnegative()) {
        if (!allow_general)
            throw ValueError(path + ": tensor has negative entries (pass --allow-general to proceed)");
        std::fprintf(stderr, "warning: %s has negative entries; continuing as requested\n",
                     path.c_str());
    }
    return t;
}

int cmd_eig(const std::string& path, int starts, std::optional<std::uint64_t> seed_flag,
            double eps, int kmax, double shift, bool trace, bool allow_general) {
    BiquadraticTensor t = load_tensor(path, true, allow_general);
    CollatzConfig cfg;
    cfg.epsilon = eps;
    cfg.k_max = kmax;
    cfg.shift = shift;
    cfg.record_trace = trace;
    const std::uint64_t seed = resolve_seed(seed_flag);
    MultistartResult agg = collatz_multistart(t, cfg, starts, seed, allow_general);

    if (json_output()) {
        nlohmann::json j = to_json(agg);
        j["seed"] = seed;
        emit(j);
    } else {
        const CollatzResult& b = agg.best;
        std::printf("lambda_est:  %.10f\n", b.lambda_est);
        std::printf("bounds:      [%.10f, %.10f]  (gap %.3e)\n", b.lambda_lower, b.lambda_upper,
                    b.lambda_upper - b.lambda_lower);
        std::printf("iterations:  %d\n", b.iterations);
        std::printf("status:      %s\n", to_string(b.status));
        std::printf("residual:    %.3e\n", b.residual);
        std::printf("x:           %s\n", format_vec(b.x).c_str());
        std::printf("y:           %s\n", format_vec(b.y).c_str());
        if (starts > 1)
            std::printf("starts: %d  ratio_lower: %.0f%%  ratio_upper: %.0f%%  mean_iter: %.2f\n",
                        starts, 100.0 * agg.agreement_ratio_lower,
                        100.0 * agg.agreement_ratio_upper, agg.mean_iterations);
        if (trace)
            for (std::size_t k = 0; k < b.trace.size(); ++k)
                std::printf("  step %3zu: [%.12f, %.12f]\n", k, b.trace[k].first,
                            b.trace[k].second);
    }
    return agg.best.status == CollatzStatus::MaxIterations ? 2 : 0;
}

int cmd_spectrum(const std::string& path, int grid, int starts,
                 std::optional<std::uint64_t> seed_flag, double tol) {
    BiquadraticTensor t = read_tensor_file(path);
    std::vector<MEigenpair> pairs;
    bool exhaustive = t.m() == 2 && t.n() == 2;
    if (exhaustive) {
        pairs = enumerate_2x2(t, grid, tol);
    } else {
        std::fprintf(stderr,
                     "warning: %zux%zu instance; stationary-point search is not exhaustive\n",
                     t.m(), t.n());
        pairs = enumerate_small(t, starts, tol, resolve_seed(seed_flag));
    }
    SpectralSummary summary = spectral_summary(pairs, t);

    // Continuous families (e.g. the zero tensor) produce unbounded numbers of
    // stationary pairs with one eigenvalue; cap what we show per value.
    constexpr std::size_t kPerValueCap = 8;
    if (json_output()) {
        nlohmann::json jp = nlohmann::json::array();
        std::size_t group_count = 0;
        std::size_t omitted = 0;
        const double group_tol = 1e-9 * std::max(t.max_abs(), 1.0);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i > 0 && std::abs(pairs[i].lambda - pairs[i - 1].lambda) > group_tol)
                group_count = 0;
            if (++group_count <= kPerValueCap)
                jp.push_back(to_json(pairs[i]));
            else
                ++omitted;
        }
        nlohmann::json j{{"exhaustive", exhaustive},
                         {"pairs", jp},
                         {"omitted_pairs", omitted},
                         {"summary", to_json(summary)}};
        emit(j);
    } else {
        std::printf("%12s  %-4s  %-22s  %-22s  %s\n", "lambda", "cls", "x", "y", "residual");
        std::size_t group_count = 0, omitted = 0;
        const double group_tol = 1e-9 * std::max(t.max_abs(), 1.0);
        double group_lambda = 0.0;
        auto flush_omitted = [&] {
            if (omitted > 0)
                std::printf("   ... %zu further stationary pairs with lambda=%.4f\n", omitted,
                            group_lambda);
            omitted = 0;
        };
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i > 0 && std::abs(pairs[i].lambda - pairs[i - 1].lambda) > group_tol) {
                flush_omitted();
                group_count = 0;
            }
            group_lambda = pairs[i].lambda;
            if (++group_count <= kPerValueCap)
                std::printf("%12.4f  %-4s  %-22s  %-22s  %.2e\n", pairs[i].lambda,
                            to_string(pairs[i].cls), format_vec(pairs[i].x).c_str(),
                            format_vec(pairs[i].y).c_str(), pairs[i].residual);
            else
                ++omitted;
        }
        flush_omitted();
        std::printf("lambda_max: %.4f   rho_M: %.4f", summary.lambda_max, summary.rho_M);
        if (summary.lambda_plus_min)
            std::printf("   lambda_plus_min: %.4f", *summary.lambda_plus_min);
        std::printf("\n");
        if (!exhaustive) std::printf("(stationary-point search; not exhaustive)\n");
    }
    return 0;
}

int cmd_irreducible(const std::string& path) {
    BiquadraticTensor t = load_tensor(path, true, false);
    IrreducibilityReport rep = irreducibility_report(t, 1e-12);
    if (json_output()) {
        emit(to_json(rep));
    } else {
        std::printf("x_partially_irreducible: %s\n", rep.x_partial_irreducible ? "yes" : "no");
        std::printf("y_partially_irreducible: %s\n", rep.y_partial_irreducible ? "yes" : "no");
        std::printf("irreducible:             %s\n", rep.irreducible ? "yes" : "no");
        std::printf("method_agreement:        %s\n", rep.method_agreement ? "yes" : "no");
        if (rep.witness) {
            std::string block;
            for (std::size_t v : rep.witness->block) block += std::to_string(v) + " ";
            std::printf("witness: side=%s slice=%zu block={ %s}\n",
                        rep.witness->side == VectorSide::X ? "x" : "y", rep.witness->slice,
                        block.c_str());
        }
    }
    return 0;
}

int cmd_bounds(const std::string& path, int starts, std::optional<std::uint64_t> seed_flag) {
    BiquadraticTensor t = load_tensor(path, true, false);
    RhoEstimates est = estimate_rho_bounds(t, starts, resolve_seed(seed_flag));
    if (json_output()) {
        emit(to_json(est));
    } else {
        std::printf("rho_star_lower (inf u): %.6f   at x=%s y=%s\n", est.rho_star_lower,
                    format_vec(est.arg_lower_x).c_str(), format_vec(est.arg_lower_y).c_str());
        std::printf("rho_star_upper (sup v): %.6f   at x=%s y=%s\n", est.rho_star_upper,
                    format_vec(est.arg_upper_x).c_str(), format_vec(est.arg_upper_y).c_str());
    }
    return 0;
}

int cmd_kron(const std::string& b_path, const std::string& c_path, const std::string& out_path) {
    Matrix b = read_matrix_file(b_path);
    Matrix c = read_matrix_file(c_path);
    BiquadraticTensor t = kron_build(b, c);
    if (!kron_check(t, b, c, 0.0))
        throw InternalError("constructed tensor fails its own factor check");
    write_tensor_file(t, out_path);
    auto predicted = factor_eigenpairs(b, c);
    if (json_output()) {
        nlohmann::json jp = nlohmann::json::array();
        for (const auto& p : predicted)
            jp.push_back(nlohmann::json{{"lambda", p.lambda},
                                        {"alpha", p.alpha},
                                        {"beta", p.beta},
                                        {"x", p.x},
                                        {"y", p.y}});
        emit(nlohmann::json{{"out", out_path},
                            {"m", t.m()},
                            {"n", t.n()},
                            {"predicted_eigenpairs", jp}});
    } else {
        std::printf("wrote %zux%zu Kronecker tensor to %s\n", t.m(), t.n(), out_path.c_str());
        for (const auto& p : predicted)
            std::printf("  lambda=%.6f (alpha=%.6f, beta=%.6f) x=%s y=%s\n", p.lambda, p.alpha,
                        p.beta, format_vec(p.x).c_str(), format_vec(p.y).c_str());
    }
    return 0;
}

int cmd_bench(std::size_t m, std::size_t n, int repeats, std::optional<std::uint64_t> seed_flag,
              const std::string& mode, double eps, int kmax, const std::string& tensor_path) {
    BenchConfig cfg;
    cfg.m = m;
    cfg.n = n;
    cfg.repeats = repeats;
    cfg.seed = resolve_seed(seed_flag);
    cfg.collatz.epsilon = eps;
    cfg.collatz.k_max = kmax;
    cfg.mode = mode == "fresh" ? BenchMode::FreshTensor : BenchMode::FixedTensor;

    BenchReport rep;
    if (!tensor_path.empty()) {
        BiquadraticTensor t = load_tensor(tensor_path, true, false);
        rep = run_experiment_on(t, cfg);
    } else {
        rep = run_experiment(cfg);
    }
    switch (effective_format()) {
        case Format::Csv:
            std::printf("%s\n%s\n", bench_csv_header().c_str(), to_csv_row(rep).c_str());
            break;
        case Format::Json:
            emit(to_json(rep));
            break;
        default:
            std::fputs(format_bench_table({rep}).c_str(), stdout);
    }
    return 0;
}

int cmd_gen(std::size_t m, std::size_t n, std::optional<std::uint64_t> seed_flag,
            const std::string& out_path) {
    BiquadraticTensor t = gen_random_symmetric_nbq(m, n, resolve_seed(seed_flag));
    write_tensor_file(t, out_path);
    if (json_output())
        emit(nlohmann::json{{"out", out_path}, {"m", m}, {"n", n}});
    else
        std::printf("wrote %zux%zux%zux%zu tensor to %s\n", m, n, m, n, out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of nonnegative biquadratic tensors"};
    app.require_subcommand(1);
    app.fallthrough();

    std::map<std::string, Format> format_map{{"auto", Format::Auto},
                                             {"table", Format::Table},
                                             {"json", Format::Json},
                                             {"csv", Format::Csv}};
    app.add_option("--format", g_format, "output format")
        ->transform(CLI::CheckedTransformer(format_map, CLI::ignore_case))
        ->default_val("auto");

    std::string file, b_file, c_file, out_path, mode = "fixed", tensor_path;
    std::optional<std::uint64_t> seed;
    int starts = 1, grid = 720, kmax = 1000, repeats = 100;
    std::size_t m = 10, n = 10;
    double eps = 1e-8, shift = 0.0, tol = 1e-9;
    bool trace = false, allow_general = false;

    auto* eig = app.add_subcommand("eig", "largest M+ eigenvalue via the Collatz iteration");
    eig->add_option("file", file, "tensor JSON file")->required();
    eig->add_option("--starts", starts, "number of random starts")->default_val(1);
    eig->add_option("--seed", seed, "RNG seed");
    eig->add_option("--eps", eps, "stopping tolerance")->default_val(1e-8);
    eig->add_option("--kmax", kmax, "iteration cap")->default_val(1000);
    eig->add_option("--shift", shift, "spectral shift (experimentation only)")->default_val(0.0);
    eig->add_flag("--trace", trace, "record per-step bounds");
    eig->add_flag("--allow-general", allow_general, "accept tensors with negative entries");

    auto* spectrum = app.add_subcommand("spectrum", "enumerate M-eigenpairs");
    spectrum->add_option("file", file, "tensor JSON file")->required();
    spectrum->add_option("--grid", grid, "angular grid (2x2 oracle)")->default_val(720);
    spectrum->add_option("--starts", starts, "starts for the non-2x2 search")->default_val(500);
    spectrum->add_option("--seed", seed, "RNG seed");
    spectrum->add_option("--tol", tol, "stationarity tolerance")->default_val(1e-9);

    auto* irr = app.add_subcommand("irreducible", "verify (partial) irreducibility");
    irr->add_option("file", file, "tensor JSON file")->required();

    auto* bounds = app.add_subcommand("bounds", "estimate rho_* and rho^*");
    bounds->add_option("file", file, "tensor JSON file")->required();
    bounds->add_option("--starts", starts, "search starts")->default_val(200);
    bounds->add_option("--seed", seed, "RNG seed");

    auto* kron = app.add_subcommand("kron", "build B (x) C from symmetric factors");
    kron->add_option("B", b_file, "B matrix JSON file")->required();
    kron->add_option("C", c_file, "C matrix JSON file")->required();
    kron->add_option("--out", out_path, "output tensor file")->required();

    auto* bench = app.add_subcommand("bench", "replicate the benchmark protocol");
    bench->add_option("--m", m, "first mode dimension")->default_val(10);
    bench->add_option("--n", n, "second mode dimension")->default_val(10);
    bench->add_option("--repeats", repeats, "number of repeats")->default_val(100);
    bench->add_option("--seed", seed, "RNG seed");
    bench->add_option("--mode", mode, "fixed | fresh tensor per repeat")
        ->check(CLI::IsMember({"fixed", "fresh"}))
        ->default_val("fixed");
    bench->add_option("--eps", eps, "stopping tolerance")->default_val(1e-8);
    bench->add_option("--kmax", kmax, "iteration cap")->default_val(1000);
    bench->add_option("--tensor", tensor_path, "benchmark a fixed tensor file");

    auto* gen = app.add_subcommand("gen", "generate a random symmetric nonnegative tensor");
    gen->add_option("--m", m, "first mode dimension")->required();
    gen->add_option("--n", n, "second mode dimension")->required();
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out_path, "output tensor file")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(eig))
            return cmd_eig(file, starts, seed, eps, kmax, shift, trace, allow_general);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(file, grid, starts, seed, tol);
        if (app.got_subcommand(irr)) return cmd_irreducible(file);
        if (app.got_subcommand(bounds)) return cmd_bounds(file, starts, seed);
        if (app.got_subcommand(kron)) return cmd_kron(b_file, c_file, out_path);
        if (app.got_subcommand(bench))
            return cmd_bench(m, n, repeats, seed, mode, eps, kmax, tensor_path);
        if (app.got_subcommand(gen)) return cmd_gen(m, n, seed, out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
