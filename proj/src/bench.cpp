#include "biquad/bench.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "biquad/parallel.hpp"
#include "biquad/rng.hpp"

namespace biquad {

const char* to_string(BenchMode m) {
    return m == BenchMode::FixedTensor ? "fixed_tensor" : "fresh_tensor";
}

namespace {

// Substream indices: tensor draws and start draws must never collide.
constexpr std::uint64_t kTensorStream = 0x7e24a5b1d03cull;
constexpr std::uint64_t kStartStreamBase = 0x100000000ull;

std::size_t linear_index(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2,
                         std::size_t m, std::size_t n) {
    return ((i1 * n + j1) * m + i2) * n + j2;
}

}  // namespace

BiquadraticTensor gen_random_symmetric_nbq(std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m < 2 || n < 2) throw DimensionError("generator requires m, n >= 2");
    Rng rng = Rng::substream(seed, kTensorStream);
    std::vector<double> a(m * n * m * n);
    for (double& v : a) v = rng.uniform01();

    // Average over the symmetry orbit; write the value to every member so the
    // result is exactly symmetric.
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t j1 = 0; j1 < n; ++j1)
            for (std::size_t i2 = 0; i2 < m; ++i2)
                for (std::size_t j2 = 0; j2 < n; ++j2) {
                    const std::array<std::size_t, 4> orbit = {
                        linear_index(i1, j1, i2, j2, m, n), linear_index(i2, j2, i1, j1, m, n),
                        linear_index(i2, j1, i1, j2, m, n), linear_index(i1, j2, i2, j1, m, n)};
                    std::size_t rep = orbit[0];
                    for (std::size_t k : orbit) rep = std::min(rep, k);
                    if (rep != orbit[0]) continue;  // handled at its representative
                    const double avg =
                        0.25 * (a[orbit[0]] + a[orbit[1]] + a[orbit[2]] + a[orbit[3]]);
                    for (std::size_t k : orbit) a[k] = avg;
                }
    return BiquadraticTensor(m, n, std::move(a));
}

namespace {

BenchReport aggregate(const BiquadraticTensor* fixed, const BenchConfig& cfg) {
    if (cfg.repeats < 1) throw ValueError("repeats must be >= 1");
    const std::size_t reps = static_cast<std::size_t>(cfg.repeats);

    struct RepeatOutcome {
        CollatzResult result;
        double seconds = 0.0;
        bool failed = false;
    };
    std::vector<RepeatOutcome> runs(reps);

    parallel_for(reps, [&](std::size_t r) {
        const BiquadraticTensor* tensor = fixed;
        BiquadraticTensor generated = BiquadraticTensor::zero(2, 2);
        if (!tensor) {
            std::uint64_t tensor_seed =
                cfg.mode == BenchMode::FixedTensor ? cfg.seed : cfg.seed + 0x9e3779b97f4a7c15ull * (r + 1);
            generated = gen_random_symmetric_nbq(cfg.m, cfg.n, tensor_seed);
            tensor = &generated;
        }
        Rng rng = Rng::substream(cfg.seed, kStartStreamBase + r);
        std::vector<double> x0(tensor->m()), y0(tensor->n());
        for (double& v : x0) v = rng.uniform01();
        for (double& v : y0) v = rng.uniform01();
        const auto t0 = std::chrono::steady_clock::now();
        try {
            runs[r].result = collatz_run(*tensor, x0, y0, cfg.collatz);
        } catch (const std::exception&) {
            runs[r].failed = true;
        }
        runs[r].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });

    BenchReport rep;
    rep.m = cfg.m;
    rep.n = cfg.n;
    rep.repeats = cfg.repeats;
    rep.mode = to_string(cfg.mode);
    rep.rho_M_observed = -std::numeric_limits<double>::infinity();
    int ok = 0;
    for (const auto& run : runs) {
        if (run.failed) {
            ++rep.failures;
            continue;
        }
        ++ok;
        rep.mean_iterations += run.result.iterations;
        rep.mean_time_seconds += run.seconds;
        rep.mean_gap += run.result.lambda_upper - run.result.lambda_lower;
        rep.mean_residual += run.result.residual;
        rep.rho_M_observed = std::max(rep.rho_M_observed, run.result.lambda_est);
        if (run.result.status == CollatzStatus::MaxIterations) ++rep.max_iterations_count;
    }
    if (ok > 0) {
        rep.mean_iterations /= ok;
        rep.mean_time_seconds /= ok;
        rep.mean_gap /= ok;
        rep.mean_residual /= ok;
        int n_lo = 0, n_up = 0;
        for (const auto& run : runs) {
            if (run.failed) continue;
            if (std::abs(run.result.lambda_lower - rep.rho_M_observed) <= 1e-6) ++n_lo;
            if (std::abs(run.result.lambda_upper - rep.rho_M_observed) <= 1e-6) ++n_up;
        }
        rep.ratio_lower = static_cast<double>(n_lo) / ok;
        rep.ratio_upper = static_cast<double>(n_up) / ok;
    }
    return rep;
}

}  // namespace

BenchReport run_experiment(const BenchConfig& cfg) {
    if (cfg.mode == BenchMode::FixedTensor) {
        BiquadraticTensor t = gen_random_symmetric_nbq(cfg.m, cfg.n, cfg.seed);
        return aggregate(&t, cfg);
    }
    return aggregate(nullptr, cfg);
}

BenchReport run_experiment_on(const BiquadraticTensor& t, const BenchConfig& cfg) {
    BenchConfig c = cfg;
    c.m = t.m();
    c.n = t.n();
    c.mode = BenchMode::FixedTensor;
    return aggregate(&t, c);
}

std::string bench_csv_header() { return "m,n,iter,time_s,gap,res,ratio_lower,ratio_upper"; }

std::string to_csv_row(const BenchReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%.2f,%.6f,%.3e,%.3e,%.4f,%.4f", r.m, r.n,
                  r.mean_iterations, r.mean_time_seconds, r.mean_gap, r.mean_residual,
                  r.ratio_lower, r.ratio_upper);
    return buf;
}

std::string format_bench_table(const std::vector<BenchReport>& rows) {
    std::string out =
        "   m    n    Iter    Time(s)      gap          Res      ratio_lo  ratio_up   rho_M\n";
    char buf[256];
    for (const BenchReport& r : rows) {
        std::snprintf(buf, sizeof(buf), "%4zu %4zu %7.2f %10.2e %12.2e %12.2e %8.0f%% %8.0f%%  %.6f\n",
                      r.m, r.n, r.mean_iterations, r.mean_time_seconds, r.mean_gap,
                      r.mean_residual, 100.0 * r.ratio_lower, 100.0 * r.ratio_upper,
                      r.rho_M_observed);
        out += buf;
    }
    return out;
}

}  // namespace biquad
