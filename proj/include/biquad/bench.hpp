#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biquad/collatz.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// Entries ~ U(0,1), then averaged over the symmetry orbit
/// {(i1,j1,i2,j2), (i2,j2,i1,j1), (i2,j1,i1,j2), (i1,j2,i2,j1)}; the result
/// is exactly symmetric, nonnegative, and bit-identical for a given seed.
BiquadraticTensor gen_random_symmetric_nbq(std::size_t m, std::size_t n, std::uint64_t seed);

enum class BenchMode {
    FixedTensor,  ///< one seed-derived tensor, fresh random start per repeat
    FreshTensor,  ///< new tensor and start per repeat
};

const char* to_string(BenchMode m);

struct BenchConfig {
    std::size_t m = 10, n = 10;
    int repeats = 100;
    std::uint64_t seed = 0;
    CollatzConfig collatz;
    BenchMode mode = BenchMode::FixedTensor;
};

struct BenchReport {
    std::size_t m = 0, n = 0;
    int repeats = 0;
    std::string mode;
    double mean_iterations = 0.0;
    double mean_time_seconds = 0.0;  ///< solver time only, excludes generation and I/O
    double mean_gap = 0.0;           ///< upper - lower bound at exit
    double mean_residual = 0.0;
    double ratio_lower = 0.0;        ///< fraction with |lower - rho_M_observed| <= 1e-6
    double ratio_upper = 0.0;
    double rho_M_observed = 0.0;     ///< largest lambda_est over the repeats
    int max_iterations_count = 0;    ///< repeats that hit k_max
    int failures = 0;                ///< repeats that raised solver errors
};

/// Repeats the Collatz run per the configured mode and aggregates the
/// benchmark columns. Deterministic for a fixed config except for the
/// wall-time column.
BenchReport run_experiment(const BenchConfig& cfg);

/// Same aggregation against a caller-provided tensor (the two small-example
/// rows); mode is reported as "fixed_tensor".
BenchReport run_experiment_on(const BiquadraticTensor& t, const BenchConfig& cfg);

std::string bench_csv_header();
std::string to_csv_row(const BenchReport& r);
std::string format_bench_table(const std::vector<BenchReport>& rows);

}  // namespace biquad
