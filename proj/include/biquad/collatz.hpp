#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biquad/tensor.hpp"

namespace biquad {

struct CollatzConfig {
    int k_max = 1000;
    double epsilon = 1e-8;
    bool record_trace = false;
    /// Optional spectral shift (iterate on A + shift*I, bounds reported for A).
    /// Kept at 0 for all replication runs.
    double shift = 0.0;
};

enum class CollatzStatus { ConvergedGap, ConvergedStagnation, MaxIterations, DegenerateBreakdown };

const char* to_string(CollatzStatus s);

struct CollatzResult {
    CollatzStatus status = CollatzStatus::MaxIterations;
    double lambda_lower = 0.0;  ///< final lower Collatz bound
    double lambda_upper = 0.0;  ///< final upper Collatz bound
    double lambda_est = 0.0;    ///< (lower + upper) / 2
    std::vector<double> x, y;   ///< final unit iterates
    int iterations = 0;         ///< step index at exit
    double residual = 0.0;      ///< eigen-equation residual at (lambda_est, x, y)
    std::vector<std::pair<double, double>> trace;  ///< per-step (lower, upper) bounds
};

/// Collatz bracketing iteration for the largest M+ eigenvalue. Requires a
/// nonnegative tensor unless allow_general is set; x0, y0 must be nonnegative
/// and nonzero (they are normalized internally). The bounds at each step are
/// taken over strictly positive components only, and the iteration stops when
/// either the gap or the stagnation criterion drops to epsilon.
CollatzResult collatz_run(const BiquadraticTensor& t, std::span<const double> x0,
                          std::span<const double> y0, const CollatzConfig& cfg = {},
                          bool allow_general = false);

struct MultistartResult {
    CollatzResult best;                   ///< run with the largest lambda_est
    std::vector<CollatzResult> per_start;
    double agreement_ratio_lower = 0.0;   ///< fraction with |lower - best| <= 1e-6
    double agreement_ratio_upper = 0.0;   ///< fraction with |upper - best| <= 1e-6
    double mean_iterations = 0.0;
    double mean_gap = 0.0;
    double mean_residual = 0.0;
};

/// Runs collatz_run from n_starts random positive starts (uniform entries,
/// normalized). Start r draws from an RNG substream keyed by (seed, r), so
/// the aggregate is deterministic regardless of thread schedule.
MultistartResult collatz_multistart(const BiquadraticTensor& t, const CollatzConfig& cfg,
                                    int n_starts, std::uint64_t seed,
                                    bool allow_general = false);

}  // namespace biquad
