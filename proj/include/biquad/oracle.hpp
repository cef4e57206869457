#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "biquad/tensor.hpp"

namespace biquad {

enum class EigClass { M, Mplus, Mplusplus };

const char* to_string(EigClass c);

struct MEigenpair {
    double lambda = 0.0;
    std::vector<double> x, y;  ///< unit eigenvectors, sign-canonicalized
    EigClass cls = EigClass::M;
    double residual = 0.0;
};

/// Applies the four sign flips (+-x, +-y); when a nonnegative representative
/// exists (entries >= -1e-8) the pair is M+ and the representative is stored;
/// strictly positive entries (> 1e-8) upgrade it to M++.
MEigenpair classify_pair(const BiquadraticTensor& t, MEigenpair pair);

struct EnumerationStats {
    std::size_t seeds = 0;       ///< grid cells / starts that launched a refinement
    std::size_t converged = 0;
    std::size_t dropped = 0;     ///< refinements that failed to converge
};

/// Exhaustive M-eigenpair search for m = n = 2: scans F(theta, phi) =
/// f((cos t, sin t), (cos p, sin p)) on a grid x grid lattice over [0, pi)^2,
/// refines every sign-change cell with a damped 2-D Newton on grad F = 0, and
/// deduplicates roots at angular distance 1e-6. Pairs are classified and
/// sorted by descending eigenvalue.
std::vector<MEigenpair> enumerate_2x2(const BiquadraticTensor& t, int grid = 720,
                                      double tol = 1e-9, EnumerationStats* stats = nullptr);

/// Best-effort stationary-point search for m*n <= 36: damped Newton on the
/// eigen system from n_starts random unit starts (both orthants). The result
/// is not guaranteed exhaustive. tol bounds the projected-gradient norms
/// |g - (x'g)x|_inf, |h - (y'h)y|_inf at accepted points.
std::vector<MEigenpair> enumerate_small(const BiquadraticTensor& t, int n_starts, double tol,
                                        std::uint64_t seed, EnumerationStats* stats = nullptr);

struct SpectralSummary {
    double lambda_max = 0.0;
    double rho_M = 0.0;
    std::optional<double> lambda_plus_min;  ///< absent when no M+ pair was found
    std::vector<double> eigenvalues;        ///< all found, sorted descending
    std::vector<double> mplus_set;          ///< M+ eigenvalues, sorted descending
};

/// Aggregates an enumeration; for nonnegative tensors asserts rho_M ==
/// lambda_max and that the largest eigenvalue carries an M+ pair.
SpectralSummary spectral_summary(const std::vector<MEigenpair>& pairs,
                                 const BiquadraticTensor& t);

struct RhoEstimates {
    double rho_star_lower = 0.0;  ///< estimate of inf u (attained minimum found)
    double rho_star_upper = 0.0;  ///< estimate of sup v (attained maximum found)
    std::vector<double> arg_lower_x, arg_lower_y;
    std::vector<double> arg_upper_x, arg_upper_y;
};

/// Multistart compass search for the Collatz-ratio envelope over the interior
/// of the nonnegative sphere product, in hyperspherical coordinates so all
/// iterates stay strictly positive. For irreducible tensors the two values
/// estimate the smallest and largest M+ eigenvalues.
RhoEstimates estimate_rho_bounds(const BiquadraticTensor& t, int n_starts = 200,
                                 std::uint64_t seed = 0);

}  // namespace biquad
