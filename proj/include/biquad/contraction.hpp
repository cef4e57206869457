#pragma once

#include <span>
#include <vector>

#include "biquad/tensor.hpp"

namespace biquad {

/// f(x, y) = sum a(i1,j1,i2,j2) x_i1 y_j1 x_i2 y_j2.
double eval_f(const BiquadraticTensor& t, std::span<const double> x, std::span<const double> y);

/// g_i = (sum_{j1,i2,j2} a(i,j1,i2,j2) y_j1 x_i2 y_j2
///      + sum_{i1,j1,j2} a(i1,j1,i,j2) x_i1 y_j1 y_j2) / 2.
/// Satisfies x'g = f(x, y) and g = (1/2) df/dx.
std::vector<double> grad_g(const BiquadraticTensor& t, std::span<const double> x,
                           std::span<const double> y);

/// h_j = (sum_{i1,i2,j2} a(i1,j,i2,j2) x_i1 x_i2 y_j2
///      + sum_{i1,j1,i2} a(i1,j1,i2,j) x_i1 y_j1 x_i2) / 2.
std::vector<double> grad_h(const BiquadraticTensor& t, std::span<const double> x,
                           std::span<const double> y);

/// Computes g and h in one sweep over the entries.
void grad_pair(const BiquadraticTensor& t, std::span<const double> x, std::span<const double> y,
               std::vector<double>& g, std::vector<double>& h);

struct RatioArg {
    VectorSide side = VectorSide::X;
    std::size_t index = 0;
};

/// Componentwise Collatz ratios g_i/x_i, h_j/y_j over the extended reals.
struct RatioBounds {
    double v_val = 0.0;  ///< minimum ratio
    double u_val = 0.0;  ///< maximum ratio (+inf when some x_i = 0, g_i > 0)
    RatioArg arg_min, arg_max;
};

/// Requires x, y nonnegative and nonzero. A zero component with nonzero
/// gradient contributes +/-inf; a (0, 0) pair throws DegeneratePointError.
RatioBounds ratio_bounds(const BiquadraticTensor& t, std::span<const double> x,
                         std::span<const double> y);

struct ResidualParts {
    double x_block = 0.0;  ///< max_i |g_i - lambda x_i|
    double y_block = 0.0;  ///< max_j |h_j - lambda y_j|
};

ResidualParts residual_parts(const BiquadraticTensor& t, double lambda, std::span<const double> x,
                             std::span<const double> y);

/// max-norm eigen-equation residual max(|g - lambda x|_inf, |h - lambda y|_inf).
double residual(const BiquadraticTensor& t, double lambda, std::span<const double> x,
                std::span<const double> y);

}  // namespace biquad
