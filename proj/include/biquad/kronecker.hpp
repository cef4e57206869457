#pragma once

#include <vector>

#include "biquad/tensor.hpp"

namespace biquad {

/// Eigendecomposition of a symmetric matrix; values sorted descending,
/// vectors[k] is the unit eigenvector for values[k].
struct SymmetricEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

/// Cyclic Jacobi rotations; sweeps until the off-diagonal Frobenius mass
/// drops below 1e-12 times the matrix norm.
SymmetricEigen jacobi_eigen(const Matrix& a);

/// Tensor with entry(i,j,k,l) = B(i,k) * C(j,l). Requires exactly symmetric
/// factors; the result satisfies the symmetrized product identity exactly and
/// f(x, y) = (x'Bx)(y'Cy).
BiquadraticTensor kron_build(const Matrix& b, const Matrix& c);

/// True iff |(a(i,j,k,l)+a(k,j,i,l)+a(i,l,k,j)+a(k,l,i,j))/4 - B(i,k)C(j,l)|
/// <= tol for every index tuple.
bool kron_check(const BiquadraticTensor& t, const Matrix& b, const Matrix& c, double tol);

struct PredictedPair {
    double lambda = 0.0;  ///< alpha * beta
    double alpha = 0.0;   ///< eigenvalue of B
    double beta = 0.0;    ///< eigenvalue of C
    std::vector<double> x, y;
};

/// All products of nonzero eigenpairs of B and C; these are exactly the
/// nonzero M-eigenpairs of kron_build(B, C). Sorted descending by lambda.
std::vector<PredictedPair> factor_eigenpairs(const Matrix& b, const Matrix& c);

}  // namespace biquad
