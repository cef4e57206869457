#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "biquad/errors.hpp"

namespace biquad {

/// Which of the two vector slots of the biquadratic form a label refers to.
enum class VectorSide { X, Y };

enum class SymmetryClass { General, WeaklySymmetric, Symmetric };

const char* to_string(SymmetryClass c);

/// Dense row-major matrix, just large enough for slice matrices and
/// Kronecker factors.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::span<const double> data() const { return a_; }

    bool is_symmetric(double tol = 0.0) const;
    double frobenius_norm() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

/// Dense real m x n x m x n tensor. Entries are indexed (i1, j1, i2, j2),
/// all 0-based, linearized as ((i1*n + j1)*m + i2)*n + j2. Immutable after
/// construction; no symmetrization is applied on input.
class BiquadraticTensor {
public:
    /// Builds from a dense entry array of length m^2 * n^2.
    /// Requires m, n >= 2 and all entries finite.
    BiquadraticTensor(std::size_t m, std::size_t n, std::vector<double> entries);

    static BiquadraticTensor zero(std::size_t m, std::size_t n);

    /// The tensor with entry 1 exactly when i1 == i2 and j1 == j2.
    static BiquadraticTensor identity(std::size_t m, std::size_t n);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }

    /// Bounds-checked entry access.
    double entry(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) const;

    /// Unchecked access for inner loops.
    double operator()(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) const {
        return a_[((i1 * n_ + j1) * m_ + i2) * n_ + j2];
    }

    std::span<const double> entries() const { return a_; }

    /// Strongest symmetry class that holds within tol: weakly symmetric when
    /// a(i1,j1,i2,j2) == a(i2,j2,i1,j1); symmetric when additionally
    /// a(i1,j1,i2,j2) == a(i2,j1,i1,j2) == a(i1,j2,i2,j1).
    SymmetryClass classify_symmetry(double tol = 0.0) const;

    /// True iff every entry >= 0 exactly.
    bool is_nonnegative() const;

    /// Symmetrized m x m slice with (i1,i2) entry (a(i1,j,i2,j) + a(i2,j,i1,j)) / 2.
    Matrix slice_x(std::size_t j) const;

    /// Symmetrized n x n slice with (j1,j2) entry (a(i,j1,i,j2) + a(i,j2,i,j1)) / 2.
    Matrix slice_y(std::size_t i) const;

    /// Largest |entry|; the natural scale for tolerances.
    double max_abs() const;

private:
    std::size_t m_, n_;
    std::vector<double> a_;
};

}  // namespace biquad
