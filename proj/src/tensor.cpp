#include "biquad/tensor.hpp"

#include <cmath>
#include <string>

namespace biquad {

const char* to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::General: return "general";
        case SymmetryClass::WeaklySymmetric: return "weakly_symmetric";
        case SymmetryClass::Symmetric: return "symmetric";
    }
    return "?";
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
    if (a_.size() != rows * cols)
        throw DimensionError("matrix entry count " + std::to_string(a_.size()) +
                             " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    for (double v : a_)
        if (!std::isfinite(v)) throw ValueError("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

bool Matrix::is_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

BiquadraticTensor::BiquadraticTensor(std::size_t m, std::size_t n, std::vector<double> entries)
    : m_(m), n_(n), a_(std::move(entries)) {
    if (m < 2 || n < 2) throw DimensionError("tensor dimensions must satisfy m, n >= 2");
    if (a_.size() != m * n * m * n)
        throw DimensionError("entry count " + std::to_string(a_.size()) + " does not match m^2*n^2 = " +
                             std::to_string(m * n * m * n));
    for (double v : a_)
        if (!std::isfinite(v)) throw ValueError("tensor entries must be finite");
}

BiquadraticTensor BiquadraticTensor::zero(std::size_t m, std::size_t n) {
    return BiquadraticTensor(m, n, std::vector<double>(m * n * m * n, 0.0));
}

BiquadraticTensor BiquadraticTensor::identity(std::size_t m, std::size_t n) {
    std::vector<double> a(m * n * m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[((i * n + j) * m + i) * n + j] = 1.0;
    return BiquadraticTensor(m, n, std::move(a));
}

double BiquadraticTensor::entry(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) const {
    if (i1 >= m_ || i2 >= m_)
        throw IndexError("row index out of range [0, " + std::to_string(m_) + ")");
    if (j1 >= n_ || j2 >= n_)
        throw IndexError("column index out of range [0, " + std::to_string(n_) + ")");
    return (*this)(i1, j1, i2, j2);
}

SymmetryClass BiquadraticTensor::classify_symmetry(double tol) const {
    if (tol < 0.0) throw ValueError("tolerance must be nonnegative");
    const auto& t = *this;
    bool weak = true, full = true;
    for (std::size_t i1 = 0; i1 < m_ && (weak || full); ++i1)
        for (std::size_t j1 = 0; j1 < n_; ++j1)
            for (std::size_t i2 = 0; i2 < m_; ++i2)
                for (std::size_t j2 = 0; j2 < n_; ++j2) {
                    const double v = t(i1, j1, i2, j2);
                    if (std::abs(v - t(i2, j2, i1, j1)) > tol) weak = false;
                    if (std::abs(v - t(i2, j1, i1, j2)) > tol ||
                        std::abs(v - t(i1, j2, i2, j1)) > tol)
                        full = false;
                    if (!weak && !full) break;
                }
    if (weak && full) return SymmetryClass::Symmetric;
    if (weak) return SymmetryClass::WeaklySymmetric;
    return SymmetryClass::General;
}

bool BiquadraticTensor::is_nonnegative() const {
    for (double v : a_)
        if (v < 0.0) return false;
    return true;
}

Matrix BiquadraticTensor::slice_x(std::size_t j) const {
    if (j >= n_) throw IndexError("slice index out of range [0, " + std::to_string(n_) + ")");
    Matrix s(m_, m_);
    for (std::size_t i1 = 0; i1 < m_; ++i1)
        for (std::size_t i2 = 0; i2 < m_; ++i2)
            s(i1, i2) = 0.5 * ((*this)(i1, j, i2, j) + (*this)(i2, j, i1, j));
    return s;
}

Matrix BiquadraticTensor::slice_y(std::size_t i) const {
    if (i >= m_) throw IndexError("slice index out of range [0, " + std::to_string(m_) + ")");
    Matrix s(n_, n_);
    for (std::size_t j1 = 0; j1 < n_; ++j1)
        for (std::size_t j2 = 0; j2 < n_; ++j2)
            s(j1, j2) = 0.5 * ((*this)(i, j1, i, j2) + (*this)(i, j2, i, j1));
    return s;
}

double BiquadraticTensor::max_abs() const {
    double s = 0.0;
    for (double v : a_) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace biquad
