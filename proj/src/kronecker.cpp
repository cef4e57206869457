#include "biquad/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace biquad {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

void require_symmetric(const Matrix& a, const char* name) {
    if (!a.is_symmetric(0.0))
        throw ValueError(std::string("factor ") + name + " must be exactly symmetric");
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& input) {
    if (input.rows() != input.cols()) throw DimensionError("jacobi_eigen requires a square matrix");
    const std::size_t n = input.rows();
    Matrix a = input;
    Matrix v = Matrix::identity(n);
    const double target = 1e-12 * std::max(a.frobenius_norm(), 1e-300);

    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = a(p, i) = c * aip - s * aiq;
                    a(i, q) = a(q, i) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SymmetricEigen out;
    out.values.reserve(n);
    out.vectors.reserve(n);
    for (std::size_t k : order) {
        out.values.push_back(a(k, k));
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
        // deterministic sign: largest-magnitude component positive
        std::size_t arg = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(col[i]) > std::abs(col[arg])) arg = i;
        if (col[arg] < 0.0)
            for (double& e : col) e = -e;
        out.vectors.push_back(std::move(col));
    }
    return out;
}

BiquadraticTensor kron_build(const Matrix& b, const Matrix& c) {
    require_symmetric(b, "B");
    require_symmetric(c, "C");
    const std::size_t m = b.rows(), n = c.rows();
    if (m < 2 || n < 2) throw DimensionError("kron_build requires factors of order >= 2");
    std::vector<double> a(m * n * m * n);
    std::size_t p = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l) a[p++] = b(i, k) * c(j, l);
    return BiquadraticTensor(m, n, std::move(a));
}

bool kron_check(const BiquadraticTensor& t, const Matrix& b, const Matrix& c, double tol) {
    if (b.rows() != t.m() || b.cols() != t.m() || c.rows() != t.n() || c.cols() != t.n())
        throw DimensionError("factor dimensions do not match the tensor");
    if (tol < 0.0) throw ValueError("tolerance must be nonnegative");
    const std::size_t m = t.m(), n = t.n();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    const double sym =
                        0.25 * (t(i, j, k, l) + t(k, j, i, l) + t(i, l, k, j) + t(k, l, i, j));
                    if (std::abs(sym - b(i, k) * c(j, l)) > tol) return false;
                }
    return true;
}

std::vector<PredictedPair> factor_eigenpairs(const Matrix& b, const Matrix& c) {
    require_symmetric(b, "B");
    require_symmetric(c, "C");
    SymmetricEigen eb = jacobi_eigen(b);
    SymmetricEigen ec = jacobi_eigen(c);
    const double tb = 1e-10 * std::max(b.frobenius_norm(), 1e-300);
    const double tc = 1e-10 * std::max(c.frobenius_norm(), 1e-300);

    std::vector<PredictedPair> out;
    for (std::size_t p = 0; p < eb.values.size(); ++p) {
        if (std::abs(eb.values[p]) <= tb) continue;
        for (std::size_t q = 0; q < ec.values.size(); ++q) {
            if (std::abs(ec.values[q]) <= tc) continue;
            PredictedPair pair;
            pair.alpha = eb.values[p];
            pair.beta = ec.values[q];
            pair.lambda = pair.alpha * pair.beta;
            pair.x = eb.vectors[p];
            pair.y = ec.vectors[q];
            out.push_back(std::move(pair));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PredictedPair& a, const PredictedPair& b2) { return a.lambda > b2.lambda; });
    return out;
}

}  // namespace biquad
