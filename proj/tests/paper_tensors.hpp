// Shared fixtures: the small published example tensors plus independent
// reference computations used as oracles against the library paths.
#pragma once

#include <cmath>
#include <tuple>
#include <vector>

#include "biquad/rng.hpp"
#include "biquad/tensor.hpp"

namespace fixtures {

using biquad::BiquadraticTensor;

using Entry1 = std::tuple<int, int, int, int, double>;  // 1-based (i1, j1, i2, j2, value)

inline BiquadraticTensor from_one_based(std::size_t m, std::size_t n,
                                        const std::vector<Entry1>& entries) {
    std::vector<double> a(m * n * m * n, 0.0);
    for (const auto& [i1, j1, i2, j2, v] : entries) {
        const std::size_t lin = (((i1 - 1) * n + (j1 - 1)) * m + (i2 - 1)) * n + (j2 - 1);
        a[lin] = v;
    }
    return BiquadraticTensor(m, n, std::move(a));
}

// Nonnegative irreducible symmetric 2x2x2x2 instance with eight M-eigenvalues
// headed by 10.9075; the one benchmarked in the first results table.
inline BiquadraticTensor example_4_2() {
    return from_one_based(2, 2,
                          {{1, 1, 1, 1, 4},  {1, 2, 1, 2, 10}, {2, 1, 2, 1, 10}, {2, 2, 2, 2, 2},
                           {1, 1, 1, 2, 1},  {1, 1, 2, 1, 1},  {1, 2, 1, 1, 1},  {2, 1, 1, 1, 1},
                           {1, 1, 2, 2, 1},  {1, 2, 2, 1, 1},  {2, 1, 1, 2, 1},  {2, 2, 1, 1, 1},
                           {1, 2, 2, 2, 2},  {2, 2, 1, 2, 2},  {2, 1, 2, 2, 2},  {2, 2, 2, 1, 2}});
}

// Nonnegative reducible symmetric instance with M-eigenvalues
// {4.6312, 2.3970, 1.7917, 1.0000, -0.1142, -1.9038}.
inline BiquadraticTensor example_4_9() {
    return from_one_based(2, 2,
                          {{1, 1, 1, 1, 1}, {1, 2, 1, 2, 1}, {1, 1, 2, 2, 2}, {1, 2, 2, 1, 2},
                           {2, 1, 1, 2, 2}, {2, 2, 1, 1, 2}, {1, 1, 2, 1, 2}, {2, 1, 1, 1, 2},
                           {2, 1, 2, 1, 2}, {2, 2, 2, 2, 1}});
}

// Fully reducible instance with g = (x2 y1 y2, x1 y1 y2); both ratio
// envelopes equal 1/2 and lambda = 0 is an M+ eigenvalue at e1, e1.
inline BiquadraticTensor example_4_5() {
    return from_one_based(
        2, 2, {{1, 1, 2, 2, 0.5}, {1, 2, 2, 1, 0.5}, {2, 1, 1, 2, 0.5}, {2, 2, 1, 1, 0.5}});
}

// Single entry a_1111 = 1: eigenvalues {1, 0}, no strictly positive pair.
inline BiquadraticTensor example_3_6() {
    return from_one_based(2, 2, {{1, 1, 1, 1, 1}});
}

// Diagonal tensor with entries a(i,j,i,j) = diag[i*n + j]; every diagonal
// value is an M+ eigenvalue at the matching unit vectors.
inline BiquadraticTensor diagonal_tensor(std::size_t m, std::size_t n,
                                         const std::vector<double>& diag) {
    std::vector<double> a(m * n * m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[((i * n + j) * m + i) * n + j] = diag[i * n + j];
    return BiquadraticTensor(m, n, std::move(a));
}

inline BiquadraticTensor example_3_8() { return diagonal_tensor(2, 2, {1.0, 2.0, 3.0, 4.0}); }

// ---- independent reference computations (different algebraic routes) ----

// f via the intermediate matrix A(y)_{i1,i2} = sum_j1,j2 a y_j1 y_j2.
inline double ref_eval_f(const BiquadraticTensor& t, const std::vector<double>& x,
                         const std::vector<double>& y) {
    const std::size_t m = t.m(), n = t.n();
    double f = 0.0;
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = 0; i2 < m; ++i2) {
            double ay = 0.0;
            for (std::size_t j1 = 0; j1 < n; ++j1)
                for (std::size_t j2 = 0; j2 < n; ++j2)
                    ay += t.entry(i1, j1, i2, j2) * y[j1] * y[j2];
            f += x[i1] * ay * x[i2];
        }
    return f;
}

// The two summands of g computed separately by direct summation.
inline std::pair<std::vector<double>, std::vector<double>> ref_g_summands(
    const BiquadraticTensor& t, const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = t.m(), n = t.n();
    std::vector<double> first(m, 0.0), second(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j1 = 0; j1 < n; ++j1)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t j2 = 0; j2 < n; ++j2) {
                    // free first slot: a(i, j1, k, j2) y x y
                    first[i] += 0.5 * t.entry(i, j1, k, j2) * y[j1] * x[k] * y[j2];
                    // free third slot: a(k, j1, i, j2) x y y
                    second[i] += 0.5 * t.entry(k, j1, i, j2) * x[k] * y[j1] * y[j2];
                }
    return {first, second};
}

inline std::pair<std::vector<double>, std::vector<double>> ref_h_summands(
    const BiquadraticTensor& t, const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = t.m(), n = t.n();
    std::vector<double> first(n, 0.0), second(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i1 = 0; i1 < m; ++i1)
            for (std::size_t i2 = 0; i2 < m; ++i2)
                for (std::size_t l = 0; l < n; ++l) {
                    first[j] += 0.5 * t.entry(i1, j, i2, l) * x[i1] * x[i2] * y[l];
                    second[j] += 0.5 * t.entry(i1, l, i2, j) * x[i1] * y[l] * x[i2];
                }
    return {first, second};
}

inline std::vector<double> ref_grad_g(const BiquadraticTensor& t, const std::vector<double>& x,
                                      const std::vector<double>& y) {
    auto [a, b] = ref_g_summands(t, x, y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline std::vector<double> ref_grad_h(const BiquadraticTensor& t, const std::vector<double>& x,
                                      const std::vector<double>& y) {
    auto [a, b] = ref_h_summands(t, x, y);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
    return a;
}

// ---- random instance helpers (deterministic via biquad::Rng) ----

inline BiquadraticTensor random_tensor(std::size_t m, std::size_t n, biquad::Rng& rng,
                                       double lo = -1.0, double hi = 1.0) {
    std::vector<double> a(m * n * m * n);
    for (double& v : a) v = rng.uniform(lo, hi);
    return BiquadraticTensor(m, n, std::move(a));
}

inline BiquadraticTensor random_nonneg_tensor(std::size_t m, std::size_t n, biquad::Rng& rng) {
    return random_tensor(m, n, rng, 0.0, 1.0);
}

inline std::vector<double> random_unit(std::size_t d, biquad::Rng& rng, bool nonneg = false) {
    std::vector<double> v(d);
    double s = 0.0;
    do {
        s = 0.0;
        for (double& e : v) {
            e = nonneg ? rng.uniform01() : rng.normal();
            s += e * e;
        }
    } while (s == 0.0);
    s = std::sqrt(s);
    for (double& e : v) e /= s;
    return v;
}

}  // namespace fixtures
