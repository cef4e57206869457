#include "biquad/contraction.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace biquad {

namespace {

void check_dims(const BiquadraticTensor& t, std::span<const double> x, std::span<const double> y) {
    if (x.size() != t.m() || y.size() != t.n())
        throw DimensionError("vector lengths (" + std::to_string(x.size()) + ", " +
                             std::to_string(y.size()) + ") do not match tensor (" +
                             std::to_string(t.m()) + ", " + std::to_string(t.n()) + ")");
}

}  // namespace

double eval_f(const BiquadraticTensor& t, std::span<const double> x, std::span<const double> y) {
    check_dims(t, x, y);
    const std::size_t m = t.m(), n = t.n();
    const double* a = t.entries().data();
    double f = 0.0;
    std::size_t p = 0;
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t j1 = 0; j1 < n; ++j1) {
            const double xy1 = x[i1] * y[j1];
            for (std::size_t i2 = 0; i2 < m; ++i2) {
                const double xy1x2 = xy1 * x[i2];
                for (std::size_t j2 = 0; j2 < n; ++j2) f += a[p++] * xy1x2 * y[j2];
            }
        }
    return f;
}

void grad_pair(const BiquadraticTensor& t, std::span<const double> x, std::span<const double> y,
               std::vector<double>& g, std::vector<double>& h) {
    check_dims(t, x, y);
    const std::size_t m = t.m(), n = t.n();
    g.assign(m, 0.0);
    h.assign(n, 0.0);
    const double* a = t.entries().data();
    std::size_t p = 0;
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t j1 = 0; j1 < n; ++j1)
            for (std::size_t i2 = 0; i2 < m; ++i2) {
                const double x1 = x[i1], y1 = y[j1], x2 = x[i2];
                const double x1y1 = x1 * y1, y1x2 = y1 * x2, x1x2 = x1 * x2;
                for (std::size_t j2 = 0; j2 < n; ++j2) {
                    const double e = 0.5 * a[p++];
                    const double y2 = y[j2];
                    g[i1] += e * y1x2 * y2;
                    g[i2] += e * x1y1 * y2;
                    h[j1] += e * x1x2 * y2;
                    h[j2] += e * x1y1 * x2;
                }
            }
}

std::vector<double> grad_g(const BiquadraticTensor& t, std::span<const double> x,
                           std::span<const double> y) {
    std::vector<double> g, h;
    grad_pair(t, x, y, g, h);
    return g;
}

std::vector<double> grad_h(const BiquadraticTensor& t, std::span<const double> x,
                           std::span<const double> y) {
    std::vector<double> g, h;
    grad_pair(t, x, y, g, h);
    return h;
}

RatioBounds ratio_bounds(const BiquadraticTensor& t, std::span<const double> x,
                         std::span<const double> y) {
    check_dims(t, x, y);
    double sx = 0.0, sy = 0.0;
    for (double v : x) {
        if (v < 0.0) throw ValueError("ratio_bounds requires a nonnegative x");
        sx += v;
    }
    for (double v : y) {
        if (v < 0.0) throw ValueError("ratio_bounds requires a nonnegative y");
        sy += v;
    }
    if (sx == 0.0 || sy == 0.0) throw ValueError("ratio_bounds requires nonzero vectors");

    std::vector<double> g, h;
    grad_pair(t, x, y, g, h);

    constexpr double inf = std::numeric_limits<double>::infinity();
    RatioBounds rb;
    rb.v_val = inf;
    rb.u_val = -inf;
    auto consider = [&](VectorSide side, std::size_t k, double num, double den) {
        double r;
        if (den > 0.0) {
            r = num / den;
        } else if (num != 0.0) {
            r = num > 0.0 ? inf : -inf;
        } else {
            throw DegeneratePointError(std::string("degenerate point: (") +
                                       (side == VectorSide::X ? "x" : "y") + "[" +
                                       std::to_string(k) + "], gradient) both zero");
        }
        if (r < rb.v_val) {
            rb.v_val = r;
            rb.arg_min = {side, k};
        }
        if (r > rb.u_val) {
            rb.u_val = r;
            rb.arg_max = {side, k};
        }
    };
    for (std::size_t i = 0; i < x.size(); ++i) consider(VectorSide::X, i, g[i], x[i]);
    for (std::size_t j = 0; j < y.size(); ++j) consider(VectorSide::Y, j, h[j], y[j]);
    return rb;
}

ResidualParts residual_parts(const BiquadraticTensor& t, double lambda, std::span<const double> x,
                             std::span<const double> y) {
    check_dims(t, x, y);
    std::vector<double> g, h;
    grad_pair(t, x, y, g, h);
    ResidualParts parts;
    for (std::size_t i = 0; i < x.size(); ++i)
        parts.x_block = std::max(parts.x_block, std::abs(g[i] - lambda * x[i]));
    for (std::size_t j = 0; j < y.size(); ++j)
        parts.y_block = std::max(parts.y_block, std::abs(h[j] - lambda * y[j]));
    return parts;
}

double residual(const BiquadraticTensor& t, double lambda, std::span<const double> x,
                std::span<const double> y) {
    ResidualParts parts = residual_parts(t, lambda, x, y);
    return std::max(parts.x_block, parts.y_block);
}

}  // namespace biquad
