#include "biquad/collatz.hpp"

#include <cmath>
#include <limits>

#include "biquad/contraction.hpp"
#include "biquad/parallel.hpp"
#include "biquad/rng.hpp"

namespace biquad {

const char* to_string(CollatzStatus s) {
    switch (s) {
        case CollatzStatus::ConvergedGap: return "converged_gap";
        case CollatzStatus::ConvergedStagnation: return "converged_stagnation";
        case CollatzStatus::MaxIterations: return "max_iterations";
        case CollatzStatus::DegenerateBreakdown: return "degenerate_breakdown";
    }
    return "?";
}

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
    double nv = norm2(v);
    for (double& e : v) e /= nv;
}

}  // namespace

CollatzResult collatz_run(const BiquadraticTensor& t, std::span<const double> x0,
                          std::span<const double> y0, const CollatzConfig& cfg,
                          bool allow_general) {
    if (!allow_general && !t.is_nonnegative())
        throw ValueError("collatz_run requires a nonnegative tensor");
    if (cfg.k_max < 1) throw ValueError("k_max must be >= 1");
    if (!(cfg.epsilon > 0.0)) throw ValueError("epsilon must be positive");
    if (x0.size() != t.m() || y0.size() != t.n())
        throw DimensionError("start vector lengths do not match tensor dimensions");
    for (double v : x0)
        if (v < 0.0) throw ValueError("invalid start: x0 has a negative entry");
    for (double v : y0)
        if (v < 0.0) throw ValueError("invalid start: y0 has a negative entry");
    if (norm2(x0) == 0.0 || norm2(y0) == 0.0)
        throw ValueError("invalid start: zero vector");

    std::vector<double> x(x0.begin(), x0.end()), y(y0.begin(), y0.end());
    normalize(x);
    normalize(y);

    CollatzResult res;
    std::vector<double> g, h;
    double lo_prev = -1.0, up_prev = std::numeric_limits<double>::infinity();

    for (int k = 0; k <= cfg.k_max; ++k) {
        grad_pair(t, x, y, g, h);
        if (cfg.shift != 0.0) {
            double sy = 0.0, sx = 0.0;
            for (double v : y) sy += v * v;
            for (double v : x) sx += v * v;
            for (std::size_t i = 0; i < x.size(); ++i) g[i] += cfg.shift * x[i] * sy;
            for (std::size_t j = 0; j < y.size(); ++j) h[j] += cfg.shift * y[j] * sx;
        }

        // Bounds over strictly positive components only.
        double lo = std::numeric_limits<double>::infinity();
        double up = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] > 0.0) {
                double r = g[i] / x[i];
                lo = std::min(lo, r);
                up = std::max(up, r);
            }
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] > 0.0) {
                double r = h[j] / y[j];
                lo = std::min(lo, r);
                up = std::max(up, r);
            }
        lo -= cfg.shift;
        up -= cfg.shift;
        if (cfg.record_trace) res.trace.emplace_back(lo, up);

        const double gap = std::abs(lo - up);
        const double stagnation = std::abs(lo - lo_prev) + std::abs(up - up_prev);
        res.lambda_lower = lo;
        res.lambda_upper = up;
        res.iterations = k;
        if (std::min(gap, stagnation) <= cfg.epsilon) {
            res.status = gap <= cfg.epsilon ? CollatzStatus::ConvergedGap
                                            : CollatzStatus::ConvergedStagnation;
            break;
        }
        if (k == cfg.k_max) {
            res.status = CollatzStatus::MaxIterations;
            break;
        }
        lo_prev = lo;
        up_prev = up;

        const double ng = norm2(g), nh = norm2(h);
        if (ng == 0.0 || nh == 0.0) {
            res.status = CollatzStatus::DegenerateBreakdown;
            break;
        }
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = g[i] / ng;
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = h[j] / nh;
    }

    res.lambda_est = 0.5 * (res.lambda_lower + res.lambda_upper);
    res.x = std::move(x);
    res.y = std::move(y);
    res.residual = residual(t, res.lambda_est, res.x, res.y);
    return res;
}

MultistartResult collatz_multistart(const BiquadraticTensor& t, const CollatzConfig& cfg,
                                    int n_starts, std::uint64_t seed, bool allow_general) {
    if (n_starts < 1) throw ValueError("n_starts must be >= 1");
    MultistartResult agg;
    agg.per_start.resize(static_cast<std::size_t>(n_starts));

    parallel_for(static_cast<std::size_t>(n_starts), [&](std::size_t r) {
        Rng rng = Rng::substream(seed, r);
        std::vector<double> x0(t.m()), y0(t.n());
        for (double& v : x0) v = rng.uniform01();
        for (double& v : y0) v = rng.uniform01();
        agg.per_start[r] = collatz_run(t, x0, y0, cfg, allow_general);
    });

    std::size_t best_idx = 0;
    for (std::size_t r = 1; r < agg.per_start.size(); ++r)
        if (agg.per_start[r].lambda_est > agg.per_start[best_idx].lambda_est) best_idx = r;
    agg.best = agg.per_start[best_idx];

    const double best = agg.best.lambda_est;
    std::size_t n_lo = 0, n_up = 0;
    for (const auto& run : agg.per_start) {
        if (std::abs(run.lambda_lower - best) <= 1e-6) ++n_lo;
        if (std::abs(run.lambda_upper - best) <= 1e-6) ++n_up;
        agg.mean_iterations += run.iterations;
        agg.mean_gap += run.lambda_upper - run.lambda_lower;
        agg.mean_residual += run.residual;
    }
    const double n = static_cast<double>(n_starts);
    agg.agreement_ratio_lower = static_cast<double>(n_lo) / n;
    agg.agreement_ratio_upper = static_cast<double>(n_up) / n;
    agg.mean_iterations /= n;
    agg.mean_gap /= n;
    agg.mean_residual /= n;
    return agg;
}

}  // namespace biquad
