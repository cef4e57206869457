#include "biquad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "biquad/contraction.hpp"
#include "biquad/parallel.hpp"
#include "biquad/rng.hpp"

namespace biquad {

const char* to_string(EigClass c) {
    switch (c) {
        case EigClass::M: return "M";
        case EigClass::Mplus: return "M+";
        case EigClass::Mplusplus: return "M++";
    }
    return "?";
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSignTol = 1e-8;  // nonnegativity slack for classification

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

void canonicalize_sign(std::vector<double>& v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (v[arg] < 0.0)
        for (double& e : v) e = -e;
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    s = std::sqrt(s);
    for (double& e : v) e /= s;
}

bool pair_less(const MEigenpair& a, const MEigenpair& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// Roots on a degenerate family converge with stray components as large as
// cbrt(newton_tol); prefer the exact-zero representative when it is at least
// as good an eigenpair (the residual guard protects genuine small components).
void snap_zeros(const BiquadraticTensor& t, MEigenpair& p, double accept_tol) {
    constexpr double snap_tol = 2e-4;
    bool snapped = false;
    MEigenpair q = p;
    for (double& v : q.x)
        if (v != 0.0 && std::abs(v) <= snap_tol) {
            v = 0.0;
            snapped = true;
        }
    for (double& v : q.y)
        if (v != 0.0 && std::abs(v) <= snap_tol) {
            v = 0.0;
            snapped = true;
        }
    if (!snapped) return;
    normalize(q.x);
    normalize(q.y);
    q.lambda = eval_f(t, q.x, q.y);
    q.residual = residual(t, q.lambda, q.x, q.y);
    if (q.residual <= std::max(p.residual, accept_tol)) p = std::move(q);
}

// ---------- 2x2 grid oracle ----------

// Quadrilinear form sum a(i1,j1,i2,j2) p_i1 q_j1 r_i2 s_j2 for m = n = 2.
double quad4(const BiquadraticTensor& t, const double* p, const double* q, const double* r,
             const double* s) {
    const double* a = t.entries().data();
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < 2; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) acc += a[idx++] * p[i1] * q[j1] * r[i2] * s[j2];
    return acc;
}

struct AngleDerivs {
    double G, H;  // partial derivatives of F w.r.t. theta, phi
};

AngleDerivs angle_grad(const BiquadraticTensor& t, double theta, double phi) {
    const double x[2] = {std::cos(theta), std::sin(theta)};
    const double dx[2] = {-std::sin(theta), std::cos(theta)};
    const double y[2] = {std::cos(phi), std::sin(phi)};
    const double dy[2] = {-std::sin(phi), std::cos(phi)};
    return {quad4(t, dx, y, x, y) + quad4(t, x, y, dx, y),
            quad4(t, x, dy, x, y) + quad4(t, x, y, x, dy)};
}

// Torus distance with period pi.
double angle_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

struct Root {
    double theta, phi;
};

class RootDedup {
public:
    explicit RootDedup(double radius) : radius_(radius), cell_(radius) {}

    bool insert(const Root& r) {
        const long long ct = static_cast<long long>(std::floor(r.theta / cell_));
        const long long cp = static_cast<long long>(std::floor(r.phi / cell_));
        const long long wrap = static_cast<long long>(std::ceil(kPi / cell_));
        for (long long dt = -1; dt <= 1; ++dt)
            for (long long dp = -1; dp <= 1; ++dp) {
                // neighbor buckets with torus wrap
                long long kt = (ct + dt % wrap + wrap) % wrap;
                long long kp = (cp + dp % wrap + wrap) % wrap;
                auto it = buckets_.find(key(kt, kp));
                if (it == buckets_.end()) continue;
                for (const Root& o : it->second)
                    if (angle_dist(o.theta, r.theta) < radius_ && angle_dist(o.phi, r.phi) < radius_)
                        return false;
            }
        buckets_[key((ct % wrap + wrap) % wrap, (cp % wrap + wrap) % wrap)].push_back(r);
        kept_.push_back(r);
        return true;
    }

    const std::vector<Root>& roots() const { return kept_; }

private:
    static std::uint64_t key(long long a, long long b) {
        return (static_cast<std::uint64_t>(a) << 32) ^ static_cast<std::uint64_t>(b);
    }
    double radius_, cell_;
    std::unordered_map<std::uint64_t, std::vector<Root>> buckets_;
    std::vector<Root> kept_;
};

}  // namespace

MEigenpair classify_pair(const BiquadraticTensor& t, MEigenpair pair) {
    auto flip_ok = [&](const std::vector<double>& v, double s, double floor_val) {
        for (double e : v)
            if (s * e < floor_val) return false;
        return true;
    };
    pair.cls = EigClass::M;
    for (double sx : {1.0, -1.0}) {
        if (!flip_ok(pair.x, sx, -kSignTol)) continue;
        for (double sy : {1.0, -1.0}) {
            if (!flip_ok(pair.y, sy, -kSignTol)) continue;
            if (sx < 0.0)
                for (double& e : pair.x) e = -e;
            if (sy < 0.0)
                for (double& e : pair.y) e = -e;
            const bool strict =
                flip_ok(pair.x, 1.0, kSignTol) && flip_ok(pair.y, 1.0, kSignTol);
            pair.cls = strict ? EigClass::Mplusplus : EigClass::Mplus;
            if (t.is_nonnegative() && pair.lambda < -kSignTol)
                throw InternalError("M+ eigenvalue of a nonnegative tensor must be nonnegative");
            return pair;
        }
    }
    return pair;
}

std::vector<MEigenpair> enumerate_2x2(const BiquadraticTensor& t, int grid, double tol,
                                      EnumerationStats* stats) {
    if (t.m() != 2 || t.n() != 2) throw DimensionError("enumerate_2x2 requires m = n = 2");
    if (grid < 4) throw ValueError("grid must be >= 4");
    const double scale = std::max(t.max_abs(), 1.0);
    const double h = kPi / grid;
    const std::size_t nodes = static_cast<std::size_t>(grid) + 1;

    // Partial derivatives of F on the lattice nodes.
    std::vector<double> gv(nodes * nodes), hv(nodes * nodes);
    parallel_for(nodes, [&](std::size_t i) {
        for (std::size_t j = 0; j < nodes; ++j) {
            AngleDerivs d = angle_grad(t, i * h, j * h);
            gv[i * nodes + j] = d.G;
            hv[i * nodes + j] = d.H;
        }
    });

    const double straddle_tol = 1e-7 * scale;
    std::vector<Root> seeds;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double g00 = gv[i * nodes + j], g10 = gv[(i + 1) * nodes + j];
            const double g01 = gv[i * nodes + j + 1], g11 = gv[(i + 1) * nodes + j + 1];
            const double h00 = hv[i * nodes + j], h10 = hv[(i + 1) * nodes + j];
            const double h01 = hv[i * nodes + j + 1], h11 = hv[(i + 1) * nodes + j + 1];
            const double gmin = std::min(std::min(g00, g10), std::min(g01, g11));
            const double gmax = std::max(std::max(g00, g10), std::max(g01, g11));
            const double hmin = std::min(std::min(h00, h10), std::min(h01, h11));
            const double hmax = std::max(std::max(h00, h10), std::max(h01, h11));
            if (gmin <= straddle_tol && gmax >= -straddle_tol && hmin <= straddle_tol &&
                hmax >= -straddle_tol)
                seeds.push_back({(i + 0.5) * h, (j + 0.5) * h});
        }

    const double newton_tol = 1e-12 * scale;
    std::vector<char> ok(seeds.size(), 0);
    std::vector<Root> refined(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t s) {
        double theta = seeds[s].theta, phi = seeds[s].phi;
        for (int it = 0; it < 50; ++it) {
            AngleDerivs d = angle_grad(t, theta, phi);
            if (std::max(std::abs(d.G), std::abs(d.H)) <= newton_tol) {
                ok[s] = 1;
                break;
            }
            const double x[2] = {std::cos(theta), std::sin(theta)};
            const double dx[2] = {-std::sin(theta), std::cos(theta)};
            const double y[2] = {std::cos(phi), std::sin(phi)};
            const double dy[2] = {-std::sin(phi), std::cos(phi)};
            const double nx[2] = {-x[0], -x[1]}, ny[2] = {-y[0], -y[1]};
            double gtt = quad4(t, nx, y, x, y) + 2.0 * quad4(t, dx, y, dx, y) +
                         quad4(t, x, y, nx, y);
            double hpp = quad4(t, x, ny, x, y) + 2.0 * quad4(t, x, dy, x, dy) +
                         quad4(t, x, y, x, ny);
            double gtp = quad4(t, dx, dy, x, y) + quad4(t, dx, y, x, dy) +
                         quad4(t, x, dy, dx, y) + quad4(t, x, y, dx, dy);
            double det = gtt * hpp - gtp * gtp;
            if (std::abs(det) < 1e-14 * scale * scale) {
                gtt += 1e-8 * scale;
                hpp += 1e-8 * scale;
                det = gtt * hpp - gtp * gtp;
                if (det == 0.0) break;
            }
            double st = (d.G * hpp - d.H * gtp) / det;
            double sp = (gtt * d.H - gtp * d.G) / det;
            const double len = std::sqrt(st * st + sp * sp);
            if (len > 0.5) {  // keep steps inside a couple of cells
                st *= 0.5 / len;
                sp *= 0.5 / len;
            }
            theta -= st;
            phi -= sp;
        }
        theta = std::fmod(theta, kPi);
        if (theta < 0.0) theta += kPi;
        phi = std::fmod(phi, kPi);
        if (phi < 0.0) phi += kPi;
        refined[s] = {theta, phi};
    });

    RootDedup dedup(1e-6);
    std::size_t converged = 0;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        if (!ok[s]) continue;
        ++converged;
        dedup.insert(refined[s]);
    }
    if (stats) {
        stats->seeds = seeds.size();
        stats->converged = converged;
        stats->dropped = seeds.size() - converged;
    }

    std::vector<MEigenpair> out;
    out.reserve(dedup.roots().size());
    const double accept_tol = std::max(tol, tol * scale);
    for (const Root& r : dedup.roots()) {
        MEigenpair p;
        p.x = {std::cos(r.theta), std::sin(r.theta)};
        p.y = {std::cos(r.phi), std::sin(r.phi)};
        p.lambda = eval_f(t, p.x, p.y);
        canonicalize_sign(p.x);
        canonicalize_sign(p.y);
        p.residual = residual(t, p.lambda, p.x, p.y);
        snap_zeros(t, p, accept_tol);
        if (p.residual > accept_tol) continue;
        out.push_back(classify_pair(t, std::move(p)));
    }
    std::sort(out.begin(), out.end(), pair_less);
    // snapping can map several angular roots onto one representative
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const MEigenpair& a, const MEigenpair& b) {
                              return std::abs(a.lambda - b.lambda) <= 1e-12 * scale &&
                                     max_abs_diff(a.x, b.x) <= 1e-9 &&
                                     max_abs_diff(a.y, b.y) <= 1e-9;
                          }),
              out.end());
    return out;
}

// ---------- small-instance stationary-point search ----------

namespace {

// Solves the square system in place by Gaussian elimination with partial
// pivoting; returns false on (near-)singularity.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (std::abs(a[piv * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        const double d = a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double fct = a[r * n + col] / d;
            if (fct == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= fct * a[col * n + c];
            b[r] -= fct * b[col];
        }
    }
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
        b[r] = s / a[r * n + r];
    }
    return true;
}

struct KktMatrices {
    std::vector<double> sa;   // m x m: dg/dx
    std::vector<double> sb;   // n x n: dh/dy
    std::vector<double> mix;  // m x n: dg/dy (= (dh/dx)')
};

void kkt_matrices(const BiquadraticTensor& t, const std::vector<double>& x,
                  const std::vector<double>& y, KktMatrices& k) {
    const std::size_t m = t.m(), n = t.n();
    k.sa.assign(m * m, 0.0);
    k.sb.assign(n * n, 0.0);
    k.mix.assign(m * n, 0.0);
    const double* a = t.entries().data();
    std::size_t p = 0;
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t j1 = 0; j1 < n; ++j1)
            for (std::size_t i2 = 0; i2 < m; ++i2)
                for (std::size_t j2 = 0; j2 < n; ++j2) {
                    const double e = 0.5 * a[p++];
                    k.sa[i1 * m + i2] += e * y[j1] * y[j2];
                    k.sa[i2 * m + i1] += e * y[j1] * y[j2];
                    k.sb[j1 * n + j2] += e * x[i1] * x[i2];
                    k.sb[j2 * n + j1] += e * x[i1] * x[i2];
                    k.mix[i1 * n + j1] += e * x[i2] * y[j2];
                    k.mix[i1 * n + j2] += e * y[j1] * x[i2];
                    k.mix[i2 * n + j1] += e * x[i1] * y[j2];
                    k.mix[i2 * n + j2] += e * x[i1] * y[j1];
                }
}

struct StationaryPoint {
    std::vector<double> x, y;
    bool ok = false;
};

// Damped Newton on [g - lambda x; h - mu y; (1 - |x|^2)/2; (1 - |y|^2)/2].
StationaryPoint kkt_newton(const BiquadraticTensor& t, std::vector<double> x,
                           std::vector<double> y, double scale) {
    const std::size_t m = t.m(), n = t.n(), dim = m + n + 2;
    normalize(x);
    normalize(y);
    std::vector<double> g, h;
    grad_pair(t, x, y, g, h);
    double lam = 0.0, mu = 0.0;
    for (std::size_t i = 0; i < m; ++i) lam += x[i] * g[i];
    for (std::size_t j = 0; j < n; ++j) mu += y[j] * h[j];

    auto eval_res = [&](const std::vector<double>& xx, const std::vector<double>& yy, double l,
                        double u, std::vector<double>& out) {
        grad_pair(t, xx, yy, g, h);
        out.assign(dim, 0.0);
        double nx = 0.0, ny = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            out[i] = g[i] - l * xx[i];
            nx += xx[i] * xx[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            out[m + j] = h[j] - u * yy[j];
            ny += yy[j] * yy[j];
        }
        out[m + n] = 0.5 * (1.0 - nx);
        out[m + n + 1] = 0.5 * (1.0 - ny);
    };

    std::vector<double> F, Fn, rhs, jac;
    KktMatrices k;
    eval_res(x, y, lam, mu, F);

    auto assemble = [&](double ridge) {
        jac.assign(dim * dim, 0.0);
        for (std::size_t d = 0; d < dim; ++d) jac[d * dim + d] = ridge;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t i2 = 0; i2 < m; ++i2) jac[i * dim + i2] += k.sa[i * m + i2];
            jac[i * dim + i] -= lam;
            for (std::size_t j = 0; j < n; ++j) jac[i * dim + m + j] += k.mix[i * n + j];
            jac[i * dim + m + n] = -x[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < m; ++i) jac[(m + j) * dim + i] += k.mix[i * n + j];
            for (std::size_t j2 = 0; j2 < n; ++j2) jac[(m + j) * dim + m + j2] += k.sb[j * n + j2];
            jac[(m + j) * dim + m + j] -= mu;
            jac[(m + j) * dim + m + n + 1] = -y[j];
        }
        for (std::size_t i = 0; i < m; ++i) jac[(m + n) * dim + i] = -x[i];
        for (std::size_t j = 0; j < n; ++j) jac[(m + n + 1) * dim + m + j] = -y[j];
    };

    for (int it = 0; it < 60; ++it) {
        double fnorm = 0.0;
        for (double v : F) fnorm = std::max(fnorm, std::abs(v));
        if (fnorm <= 1e-11 * scale) {
            StationaryPoint sp;
            normalize(x);
            normalize(y);
            sp.x = std::move(x);
            sp.y = std::move(y);
            sp.ok = true;
            return sp;
        }
        kkt_matrices(t, x, y, k);
        assemble(0.0);
        rhs = F;
        for (double& v : rhs) v = -v;
        if (!solve_dense(jac, rhs, dim)) {
            assemble(1e-8 * scale);  // singular Jacobian: Tikhonov retry
            rhs = F;
            for (double& v : rhs) v = -v;
            if (!solve_dense(jac, rhs, dim)) return {};
        }

        double base = 0.0;
        for (double v : F) base += v * v;
        base = std::sqrt(base);
        double step = 1.0;
        std::vector<double> xn(m), yn(n);
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t i = 0; i < m; ++i) xn[i] = x[i] + step * rhs[i];
            for (std::size_t j = 0; j < n; ++j) yn[j] = y[j] + step * rhs[m + j];
            const double ln = lam + step * rhs[m + n];
            const double un = mu + step * rhs[m + n + 1];
            eval_res(xn, yn, ln, un, Fn);
            double fn = 0.0;
            for (double v : Fn) fn += v * v;
            fn = std::sqrt(fn);
            if (fn < (1.0 - 1e-4 * step) * base || step < 1e-4) {
                x = xn;
                y = yn;
                lam = ln;
                mu = un;
                F = Fn;
                break;
            }
            step *= 0.5;
        }
    }
    return {};
}

}  // namespace

std::vector<MEigenpair> enumerate_small(const BiquadraticTensor& t, int n_starts, double tol,
                                        std::uint64_t seed, EnumerationStats* stats) {
    if (t.m() * t.n() > 36)
        throw DimensionError("enumerate_small is limited to m*n <= 36");
    if (n_starts < 1) throw ValueError("n_starts must be >= 1");
    if (!(tol > 0.0)) throw ValueError("tol must be positive");
    const std::size_t m = t.m(), n = t.n();
    const double scale = std::max(t.max_abs(), 1.0);

    std::vector<StationaryPoint> points(static_cast<std::size_t>(n_starts));
    parallel_for(points.size(), [&](std::size_t s) {
        Rng rng = Rng::substream(seed, s);
        std::vector<double> x0(m), y0(n);
        for (double& v : x0) v = rng.normal();
        for (double& v : y0) v = rng.normal();
        points[s] = kkt_newton(t, std::move(x0), std::move(y0), scale);
    });

    std::vector<MEigenpair> out;
    std::size_t dropped = 0;
    std::vector<double> g, h;
    for (auto& sp : points) {
        if (!sp.ok) {
            ++dropped;
            continue;
        }
        grad_pair(t, sp.x, sp.y, g, h);
        double lam = 0.0, mu = 0.0;
        for (std::size_t i = 0; i < m; ++i) lam += sp.x[i] * g[i];
        for (std::size_t j = 0; j < n; ++j) mu += sp.y[j] * h[j];
        double proj_x = 0.0, proj_y = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            proj_x = std::max(proj_x, std::abs(g[i] - lam * sp.x[i]));
        for (std::size_t j = 0; j < n; ++j)
            proj_y = std::max(proj_y, std::abs(h[j] - mu * sp.y[j]));
        if (proj_x > tol * scale || proj_y > tol * scale) {
            ++dropped;
            continue;
        }
        MEigenpair p;
        p.x = sp.x;
        p.y = sp.y;
        canonicalize_sign(p.x);
        canonicalize_sign(p.y);
        p.lambda = eval_f(t, p.x, p.y);
        p.residual = residual(t, p.lambda, p.x, p.y);
        snap_zeros(t, p, tol * scale);
        bool dup = false;
        for (const MEigenpair& q : out)
            if (std::abs(q.lambda - p.lambda) <= 1e-7 * scale && max_abs_diff(q.x, p.x) <= 1e-5 &&
                max_abs_diff(q.y, p.y) <= 1e-5) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(classify_pair(t, std::move(p)));
    }
    if (stats) {
        stats->seeds = static_cast<std::size_t>(n_starts);
        stats->converged = static_cast<std::size_t>(n_starts) - dropped;
        stats->dropped = dropped;
    }
    std::sort(out.begin(), out.end(), pair_less);
    return out;
}

SpectralSummary spectral_summary(const std::vector<MEigenpair>& pairs,
                                 const BiquadraticTensor& t) {
    if (pairs.empty()) throw ValueError("spectral_summary requires a nonempty eigenpair list");
    SpectralSummary s;
    s.lambda_max = -std::numeric_limits<double>::infinity();
    for (const MEigenpair& p : pairs) {
        s.eigenvalues.push_back(p.lambda);
        s.lambda_max = std::max(s.lambda_max, p.lambda);
        s.rho_M = std::max(s.rho_M, std::abs(p.lambda));
        if (p.cls != EigClass::M) {
            s.mplus_set.push_back(p.lambda);
            if (!s.lambda_plus_min || p.lambda < *s.lambda_plus_min)
                s.lambda_plus_min = p.lambda;
        }
    }
    std::sort(s.eigenvalues.rbegin(), s.eigenvalues.rend());
    std::sort(s.mplus_set.rbegin(), s.mplus_set.rend());

    if (t.is_nonnegative()) {
        const double tol = 1e-9 * std::max(t.max_abs(), 1.0);
        if (std::abs(s.rho_M - s.lambda_max) > tol)
            throw InternalError("weak Perron-Frobenius violated: rho_M != lambda_max");
        if (s.mplus_set.empty() || std::abs(s.mplus_set.front() - s.lambda_max) > tol)
            throw InternalError("largest eigenvalue of a nonnegative tensor must be M+");
    }
    return s;
}

// ---------- rho bound estimation ----------

namespace {

// Hyperspherical map: angles in (0, pi/2)^(d-1) to a positive unit d-vector.
std::vector<double> angles_to_vec(std::span<const double> a) {
    const std::size_t d = a.size() + 1;
    std::vector<double> v(d);
    double sines = 1.0;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        v[k] = sines * std::cos(a[k]);
        sines *= std::sin(a[k]);
    }
    v[d - 1] = sines;
    return v;
}

struct RatioPoint {
    double v_min, u_max;
    std::vector<double> x, y;
};

RatioPoint ratio_point(const BiquadraticTensor& t, std::span<const double> ax,
                       std::span<const double> ay) {
    RatioPoint rp;
    rp.x = angles_to_vec(ax);
    rp.y = angles_to_vec(ay);
    std::vector<double> g, h;
    grad_pair(t, rp.x, rp.y, g, h);
    rp.v_min = std::numeric_limits<double>::infinity();
    rp.u_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rp.x.size(); ++i) {
        const double r = g[i] / rp.x[i];
        rp.v_min = std::min(rp.v_min, r);
        rp.u_max = std::max(rp.u_max, r);
    }
    for (std::size_t j = 0; j < rp.y.size(); ++j) {
        const double r = h[j] / rp.y[j];
        rp.v_min = std::min(rp.v_min, r);
        rp.u_max = std::max(rp.u_max, r);
    }
    return rp;
}

struct SearchOutcome {
    double value = 0.0;
    std::vector<double> x, y;
};

// Compass search over the interior angle box; minimizes u or maximizes v.
SearchOutcome compass_search(const BiquadraticTensor& t, std::vector<double> a, bool minimize_u) {
    const std::size_t mdim = t.m() - 1;
    const double lo = 1e-9, hi = kPi / 2 - 1e-9;
    auto objective = [&](const std::vector<double>& ang) {
        RatioPoint rp = ratio_point(t, std::span<const double>(ang).first(mdim),
                                    std::span<const double>(ang).subspan(mdim));
        return minimize_u ? rp.u_max : -rp.v_min;
    };
    double best = objective(a);
    double step = 0.4;
    while (step > 1e-9) {
        bool improved = false;
        for (std::size_t k = 0; k < a.size(); ++k)
            for (double dir : {1.0, -1.0}) {
                const double saved = a[k];
                a[k] = std::clamp(saved + dir * step, lo, hi);
                const double v = objective(a);
                if (v < best - 1e-15) {
                    best = v;
                    improved = true;
                } else {
                    a[k] = saved;
                }
            }
        if (!improved) step *= 0.5;
    }
    RatioPoint rp = ratio_point(t, std::span<const double>(a).first(mdim),
                                std::span<const double>(a).subspan(mdim));
    return {minimize_u ? rp.u_max : rp.v_min, std::move(rp.x), std::move(rp.y)};
}

}  // namespace

RhoEstimates estimate_rho_bounds(const BiquadraticTensor& t, int n_starts, std::uint64_t seed) {
    if (!t.is_nonnegative())
        throw ValueError("estimate_rho_bounds requires a nonnegative tensor");
    if (n_starts < 1) throw ValueError("n_starts must be >= 1");
    const std::size_t dim = (t.m() - 1) + (t.n() - 1);

    std::vector<SearchOutcome> mins(static_cast<std::size_t>(n_starts));
    std::vector<SearchOutcome> maxs(static_cast<std::size_t>(n_starts));
    parallel_for(static_cast<std::size_t>(n_starts), [&](std::size_t s) {
        std::vector<double> a(dim, kPi / 4);
        if (s > 0) {
            Rng rng = Rng::substream(seed, s);
            for (double& v : a) v = rng.uniform(0.15, kPi / 2 - 0.15);
        }
        mins[s] = compass_search(t, a, true);
        maxs[s] = compass_search(t, a, false);
    });

    std::size_t bi = 0, bx = 0;
    for (std::size_t s = 1; s < mins.size(); ++s) {
        if (mins[s].value < mins[bi].value) bi = s;
        if (maxs[s].value > maxs[bx].value) bx = s;
    }
    RhoEstimates est;
    est.rho_star_lower = mins[bi].value;
    est.arg_lower_x = std::move(mins[bi].x);
    est.arg_lower_y = std::move(mins[bi].y);
    est.rho_star_upper = maxs[bx].value;
    est.arg_upper_x = std::move(maxs[bx].x);
    est.arg_upper_y = std::move(maxs[bx].y);
    return est;
}

}  // namespace biquad
