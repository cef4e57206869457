#include "biquad/structure.hpp"

#include <cmath>
#include <string>

#include "biquad/contraction.hpp"

namespace biquad {

namespace {

void require_nonnegative(const BiquadraticTensor& t) {
    if (!t.is_nonnegative())
        throw ValueError("operation requires a nonnegative tensor");
}

// Undirected coupling between x-indices r, s in the slice at column j:
// nonzero iff a(r,j,s,j) + a(s,j,r,j) > tol (entries are nonnegative here).
bool x_coupled(const BiquadraticTensor& t, std::size_t j, std::size_t r, std::size_t s,
               double tol) {
    return t(r, j, s, j) + t(s, j, r, j) > tol;
}

bool y_coupled(const BiquadraticTensor& t, std::size_t i, std::size_t r, std::size_t s,
               double tol) {
    return t(i, r, i, s) + t(i, s, i, r) > tol;
}

// Connected component of vertex 0 in the off-diagonal nonzero-pattern graph
// of a symmetric matrix. Entries count as nonzero when > tol.
std::vector<std::size_t> component_of_zero(const Matrix& s, double tol) {
    const std::size_t n = s.rows();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < n; ++w)
            if (!seen[w] && w != v && std::abs(s(v, w)) > tol) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    std::vector<std::size_t> comp;
    for (std::size_t v = 0; v < n; ++v)
        if (seen[v]) comp.push_back(v);
    return comp;
}

bool graph_connected(const Matrix& s, double tol) {
    return component_of_zero(s, tol).size() == s.rows();
}

// Iterated-support route of the verification theorem: with y pinned at e_j,
// grow the x-pattern through the (A + I) map for m-1 steps starting at e_i.
bool x_pattern_fills(const BiquadraticTensor& t, std::size_t i, std::size_t j, double tol) {
    const std::size_t m = t.m();
    std::vector<bool> p(m, false);
    p[i] = true;
    for (std::size_t step = 0; step + 1 < m; ++step) {
        std::vector<bool> q = p;  // identity term keeps the current support
        for (std::size_t r = 0; r < m; ++r) {
            if (q[r]) continue;
            for (std::size_t s = 0; s < m; ++s)
                if (p[s] && x_coupled(t, j, r, s, tol)) {
                    q[r] = true;
                    break;
                }
        }
        p = std::move(q);
    }
    for (bool b : p)
        if (!b) return false;
    return true;
}

bool y_pattern_fills(const BiquadraticTensor& t, std::size_t i, std::size_t j, double tol) {
    const std::size_t n = t.n();
    std::vector<bool> p(n, false);
    p[j] = true;
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::vector<bool> q = p;
        for (std::size_t r = 0; r < n; ++r) {
            if (q[r]) continue;
            for (std::size_t s = 0; s < n; ++s)
                if (p[s] && y_coupled(t, i, r, s, tol)) {
                    q[r] = true;
                    break;
                }
        }
        p = std::move(q);
    }
    for (bool b : p)
        if (!b) return false;
    return true;
}

bool x_irreducible_graph(const BiquadraticTensor& t, double tol) {
    for (std::size_t j = 0; j < t.n(); ++j)
        if (!graph_connected(t.slice_x(j), tol)) return false;
    return true;
}

bool y_irreducible_graph(const BiquadraticTensor& t, double tol) {
    for (std::size_t i = 0; i < t.m(); ++i)
        if (!graph_connected(t.slice_y(i), tol)) return false;
    return true;
}

}  // namespace

std::vector<std::size_t> support(std::span<const double> v, double tol) {
    if (tol < 0.0) throw ValueError("tolerance must be nonnegative");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > tol) idx.push_back(i);
    return idx;
}

Propagated propagate_support(const BiquadraticTensor& t, std::span<const double> x,
                             std::span<const double> y) {
    require_nonnegative(t);
    double sx = 0.0, sy = 0.0;
    for (double v : x) {
        if (v < 0.0) throw ValueError("propagate_support requires a nonnegative x");
        sx += v * v;
    }
    for (double v : y) {
        if (v < 0.0) throw ValueError("propagate_support requires a nonnegative y");
        sy += v * v;
    }
    if (sx == 0.0 || sy == 0.0) throw ValueError("propagate_support requires nonzero vectors");

    Propagated out;
    grad_pair(t, x, y, out.u, out.v);
    for (std::size_t i = 0; i < x.size(); ++i) out.u[i] += x[i] * sy;
    for (std::size_t j = 0; j < y.size(); ++j) out.v[j] += y[j] * sx;
    return out;
}

bool verify_x_irreducible_iterated(const BiquadraticTensor& t, double tol) {
    require_nonnegative(t);
    for (std::size_t i = 0; i < t.m(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j)
            if (!x_pattern_fills(t, i, j, tol)) return false;
    return true;
}

bool verify_y_irreducible_iterated(const BiquadraticTensor& t, double tol) {
    require_nonnegative(t);
    for (std::size_t i = 0; i < t.m(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j)
            if (!y_pattern_fills(t, i, j, tol)) return false;
    return true;
}

bool is_x_partially_irreducible(const BiquadraticTensor& t, double tol) {
    require_nonnegative(t);
    bool graph = x_irreducible_graph(t, tol);
    bool iterated = verify_x_irreducible_iterated(t, tol);
    if (graph != iterated)
        throw InternalError("x-irreducibility: slice-graph and iterated-support verdicts disagree");
    return graph;
}

bool is_y_partially_irreducible(const BiquadraticTensor& t, double tol) {
    require_nonnegative(t);
    bool graph = y_irreducible_graph(t, tol);
    bool iterated = verify_y_irreducible_iterated(t, tol);
    if (graph != iterated)
        throw InternalError("y-irreducibility: slice-graph and iterated-support verdicts disagree");
    return graph;
}

IrreducibilityReport irreducibility_report(const BiquadraticTensor& t, double tol) {
    IrreducibilityReport rep;
    rep.x_partial_irreducible = is_x_partially_irreducible(t, tol);
    rep.y_partial_irreducible = is_y_partially_irreducible(t, tol);
    rep.irreducible = rep.x_partial_irreducible && rep.y_partial_irreducible;
    rep.method_agreement = true;  // is_*_partially_irreducible throws otherwise
    if (!rep.x_partial_irreducible) {
        for (std::size_t j = 0; j < t.n(); ++j) {
            Matrix s = t.slice_x(j);
            auto comp = component_of_zero(s, tol);
            if (comp.size() < s.rows()) {
                rep.witness = ReducibilityWitness{VectorSide::X, std::move(comp), j};
                break;
            }
        }
    } else if (!rep.y_partial_irreducible) {
        for (std::size_t i = 0; i < t.m(); ++i) {
            Matrix s = t.slice_y(i);
            auto comp = component_of_zero(s, tol);
            if (comp.size() < s.rows()) {
                rep.witness = ReducibilityWitness{VectorSide::Y, std::move(comp), i};
                break;
            }
        }
    }
    return rep;
}

}  // namespace biquad
