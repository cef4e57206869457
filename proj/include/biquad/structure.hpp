#pragma once

#include <optional>
#include <span>
#include <vector>

#include "biquad/tensor.hpp"

namespace biquad {

struct IndexSupport {
    VectorSide side = VectorSide::X;
    std::vector<std::size_t> indices;  ///< sorted positions with |v| > tol
};

/// Positions i with |v_i| > tol, sorted ascending.
std::vector<std::size_t> support(std::span<const double> v, double tol = 0.0);

struct Propagated {
    std::vector<double> u;  ///< g(T; x, y) + x * |y|^2
    std::vector<double> v;  ///< h(T; x, y) + y * |x|^2
};

/// One step of the (A + I) support-propagation map. Requires T nonnegative
/// and x, y nonnegative nonzero; guarantees supp(x) is contained in supp(u)
/// and supp(y) in supp(v).
Propagated propagate_support(const BiquadraticTensor& t, std::span<const double> x,
                             std::span<const double> y);

/// Irreducibility verification by iterated support propagation from all
/// unit-vector seeds, run on the exact nonzero pattern (boolean semiring).
/// True iff every propagated x-pattern is full after m-1 steps.
bool verify_x_irreducible_iterated(const BiquadraticTensor& t, double tol = 0.0);
bool verify_y_irreducible_iterated(const BiquadraticTensor& t, double tol = 0.0);

/// Slice-matrix route: true iff every symmetrized x-slice has a connected
/// nonzero-pattern graph. Runs the iterated-support route as well and throws
/// InternalError if the two verdicts disagree.
bool is_x_partially_irreducible(const BiquadraticTensor& t, double tol = 0.0);
bool is_y_partially_irreducible(const BiquadraticTensor& t, double tol = 0.0);

struct ReducibilityWitness {
    VectorSide side = VectorSide::X;      ///< X: (J_x, j) block; Y: (i, J_y) block
    std::vector<std::size_t> block;       ///< J_x or J_y
    std::size_t slice = 0;                ///< the slice index j (X side) or i (Y side)
};

struct IrreducibilityReport {
    bool x_partial_irreducible = false;
    bool y_partial_irreducible = false;
    bool irreducible = false;
    bool method_agreement = false;
    std::optional<ReducibilityWitness> witness;  ///< present iff reducible
};

/// Full verdict over both sides; a reducible verdict carries the
/// lexicographically smallest witness block.
IrreducibilityReport irreducibility_report(const BiquadraticTensor& t, double tol = 0.0);

}  // namespace biquad
