#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "biquad/structure.hpp"
#include "paper_tensors.hpp"

using namespace biquad;
using namespace fixtures;

namespace {

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<double> normalized(std::vector<double> v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    s = std::sqrt(s);
    for (double& e : v) e /= s;
    return v;
}

// Sparse nonnegative vector with a prescribed support size; exact zeros
// elsewhere.
std::vector<double> sparse_nonneg(std::size_t d, std::size_t nnz, biquad::Rng& rng) {
    std::vector<double> v(d, 0.0);
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    for (std::size_t i = d; i > 1; --i)
        std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.uniform01() * i)]);
    for (std::size_t k = 0; k < nnz; ++k) v[idx[k]] = rng.uniform(0.1, 1.0);
    return v;
}

// Random dense positive tensor made x-partially reducible by zeroing the
// cross-block slice entries at one column.
BiquadraticTensor block_x_reducible(std::size_t m, std::size_t n, biquad::Rng& rng) {
    BiquadraticTensor raw = random_nonneg_tensor(m, n, rng);
    std::vector<double> a(raw.entries().begin(), raw.entries().end());
    const std::size_t j = static_cast<std::size_t>(rng.uniform01() * n);
    const std::size_t cut = 1 + static_cast<std::size_t>(rng.uniform01() * (m - 1));
    for (std::size_t i1 = 0; i1 < cut; ++i1)
        for (std::size_t i2 = cut; i2 < m; ++i2) {
            a[((i1 * n + j) * m + i2) * n + j] = 0.0;
            a[((i2 * n + j) * m + i1) * n + j] = 0.0;
        }
    return BiquadraticTensor(m, n, std::move(a));
}

BiquadraticTensor block_y_reducible(std::size_t m, std::size_t n, biquad::Rng& rng) {
    BiquadraticTensor raw = random_nonneg_tensor(m, n, rng);
    std::vector<double> a(raw.entries().begin(), raw.entries().end());
    const std::size_t i = static_cast<std::size_t>(rng.uniform01() * m);
    const std::size_t cut = 1 + static_cast<std::size_t>(rng.uniform01() * (n - 1));
    for (std::size_t j1 = 0; j1 < cut; ++j1)
        for (std::size_t j2 = cut; j2 < n; ++j2) {
            a[((i * n + j1) * m + i) * n + j2] = 0.0;
            a[((i * n + j2) * m + i) * n + j1] = 0.0;
        }
    return BiquadraticTensor(m, n, std::move(a));
}

}  // namespace

TEST_CASE("support extraction") {
    CHECK(support(std::vector<double>{1, 0}) == std::vector<std::size_t>{0});
    CHECK(support(std::vector<double>{1e-15, 1}, 1e-12) == std::vector<std::size_t>{1});
    CHECK(support(std::vector<double>{0.2936, 0.9559}) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("support propagation at fixed points and growth points") {
    SUBCASE("zero tensor: pure identity contribution") {
        Propagated p = propagate_support(BiquadraticTensor::zero(2, 2),
                                         std::vector<double>{1, 0}, std::vector<double>{1, 0});
        CHECK(p.u == std::vector<double>{1, 0});
        CHECK(p.v == std::vector<double>{1, 0});
    }

    SUBCASE("single-entry tensor: support stalls at the second axis") {
        Propagated p = propagate_support(example_3_6(), std::vector<double>{0, 1},
                                         std::vector<double>{0, 1});
        CHECK(support(p.u) == std::vector<std::size_t>{1});
        CHECK(support(p.v) == std::vector<std::size_t>{1});
    }

    SUBCASE("irreducible example: strict growth from a unit seed") {
        Propagated p = propagate_support(example_4_2(), std::vector<double>{1, 0},
                                         std::vector<double>{1, 0});
        CHECK(support(p.u) == std::vector<std::size_t>{0, 1});
        CHECK(support(p.v) == std::vector<std::size_t>{0, 1});
        // frozen from the entry expansion: u = (4,1) + (1,0), v likewise
        CHECK(p.u[0] == doctest::Approx(5.0));
        CHECK(p.u[1] == doctest::Approx(1.0));
        CHECK(p.v[0] == doctest::Approx(5.0));
        CHECK(p.v[1] == doctest::Approx(1.0));
    }

    SUBCASE("input validation") {
        std::vector<double> ok{1, 0}, zero{0, 0}, neg{-1, 1};
        CHECK_THROWS_AS(propagate_support(example_4_2(), zero, ok), ValueError);
        CHECK_THROWS_AS(propagate_support(example_4_2(), neg, ok), ValueError);
        std::vector<double> bad(16, 0.0);
        bad[0] = -1.0;
        CHECK_THROWS_AS(propagate_support(BiquadraticTensor(2, 2, bad), ok, ok), ValueError);
    }
}

TEST_CASE("partial irreducibility verdicts on the published examples") {
    CHECK(is_x_partially_irreducible(example_4_2()));
    CHECK(is_y_partially_irreducible(example_4_2()));

    CHECK_FALSE(is_x_partially_irreducible(example_4_5()));
    CHECK_FALSE(is_y_partially_irreducible(example_4_5()));

    CHECK_FALSE(is_x_partially_irreducible(example_3_8()));
    CHECK_FALSE(is_y_partially_irreducible(example_3_8()));

    // the reducible symmetric example: both one-sided verdicts are negative
    CHECK_FALSE(is_x_partially_irreducible(example_4_9()));
    CHECK_FALSE(is_y_partially_irreducible(example_4_9()));
}

TEST_CASE("iterated-support verification") {
    CHECK(verify_x_irreducible_iterated(example_4_2()));
    CHECK(verify_y_irreducible_iterated(example_4_2()));
    CHECK_FALSE(verify_x_irreducible_iterated(example_3_6()));
    CHECK_FALSE(verify_x_irreducible_iterated(BiquadraticTensor::identity(2, 2)));
    CHECK_FALSE(verify_y_irreducible_iterated(BiquadraticTensor::identity(2, 2)));
}

TEST_CASE("irreducibility reports and witnesses") {
    SUBCASE("fully reducible example") {
        IrreducibilityReport rep = irreducibility_report(example_4_5());
        CHECK_FALSE(rep.irreducible);
        CHECK(rep.method_agreement);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->side == VectorSide::X);
        CHECK(rep.witness->slice == 0);
        CHECK(rep.witness->block == std::vector<std::size_t>{0});
        // the witness block satisfies the defining zero-sum condition exactly
        BiquadraticTensor t = example_4_5();
        for (std::size_t i1 : rep.witness->block)
            for (std::size_t i2 = 0; i2 < t.m(); ++i2) {
                if (std::find(rep.witness->block.begin(), rep.witness->block.end(), i2) !=
                    rep.witness->block.end())
                    continue;
                CHECK(t.entry(i1, rep.witness->slice, i2, rep.witness->slice) +
                          t.entry(i2, rep.witness->slice, i1, rep.witness->slice) ==
                      0.0);
            }
    }

    SUBCASE("irreducible example") {
        IrreducibilityReport rep = irreducibility_report(example_4_2());
        CHECK(rep.irreducible);
        CHECK(rep.method_agreement);
        CHECK_FALSE(rep.witness.has_value());
    }

    SUBCASE("diagonal tensor") {
        IrreducibilityReport rep = irreducibility_report(example_3_8());
        CHECK_FALSE(rep.irreducible);
        REQUIRE(rep.witness.has_value());
    }
}

TEST_CASE("support monotonicity on random instances") {
    biquad::Rng rng(808);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 4);
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 4);
        BiquadraticTensor t = trial % 3 == 0 ? block_x_reducible(m, n, rng)
                                             : random_nonneg_tensor(m, n, rng);
        std::size_t nx = 1 + static_cast<std::size_t>(rng.uniform01() * m);
        std::size_t ny = 1 + static_cast<std::size_t>(rng.uniform01() * n);
        std::vector<double> x = sparse_nonneg(m, nx, rng), y = sparse_nonneg(n, ny, rng);
        Propagated p = propagate_support(t, x, y);
        CHECK(subset(support(x), support(p.u)));
        CHECK(subset(support(y), support(p.v)));
    }
}

TEST_CASE("certified irreducible tensors reach full support from every unit seed") {
    biquad::Rng rng(909);
    int certified = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 3);
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 3);
        BiquadraticTensor t = random_nonneg_tensor(m, n, rng);
        if (!is_x_partially_irreducible(t) || !is_y_partially_irreducible(t)) continue;
        ++certified;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<double> x(m, 0.0), y(n, 0.0);
                x[i] = 1.0;
                y[j] = 1.0;
                const std::size_t steps = std::max(m, n);
                for (std::size_t k = 0; k + 1 < steps; ++k) {
                    Propagated p = propagate_support(t, x, y);
                    x = normalized(std::move(p.u));
                    y = normalized(std::move(p.v));
                }
                CHECK(support(x).size() == m);
                CHECK(support(y).size() == n);
            }
    }
    CHECK(certified > 10);  // dense positive instances are irreducible
}

TEST_CASE("slice-graph and iterated-support methods agree on structured instances") {
    biquad::Rng rng(111);
    int reducible_seen = 0, irreducible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 4);
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 4);
        BiquadraticTensor t = trial % 3 == 0   ? block_x_reducible(m, n, rng)
                              : trial % 3 == 1 ? block_y_reducible(m, n, rng)
                                               : random_nonneg_tensor(m, n, rng);
        // throws InternalError on any method disagreement
        bool x_irr = is_x_partially_irreducible(t);
        bool y_irr = is_y_partially_irreducible(t);
        IrreducibilityReport rep = irreducibility_report(t);
        CHECK(rep.irreducible == (x_irr && y_irr));
        CHECK(rep.method_agreement);
        if (rep.irreducible)
            ++irreducible_seen;
        else
            ++reducible_seen;
    }
    CHECK(reducible_seen >= 30);
    CHECK(irreducible_seen >= 30);
}

TEST_CASE("strict support growth for irreducible tensors") {
    biquad::Rng rng(222);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = 3 + static_cast<std::size_t>(rng.uniform01() * 3);
        std::size_t n = 3 + static_cast<std::size_t>(rng.uniform01() * 3);
        BiquadraticTensor t = random_nonneg_tensor(m, n, rng);
        if (!is_x_partially_irreducible(t) || !is_y_partially_irreducible(t)) continue;
        std::size_t nx = 1 + static_cast<std::size_t>(rng.uniform01() * (m - 1));
        std::vector<double> x = sparse_nonneg(m, nx, rng);
        std::vector<double> y = sparse_nonneg(n, 1 + static_cast<std::size_t>(rng.uniform01() * n),
                                              rng);
        Propagated p = propagate_support(t, x, y);
        CHECK(support(p.u).size() > support(x).size());
    }
}
