#include <doctest.h>

#include <cmath>

#include "biquad/bench.hpp"
#include "biquad/structure.hpp"
#include "paper_tensors.hpp"

using namespace biquad;
using namespace fixtures;

TEST_CASE("generator produces exactly symmetric nonnegative tensors") {
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 9999ull}) {
        BiquadraticTensor t = gen_random_symmetric_nbq(4, 3, seed);
        CHECK(t.is_nonnegative());
        CHECK(t.classify_symmetry(0.0) == SymmetryClass::Symmetric);
        CHECK(t.classify_symmetry(1e-12) == SymmetryClass::Symmetric);
    }
}

TEST_CASE("generator is bit-deterministic in the seed") {
    BiquadraticTensor a = gen_random_symmetric_nbq(5, 4, 77);
    BiquadraticTensor b = gen_random_symmetric_nbq(5, 4, 77);
    REQUIRE(a.entries().size() == b.entries().size());
    for (std::size_t k = 0; k < a.entries().size(); ++k) CHECK(a.entries()[k] == b.entries()[k]);

    BiquadraticTensor c = gen_random_symmetric_nbq(5, 4, 78);
    bool differs = false;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        if (a.entries()[k] != c.entries()[k]) differs = true;
    CHECK(differs);
}

TEST_CASE("generated instances are irreducible at moderate size") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        BiquadraticTensor t = gen_random_symmetric_nbq(10, 10, seed);
        IrreducibilityReport rep = irreducibility_report(t);
        CHECK(rep.irreducible);
    }
}

TEST_CASE("experiment aggregation") {
    BenchConfig cfg;
    cfg.m = 4;
    cfg.n = 4;
    cfg.repeats = 8;
    cfg.seed = 5;
    BenchReport rep = run_experiment(cfg);
    CHECK(rep.failures == 0);
    CHECK(rep.max_iterations_count == 0);
    CHECK(rep.mean_gap >= 0.0);
    CHECK(rep.mean_gap <= 1e-8);
    CHECK(rep.ratio_lower >= 0.0);
    CHECK(rep.ratio_lower <= 1.0);
    CHECK(rep.ratio_upper >= 0.0);
    CHECK(rep.ratio_upper <= 1.0);
    CHECK(rep.mode == "fixed_tensor");

    SUBCASE("deterministic except for the time column") {
        BenchReport again = run_experiment(cfg);
        CHECK(rep.mean_iterations == again.mean_iterations);
        CHECK(rep.mean_gap == again.mean_gap);
        CHECK(rep.mean_residual == again.mean_residual);
        CHECK(rep.ratio_lower == again.ratio_lower);
        CHECK(rep.ratio_upper == again.ratio_upper);
        CHECK(rep.rho_M_observed == again.rho_M_observed);
    }

    SUBCASE("fresh-tensor mode is recorded and runs") {
        cfg.mode = BenchMode::FreshTensor;
        BenchReport fresh = run_experiment(cfg);
        CHECK(fresh.mode == "fresh_tensor");
        CHECK(fresh.failures == 0);
    }
}

TEST_CASE("observed spectral radius lies in the bound envelope") {
    BenchConfig cfg;
    cfg.m = 5;
    cfg.n = 3;
    cfg.repeats = 10;
    cfg.seed = 11;
    BiquadraticTensor t = gen_random_symmetric_nbq(cfg.m, cfg.n, cfg.seed);
    BenchReport rep = run_experiment_on(t, cfg);
    // with a fixed tensor every repeat converges to the same value
    CHECK(rep.ratio_lower == 1.0);
    CHECK(rep.ratio_upper == 1.0);
    CHECK(rep.rho_M_observed > 0.0);
}

TEST_CASE("fixed published tensor replicates its table row") {
    BenchConfig cfg;
    cfg.repeats = 30;
    cfg.seed = 21;
    BenchReport rep = run_experiment_on(example_4_2(), cfg);
    CHECK(rep.rho_M_observed == doctest::Approx(10.9075).epsilon(1e-4));
    CHECK(rep.mean_iterations >= 30.0);
    CHECK(rep.mean_iterations <= 120.0);
    CHECK(rep.ratio_lower == 1.0);
    CHECK(rep.ratio_upper == 1.0);
}

TEST_CASE("csv shape") {
    CHECK(bench_csv_header() == "m,n,iter,time_s,gap,res,ratio_lower,ratio_upper");
    BenchConfig cfg;
    cfg.m = 4;
    cfg.n = 4;
    cfg.repeats = 3;
    cfg.seed = 1;
    std::string row = to_csv_row(run_experiment(cfg));
    CHECK(row.rfind("4,4,", 0) == 0);
    int commas = 0;
    for (char ch : row)
        if (ch == ',') ++commas;
    CHECK(commas == 7);
}
