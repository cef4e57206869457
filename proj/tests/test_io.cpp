#include <doctest.h>

#include <sstream>

#include "biquad/io.hpp"
#include "paper_tensors.hpp"

using namespace biquad;
using namespace fixtures;

TEST_CASE("dense round-trip is bit-exact") {
    biquad::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 3);
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 3);
        BiquadraticTensor t = random_tensor(m, n, rng, -10.0, 10.0);
        std::stringstream ss;
        write_tensor_json(t, ss);
        BiquadraticTensor back = read_tensor_json(ss);
        REQUIRE(back.m() == m);
        REQUIRE(back.n() == n);
        for (std::size_t k = 0; k < t.entries().size(); ++k)
            CHECK(t.entries()[k] == back.entries()[k]);
    }
}

TEST_CASE("coo parsing") {
    SUBCASE("unspecified entries default to zero") {
        std::stringstream ss(R"({"m": 2, "n": 2, "coo": [[0, 0, 0, 0, 4.0], [1, 0, 1, 0, 2.5]]})");
        BiquadraticTensor t = read_tensor_json(ss);
        CHECK(t.entry(0, 0, 0, 0) == 4.0);
        CHECK(t.entry(1, 0, 1, 0) == 2.5);
        CHECK(t.entry(0, 1, 0, 1) == 0.0);
    }

    SUBCASE("duplicate coordinates are rejected") {
        std::stringstream ss(R"({"m": 2, "n": 2, "coo": [[0,0,0,0,1.0], [0,0,0,0,2.0]]})");
        CHECK_THROWS_AS(read_tensor_json(ss), IoError);
    }

    SUBCASE("out-of-range indices are rejected") {
        std::stringstream ss(R"({"m": 2, "n": 2, "coo": [[0,0,0,2,1.0]]})");
        CHECK_THROWS_AS(read_tensor_json(ss), IoError);
    }
}

TEST_CASE("malformed tensor files") {
    auto reject = [](const std::string& text) {
        std::stringstream ss(text);
        CHECK_THROWS_AS(read_tensor_json(ss), IoError);
    };
    reject("not json at all");
    reject(R"([1, 2, 3])");
    reject(R"({"n": 2, "dense": []})");                           // missing m
    reject(R"({"m": 1, "n": 2, "dense": []})");                   // m < 2
    reject(R"({"m": 2, "n": 2})");                                // no payload
    reject(R"({"m": 2, "n": 2, "dense": [1, 2, 3]})");            // wrong length
    reject(R"({"m": 2, "n": 2, "dense": [], "coo": []})");        // both payloads
    std::string elems;
    for (int k = 0; k < 16; ++k) elems += k ? ", \"x\"" : "\"x\"";
    reject(R"({"m": 2, "n": 2, "dense": [)" + elems + "]}");      // non-numeric
}

TEST_CASE("matrix files round-trip") {
    Matrix m(2, 3, {1.5, -2.25, 0.0, 1e-17, 3.0, 4.0});
    std::stringstream ss;
    write_matrix_json(m, ss);
    Matrix back = read_matrix_json(ss);
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == back(i, j));

    std::stringstream bad(R"({"rows": 2, "cols": 2, "dense": [1, 2, 3]})");
    CHECK_THROWS_AS(read_matrix_json(bad), IoError);
}

TEST_CASE("report serialization shapes") {
    SUBCASE("irreducibility report with and without witness") {
        IrreducibilityReport irr = irreducibility_report(example_4_5());
        nlohmann::json j = to_json(irr);
        CHECK(j["irreducible"] == false);
        CHECK(j["x_partial"] == false);
        CHECK(j["y_partial"] == false);
        CHECK(j["method_agreement"] == true);
        REQUIRE(!j["witness"].is_null());
        CHECK(j["witness"]["side"] == "x");
        CHECK(j["witness"]["slice"] == 0);
        CHECK(j["witness"]["block"] == nlohmann::json::array({0}));

        nlohmann::json j2 = to_json(irreducibility_report(example_4_2()));
        CHECK(j2["irreducible"] == true);
        CHECK(j2["witness"].is_null());
    }

    SUBCASE("collatz result carries the trace when recorded") {
        CollatzConfig cfg;
        cfg.record_trace = true;
        CollatzResult res = collatz_run(example_4_2(), std::vector<double>{1, 2},
                                        std::vector<double>{2, 1}, cfg);
        nlohmann::json j = to_json(res);
        CHECK(j.contains("trace"));
        CHECK(j["trace"].size() == static_cast<std::size_t>(res.iterations) + 1);
        CHECK(j["status"] == "converged_stagnation");
    }

    SUBCASE("summary serializes an absent lambda_plus_min as null") {
        MEigenpair p;
        p.lambda = -1.0;
        p.x = {1, 0};
        p.y = {1, 0};
        p.cls = EigClass::M;
        nlohmann::json j = to_json(spectral_summary({p}, BiquadraticTensor(
            2, 2, [] { std::vector<double> a(16, 0.0); a[0] = -1.0; return a; }())));
        CHECK(j["lambda_plus_min"].is_null());
    }
}

TEST_CASE("tensor writer emits the published scalar format") {
    BiquadraticTensor t = example_4_5();
    std::stringstream ss;
    write_tensor_json(t, ss);
    const std::string text = ss.str();
    CHECK(text.find("\"m\": 2") != std::string::npos);
    CHECK(text.find("\"dense\"") != std::string::npos);
    CHECK(text.find("0.5") != std::string::npos);
}
