#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "biquad/bench.hpp"
#include "biquad/collatz.hpp"
#include "biquad/oracle.hpp"
#include "biquad/structure.hpp"
#include "biquad/tensor.hpp"

namespace biquad {

/// Tensor file: {"m": int, "n": int, "dense": [...]} or
/// {"m", "n", "coo": [[i1,j1,i2,j2,value], ...]} with 0-based indices,
/// unspecified entries zero, duplicate coordinates rejected.
BiquadraticTensor read_tensor_json(std::istream& in, const std::string& origin = "<stream>");
BiquadraticTensor read_tensor_file(const std::string& path);

/// Writes the dense form with 17-significant-digit decimal scalars; parsing
/// the output reproduces the entries bit-exactly.
void write_tensor_json(const BiquadraticTensor& t, std::ostream& out);
void write_tensor_file(const BiquadraticTensor& t, const std::string& path);

/// Matrix file: {"rows": int, "cols": int, "dense": [...]} row-major.
Matrix read_matrix_json(std::istream& in, const std::string& origin = "<stream>");
Matrix read_matrix_file(const std::string& path);
void write_matrix_json(const Matrix& m, std::ostream& out);
void write_matrix_file(const Matrix& m, const std::string& path);

nlohmann::json to_json(const IrreducibilityReport& rep);
nlohmann::json to_json(const CollatzResult& res);
nlohmann::json to_json(const MultistartResult& agg);
nlohmann::json to_json(const MEigenpair& p);
nlohmann::json to_json(const SpectralSummary& s);
nlohmann::json to_json(const RhoEstimates& est);
nlohmann::json to_json(const BenchReport& rep);

}  // namespace biquad
