#include "biquad/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace biquad {

using nlohmann::json;

namespace {

json parse_stream(std::istream& in, const std::string& origin) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(origin + ": invalid JSON: " + e.what());
    }
}

std::size_t get_dim(const json& j, const char* field, const std::string& origin) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw IoError(origin + ": missing integer field \"" + field + "\"");
    const long long v = j[field].get<long long>();
    if (v < 2) throw IoError(origin + ": field \"" + std::string(field) + "\" must be >= 2");
    return static_cast<std::size_t>(v);
}

std::vector<double> get_dense(const json& j, std::size_t expected, const std::string& origin) {
    const json& arr = j["dense"];
    if (!arr.is_array()) throw IoError(origin + ": \"dense\" must be an array");
    if (arr.size() != expected)
        throw IoError(origin + ": \"dense\" has " + std::to_string(arr.size()) +
                      " entries, expected " + std::to_string(expected));
    std::vector<double> out;
    out.reserve(expected);
    for (const json& v : arr) {
        if (!v.is_number()) throw IoError(origin + ": non-numeric entry in \"dense\"");
        out.push_back(v.get<double>());
    }
    return out;
}

void append_scalar(std::string& buf, double v) {
    char tmp[40];
    std::snprintf(tmp, sizeof(tmp), "%.17g", v);
    buf += tmp;
}

const char* side_name(VectorSide s) { return s == VectorSide::X ? "x" : "y"; }

}  // namespace

BiquadraticTensor read_tensor_json(std::istream& in, const std::string& origin) {
    json j = parse_stream(in, origin);
    if (!j.is_object()) throw IoError(origin + ": top level must be an object");
    const std::size_t m = get_dim(j, "m", origin);
    const std::size_t n = get_dim(j, "n", origin);
    const std::size_t count = m * n * m * n;
    const bool has_dense = j.contains("dense"), has_coo = j.contains("coo");
    if (has_dense == has_coo)
        throw IoError(origin + ": exactly one of \"dense\" or \"coo\" is required");

    std::vector<double> entries;
    if (has_dense) {
        entries = get_dense(j, count, origin);
    } else {
        entries.assign(count, 0.0);
        const json& coo = j["coo"];
        if (!coo.is_array()) throw IoError(origin + ": \"coo\" must be an array");
        std::set<std::size_t> seen;
        for (const json& row : coo) {
            if (!row.is_array() || row.size() != 5)
                throw IoError(origin + ": each \"coo\" row must be [i1, j1, i2, j2, value]");
            long long idx[4];
            for (int k = 0; k < 4; ++k) {
                if (!row[k].is_number_integer())
                    throw IoError(origin + ": \"coo\" indices must be integers");
                idx[k] = row[k].get<long long>();
            }
            if (idx[0] < 0 || idx[2] < 0 || idx[0] >= static_cast<long long>(m) ||
                idx[2] >= static_cast<long long>(m) || idx[1] < 0 || idx[3] < 0 ||
                idx[1] >= static_cast<long long>(n) || idx[3] >= static_cast<long long>(n))
                throw IoError(origin + ": \"coo\" index out of range (0-based)");
            if (!row[4].is_number()) throw IoError(origin + ": \"coo\" value must be numeric");
            const std::size_t lin =
                ((static_cast<std::size_t>(idx[0]) * n + idx[1]) * m + idx[2]) * n + idx[3];
            if (!seen.insert(lin).second)
                throw IoError(origin + ": duplicate \"coo\" coordinate");
            entries[lin] = row[4].get<double>();
        }
    }
    try {
        return BiquadraticTensor(m, n, std::move(entries));
    } catch (const std::exception& e) {
        throw IoError(origin + ": " + e.what());
    }
}

BiquadraticTensor read_tensor_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");
    return read_tensor_json(in, path);
}

void write_tensor_json(const BiquadraticTensor& t, std::ostream& out) {
    std::string buf = "{\"m\": " + std::to_string(t.m()) + ", \"n\": " + std::to_string(t.n()) +
                      ", \"dense\": [";
    bool first = true;
    for (double v : t.entries()) {
        if (!first) buf += ", ";
        first = false;
        append_scalar(buf, v);
    }
    buf += "]}\n";
    out << buf;
}

void write_tensor_file(const BiquadraticTensor& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open file for writing");
    write_tensor_json(t, out);
}

Matrix read_matrix_json(std::istream& in, const std::string& origin) {
    json j = parse_stream(in, origin);
    if (!j.is_object()) throw IoError(origin + ": top level must be an object");
    if (!j.contains("rows") || !j.contains("cols") || !j["rows"].is_number_integer() ||
        !j["cols"].is_number_integer())
        throw IoError(origin + ": missing integer fields \"rows\"/\"cols\"");
    const long long rows = j["rows"].get<long long>(), cols = j["cols"].get<long long>();
    if (rows < 1 || cols < 1) throw IoError(origin + ": dimensions must be positive");
    if (!j.contains("dense")) throw IoError(origin + ": missing \"dense\"");
    auto entries = get_dense(j, static_cast<std::size_t>(rows * cols), origin);
    try {
        return Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                      std::move(entries));
    } catch (const std::exception& e) {
        throw IoError(origin + ": " + e.what());
    }
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");
    return read_matrix_json(in, path);
}

void write_matrix_json(const Matrix& m, std::ostream& out) {
    std::string buf = "{\"rows\": " + std::to_string(m.rows()) +
                      ", \"cols\": " + std::to_string(m.cols()) + ", \"dense\": [";
    bool first = true;
    for (double v : m.data()) {
        if (!first) buf += ", ";
        first = false;
        append_scalar(buf, v);
    }
    buf += "]}\n";
    out << buf;
}

void write_matrix_file(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open file for writing");
    write_matrix_json(m, out);
}

json to_json(const IrreducibilityReport& rep) {
    json j{{"x_partial", rep.x_partial_irreducible},
           {"y_partial", rep.y_partial_irreducible},
           {"irreducible", rep.irreducible},
           {"method_agreement", rep.method_agreement}};
    if (rep.witness) {
        j["witness"] = json{{"side", side_name(rep.witness->side)},
                            {"block", rep.witness->block},
                            {"slice", rep.witness->slice}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json to_json(const CollatzResult& res) {
    json j{{"status", to_string(res.status)},
           {"lambda_lower", res.lambda_lower},
           {"lambda_upper", res.lambda_upper},
           {"lambda_est", res.lambda_est},
           {"iterations", res.iterations},
           {"residual", res.residual},
           {"x", res.x},
           {"y", res.y}};
    if (!res.trace.empty()) {
        json tr = json::array();
        for (const auto& [lo, up] : res.trace) tr.push_back(json::array({lo, up}));
        j["trace"] = tr;
    }
    return j;
}

json to_json(const MultistartResult& agg) {
    return json{{"best", to_json(agg.best)},
                {"starts", agg.per_start.size()},
                {"agreement_ratio_lower", agg.agreement_ratio_lower},
                {"agreement_ratio_upper", agg.agreement_ratio_upper},
                {"mean_iterations", agg.mean_iterations},
                {"mean_gap", agg.mean_gap},
                {"mean_residual", agg.mean_residual}};
}

json to_json(const MEigenpair& p) {
    return json{{"lambda", p.lambda},
                {"class", to_string(p.cls)},
                {"x", p.x},
                {"y", p.y},
                {"residual", p.residual}};
}

json to_json(const SpectralSummary& s) {
    json j{{"lambda_max", s.lambda_max},
           {"rho_M", s.rho_M},
           {"eigenvalues", s.eigenvalues},
           {"mplus_set", s.mplus_set}};
    if (s.lambda_plus_min)
        j["lambda_plus_min"] = *s.lambda_plus_min;
    else
        j["lambda_plus_min"] = nullptr;
    return j;
}

json to_json(const RhoEstimates& est) {
    return json{{"rho_star_lower", est.rho_star_lower},
                {"rho_star_upper", est.rho_star_upper},
                {"arg_lower_x", est.arg_lower_x},
                {"arg_lower_y", est.arg_lower_y},
                {"arg_upper_x", est.arg_upper_x},
                {"arg_upper_y", est.arg_upper_y}};
}

json to_json(const BenchReport& rep) {
    return json{{"m", rep.m},
                {"n", rep.n},
                {"repeats", rep.repeats},
                {"mode", rep.mode},
                {"mean_iterations", rep.mean_iterations},
                {"mean_time_seconds", rep.mean_time_seconds},
                {"mean_gap", rep.mean_gap},
                {"mean_residual", rep.mean_residual},
                {"ratio_lower", rep.ratio_lower},
                {"ratio_upper", rep.ratio_upper},
                {"rho_M_observed", rep.rho_M_observed},
                {"max_iterations_count", rep.max_iterations_count},
                {"failures", rep.failures}};
}

}  // namespace biquad
