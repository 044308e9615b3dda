#include "mcpt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "mcpt/errors.hpp"

namespace mcpt::io {

namespace {

using nlohmann::json;

CMat matrix_from_json(const json& arr, std::size_t n, const char* name) {
    if (!arr.is_array() || arr.size() != n * n)
        throw std::invalid_argument(std::string("problem file: '") + name + "' must hold " +
                                    std::to_string(n * n) + " [re, im] pairs");
    CMat m(n, n);
    for (std::size_t k = 0; k < n * n; ++k) {
        const json& entry = arr[k];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw std::invalid_argument(std::string("problem file: '") + name + "' entry " +
                                        std::to_string(k) + " is not an [re, im] pair");
        m.data()[k] = cxd(entry[0].get<double>(), entry[1].get<double>());
        if (!std::isfinite(m.data()[k].real()) || !std::isfinite(m.data()[k].imag()))
            throw std::invalid_argument(std::string("problem file: '") + name + "' entry " +
                                        std::to_string(k) + " is not finite");
    }
    return m;
}

json matrix_to_json(const CMat& m) {
    json arr = json::array();
    for (std::size_t k = 0; k < m.rows() * m.cols(); ++k)
        arr.push_back({m.data()[k].real(), m.data()[k].imag()});
    return arr;
}

}  // namespace

models::OperatorPair load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("problem file parse error in " + path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_unsigned())
        throw std::invalid_argument("problem file: missing or invalid 'dim'");
    const std::size_t n = doc["dim"].get<std::size_t>();
    if (n == 0) throw std::invalid_argument("problem file: 'dim' must be positive");
    if (!doc.contains("h0") || !doc.contains("v"))
        throw std::invalid_argument("problem file: missing 'h0' or 'v'");

    CMat h0 = matrix_from_json(doc["h0"], n, "h0");
    CMat v = matrix_from_json(doc["v"], n, "v");
    return {HermitianOperator(std::move(h0)), HermitianOperator(std::move(v))};
}

void save_problem(const std::string& path, const HermitianOperator& h0,
                  const HermitianOperator& v) {
    if (h0.dim() != v.dim()) throw DimensionError("save_problem: operator dimensions differ");
    json doc;
    doc["dim"] = h0.dim();
    doc["h0"] = matrix_to_json(h0.matrix());
    doc["v"] = matrix_to_json(v.matrix());
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write problem file: " + path);
    out << doc.dump(2) << '\n';
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace mcpt::io
