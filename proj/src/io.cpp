#include "ptfloquet/io.hpp"

#include <cmath>
#include <fstream>

#include "ptfloquet/errors.hpp"

namespace ptfloquet {

namespace {

std::vector<double> finite_array(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw MalformedInputError(std::string("'") + what + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw MalformedInputError(std::string("'") + what + "' must contain only numbers");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw MalformedInputError(std::string("'") + what + "' contains a non-finite value");
        out.push_back(x);
    }
    return out;
}

int positive_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw MalformedInputError(std::string("coefficient file needs an integer '") + key + "'");
    }
    const auto v = j[key].get<long long>();
    if (v < 1 || v > 64) throw MalformedInputError(std::string("'") + key + "' must lie in 1..64");
    return static_cast<int>(v);
}

} // namespace

CoefficientSet coefficient_set_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw MalformedInputError("coefficient file must hold a JSON object");
    const int n = positive_int(j, "n");
    const int m = positive_int(j, "m");
    if (!j.contains("P") || !j["P"].is_array() || j["P"].size() != static_cast<std::size_t>(n)) {
        throw MalformedInputError("'P' must be an array of n=" + std::to_string(n) + " matrices");
    }
    std::vector<std::vector<FourierEntry>> entries(n);
    for (int k = 0; k < n; ++k) {
        const auto& Pk = j["P"][k];
        if (!Pk.is_array() || Pk.size() != static_cast<std::size_t>(m)) {
            throw MalformedInputError("P[" + std::to_string(k) + "] must have m=" + std::to_string(m) + " rows");
        }
        for (int r = 0; r < m; ++r) {
            const auto& row = Pk[r];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(m)) {
                throw MalformedInputError("P[" + std::to_string(k) + "][" + std::to_string(r) + "] must have m=" +
                                          std::to_string(m) + " entries");
            }
            for (const auto& e : row) {
                if (!e.is_object()) throw MalformedInputError("coefficient entries must be objects with 'a' and 'b'");
                auto a = e.contains("a") ? finite_array(e["a"], "a") : std::vector<double>{0.0};
                auto b = e.contains("b") ? finite_array(e["b"], "b") : std::vector<double>{};
                entries[k].emplace_back(std::move(a), std::move(b));
            }
        }
    }
    return CoefficientSet(n, m, std::move(entries));
}

nlohmann::json to_json(const CoefficientSet& set) {
    nlohmann::json P = nlohmann::json::array();
    for (int k = 1; k <= set.order(); ++k) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < set.dim(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < set.dim(); ++j) {
                const auto& e = set.entry(k, i, j);
                row.push_back({{"a", e.a}, {"b", e.b}});
            }
            rows.push_back(std::move(row));
        }
        P.push_back(std::move(rows));
    }
    return {{"n", set.order()}, {"m", set.dim()}, {"P", std::move(P)}};
}

CoefficientSet load_coefficient_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open coefficient file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInputError("coefficient file '" + path + "' is not valid JSON: " + e.what());
    }
    try {
        return coefficient_set_from_json(j);
    } catch (const MalformedInputError& e) {
        throw MalformedInputError("coefficient file '" + path + "': " + e.what());
    }
}

} // namespace ptfloquet
