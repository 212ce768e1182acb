#pragma once

#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gha/expansion.hpp"

// Expansion file format: a JSON document
//
//   { "dim": 2, "coeffs": [ { "beta": [1, 0], "c": 0.5 }, ... ] }
//
// Invalid or duplicated beta entries are rejected.

namespace gha {

inline nlohmann::ordered_json expansion_to_json(const HermiteExpansion& f) {
    nlohmann::ordered_json doc;
    doc["dim"] = f.dim();
    doc["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& [beta, c] : f.coeffs()) {
        nlohmann::ordered_json entry;
        entry["beta"] = beta.entries();
        entry["c"] = c;
        doc["coeffs"].push_back(entry);
    }
    return doc;
}

inline HermiteExpansion expansion_from_json(const nlohmann::json& doc) {
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw std::invalid_argument("expansion file: missing integer field 'dim'");
    const int dim = doc["dim"].get<int>();
    if (dim < 1) throw std::invalid_argument("expansion file: dim must be >= 1");
    HermiteExpansion f(dim);
    if (!doc.contains("coeffs") || !doc["coeffs"].is_array())
        throw std::invalid_argument("expansion file: missing array field 'coeffs'");
    std::set<std::vector<int>> seen;
    for (const auto& entry : doc["coeffs"]) {
        if (!entry.contains("beta") || !entry["beta"].is_array() || !entry.contains("c"))
            throw std::invalid_argument("expansion file: each coeff needs 'beta' and 'c'");
        std::vector<int> b;
        for (const auto& e : entry["beta"]) {
            if (!e.is_number_integer())
                throw std::invalid_argument("expansion file: beta entries must be integers");
            b.push_back(e.get<int>());
        }
        if (static_cast<int>(b.size()) != dim)
            throw std::invalid_argument("expansion file: beta length must equal dim");
        for (int e : b)
            if (e < 0) throw std::invalid_argument("expansion file: beta entries must be >= 0");
        if (!seen.insert(b).second)
            throw std::invalid_argument("expansion file: duplicated beta entry");
        const double c = entry["c"].get<double>();
        if (!std::isfinite(c))
            throw std::invalid_argument("expansion file: coefficient must be finite");
        f.set(MultiIndex(b), c);
    }
    return f;
}

inline void write_expansion(const HermiteExpansion& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << expansion_to_json(f).dump(2) << "\n";
}

inline HermiteExpansion read_expansion(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("expansion file: invalid JSON: ") + e.what());
    }
    return expansion_from_json(doc);
}

}  // namespace gha
