#pragma once

// JSON encodings of matrices, measures and solver reports.
//
//   matrix   {"dim": n, "data": [[...], ...]}            row-major
//   SMeasure {"type": "dirac", "s": 0.5}
//            {"type": "atoms", "points": [{"s": 0, "w": 0.5}, ...]}
//            {"type": "lebesgue", "nodes": 128}
//            {"type": "power", "t": 0.5, "nodes": 128}
//   PMeasure {"atoms": [{"weight": w, "nu": {...}, "matrix": {...}}, ...]}

#include <filesystem>
#include <json.hpp>
#include <vector>

#include "spdmean/matrix.hpp"
#include "spdmean/measures.hpp"
#include "spdmean/omf.hpp"
#include "spdmean/solver.hpp"

namespace spdmean::io {

using Json = nlohmann::ordered_json;

/// Throws ParseError for unreadable files and malformed JSON.
Json read_file(const std::filesystem::path& path);

Json to_json(const SymMatrix& m);
/// Symmetrizes; entries further than 1e-8 (1 + max|a|) from symmetric are rejected.
SymMatrix sym_from_json(const Json& j);
SpdMatrix spd_from_json(const Json& j);

Json to_json(const SMeasure& nu);
/// `default_nodes` applies when a continuous kind omits "nodes".
SMeasure smeasure_from_json(const Json& j, int default_nodes = kDefaultNodes);

Json to_json(const PMeasure& mu);
PMeasure pmeasure_from_json(const Json& j, int default_nodes = kDefaultNodes);

/// The matrix marginal of a PMeasure document; "nu" fields are ignored.
std::vector<WeightedMatrix> sigma_from_json(const Json& j);

Json to_json(const SolverReport& report);

/// Compact serialization with shortest round-trip doubles.
std::string dump(const Json& j);

}  // namespace spdmean::io
