#include "spdmean/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spdmean::io {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::kParse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) parse_fail("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(std::string(what) + " must be finite");
  return v;
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

int nodes_of(const Json& j, int default_nodes) {
  const auto it = j.find("nodes");
  if (it == j.end()) return default_nodes;
  const int n = integer(*it, "nodes");
  if (n < 2) parse_fail("nodes must be at least 2");
  return n;
}

Dense dense_from_json(const Json& j) {
  const int n = integer(field(j, "dim"), "dim");
  if (n <= 0) parse_fail("dim must be positive");
  const Json& data = field(j, "data");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(n)) parse_fail("data must have dim rows");
  Dense m(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) parse_fail("every row must have dim entries");
    for (int k = 0; k < n; ++k) m(i, k) = number(row[static_cast<std::size_t>(k)], "matrix entry");
  }
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) parse_fail("matrix is not symmetric");
  return m;
}

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

Json to_json(const SymMatrix& m) {
  Json data = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
    data.push_back(std::move(row));
  }
  return Json{{"dim", m.dim()}, {"data", std::move(data)}};
}

SymMatrix sym_from_json(const Json& j) { return SymMatrix(dense_from_json(j)); }

SpdMatrix spd_from_json(const Json& j) { return SpdMatrix(dense_from_json(j)); }

Json to_json(const SMeasure& nu) {
  switch (nu.kind()) {
    case SMeasure::Kind::kDirac:
      return Json{{"type", "dirac"}, {"s", nu.points().front().s}};
    case SMeasure::Kind::kAtoms: {
      Json pts = Json::array();
      for (const auto& p : nu.points()) pts.push_back(Json{{"s", p.s}, {"w", p.weight}});
      return Json{{"type", "atoms"}, {"points", std::move(pts)}};
    }
    case SMeasure::Kind::kLebesgue:
      return Json{{"type", "lebesgue"}, {"nodes", nu.nodes()}};
    case SMeasure::Kind::kPower:
      return Json{{"type", "power"}, {"t", nu.exponent()}, {"nodes", nu.nodes()}};
    case SMeasure::Kind::kCustom:
      break;
  }
  fail(ErrorKind::kMeasure, "custom densities have no JSON form");
}

SMeasure smeasure_from_json(const Json& j, int default_nodes) {
  const Json& type = field(j, "type");
  if (!type.is_string()) parse_fail("measure type must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "dirac") return SMeasure::dirac(number(field(j, "s"), "s"));
  if (kind == "atoms") {
    const Json& pts = field(j, "points");
    if (!pts.is_array()) parse_fail("points must be an array");
    std::vector<SAtom> points;
    for (const auto& p : pts) points.push_back({number(field(p, "s"), "s"), number(field(p, "w"), "w")});
    return SMeasure::atoms(std::move(points));
  }
  if (kind == "lebesgue") return SMeasure::lebesgue(nodes_of(j, default_nodes));
  if (kind == "power") return SMeasure::power(number(field(j, "t"), "t"), nodes_of(j, default_nodes));
  parse_fail("unknown measure type \"" + kind + "\"");
}

Json to_json(const PMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) {
    atoms.push_back(Json{{"weight", a.weight}, {"nu", to_json(a.nu)}, {"matrix", to_json(a.matrix)}});
  }
  return Json{{"atoms", std::move(atoms)}};
}

PMeasure pmeasure_from_json(const Json& j, int default_nodes) {
  const Json& list = field(j, "atoms");
  if (!list.is_array()) parse_fail("atoms must be an array");
  std::vector<Atom> atoms;
  for (const auto& a : list) {
    atoms.push_back({number(field(a, "weight"), "weight"), spd_from_json(field(a, "matrix")),
                     smeasure_from_json(field(a, "nu"), default_nodes)});
  }
  return PMeasure(std::move(atoms));
}

std::vector<WeightedMatrix> sigma_from_json(const Json& j) {
  const Json& list = field(j, "atoms");
  if (!list.is_array()) parse_fail("atoms must be an array");
  std::vector<WeightedMatrix> out;
  for (const auto& a : list) out.push_back({number(field(a, "weight"), "weight"), spd_from_json(field(a, "matrix"))});
  return out;
}

Json to_json(const SolverReport& report) {
  Json trace = Json::array();
  for (const auto& p : report.t_trace) trace.push_back(Json{{"t", p.t}, {"iterations", p.iterations}});
  Json out{{"mean", to_json(report.mean)},
           {"iterations", report.iterations},
           {"final_step", report.final_step},
           {"residual_norm", report.residual_norm},
           {"t_trace", std::move(trace)}};
  if (report.iterations_bound >= 0) out["iterations_bound"] = report.iterations_bound;
  return out;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace spdmean::io
