#include "palloc/json_io.hpp"

#include "palloc/numeric.hpp"

namespace palloc {

namespace {

nlohmann::json point_to_json(const Point& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (Coord c : p.coords) arr.push_back(c);
  return arr;
}

Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point: expected a coordinate array");
  Point p;
  p.coords.reserve(j.size());
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw ParseError("point: coordinates must be integers");
    p.coords.push_back(c.get<Coord>());
  }
  return p;
}

}  // namespace

nlohmann::json to_json(const PointMultiset& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Point& p : s.points) arr.push_back(point_to_json(p));
  return arr;
}

PointMultiset multiset_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("multiset: expected an array of points");
  std::vector<Point> pts;
  pts.reserve(j.size());
  for (const auto& pj : j) pts.push_back(point_from_json(pj));
  if (pts.empty()) throw ParseError("multiset: empty");
  const int dim = pts.front().dim();
  for (const Point& p : pts) {
    if (p.dim() != dim) throw ParseError("multiset: points of mixed dimension");
  }
  return make_multiset(std::move(pts), dim);
}

PointMultiset multiset_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("multiset: ") + e.what());
  }
  return multiset_from_json(j);
}

nlohmann::json to_json(const Mesh& mesh) {
  nlohmann::json j;
  j["extents"] = mesh.extents();
  nlohmann::json occ = nlohmann::json::array();
  for (const Point& p : mesh.occupied_points()) occ.push_back(point_to_json(p));
  j["occupied"] = occ;
  return j;
}

Mesh mesh_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("extents")) {
    throw ParseError("mesh: expected {extents, occupied}");
  }
  std::vector<Coord> extents;
  for (const auto& e : j.at("extents")) {
    if (!e.is_number_integer()) throw ParseError("mesh: extents must be integers");
    extents.push_back(e.get<Coord>());
  }
  std::vector<Point> occupied;
  if (j.contains("occupied")) {
    for (const auto& pj : j.at("occupied")) occupied.push_back(point_from_json(pj));
  }
  try {
    return Mesh::from_occupied(std::move(extents), occupied);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("mesh: ") + e.what());
  }
}

Mesh mesh_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("mesh: ") + e.what());
  }
  return mesh_from_json(j);
}

nlohmann::json to_json(const Allocation& alloc) {
  nlohmann::json j;
  j["algorithm"] = alloc.algorithm;
  j["points"] = to_json(alloc.selected);
  j["total"] = alloc.total_distance;
  const std::int64_t k = alloc.selected.size();
  j["average"] = k < 2 ? "0.000000" : decimal_trunc(alloc.total_distance, k * (k - 1) / 2, 6);
  if (alloc.center) j["center"] = point_to_json(*alloc.center);
  if (alloc.sigma) j["sigma"] = *alloc.sigma;
  return j;
}

nlohmann::json to_json(const PtasResult& result) {
  nlohmann::json j;
  j["allocation"] = to_json(result.alloc);
  nlohmann::json strips;
  strips["m"] = result.strips.m;
  strips["bounds"] = result.strips.axis_bounds;
  j["strips"] = strips;
  nlohmann::json plan = nlohmann::json::array();
  const int m = result.plan.m;
  const int d = result.plan.d;
  if (d == 2) {
    for (int i = 0; i < m; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j2 = 0; j2 < m; ++j2) row.push_back(result.plan.at(i, j2));
      plan.push_back(row);
    }
  } else {
    plan = result.plan.counts;  // flat row-major for d >= 3
  }
  j["plan"] = plan;
  return j;
}

}  // namespace palloc
