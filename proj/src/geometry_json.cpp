#include "cubelearn/geometry_json.hpp"

namespace cubelearn {

using nlohmann::json;

json bound_to_json(const Bound& b) {
  if (b.is_neg_inf()) return "-inf";
  if (b.is_pos_inf()) return "+inf";
  return b.value();
}

Bound bound_from_json(const json& j) {
  if (j.is_number_integer()) return Bound(j.get<Coord>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "-inf") return Bound::neg_inf();
    if (s == "+inf") return Bound::pos_inf();
  }
  throw ParseError("bound must be an integer, \"-inf\" or \"+inf\": " + j.dump());
}

json point_to_json(const Point& p) { return p.coords(); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point must be a nonempty integer array: " + j.dump());
  std::vector<Coord> c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError("point coordinates must be integers: " + j.dump());
    c.push_back(x.get<Coord>());
  }
  return Point(std::move(c));
}

json cube_to_json(const Cube& c) {
  json lo = json::array(), hi = json::array();
  for (const auto& b : c.lo()) lo.push_back(bound_to_json(b));
  for (const auto& b : c.hi()) hi.push_back(bound_to_json(b));
  return json{{"lo", lo}, {"hi", hi}};
}

Cube cube_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
    throw ParseError("cube must be an object with \"lo\" and \"hi\": " + j.dump());
  const auto& jlo = j.at("lo");
  const auto& jhi = j.at("hi");
  if (!jlo.is_array() || !jhi.is_array()) throw ParseError("cube bounds must be arrays: " + j.dump());
  std::vector<Bound> lo, hi;
  for (const auto& b : jlo) lo.push_back(bound_from_json(b));
  for (const auto& b : jhi) hi.push_back(bound_from_json(b));
  try {
    return Cube(std::move(lo), std::move(hi));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid cube: ") + e.what());
  }
}

json union_to_json(const CubeUnion& u) {
  json cubes = json::array();
  for (const auto& c : u.cubes()) cubes.push_back(cube_to_json(c));
  return json{{"dim", u.dim()}, {"cubes", cubes}};
}

CubeUnion union_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("cubes"))
    throw ParseError("cube union must be an object with \"dim\" and \"cubes\"");
  if (!j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1)
    throw ParseError("\"dim\" must be a positive integer");
  auto dim = j.at("dim").get<std::size_t>();
  std::vector<Cube> cubes;
  for (const auto& c : j.at("cubes")) {
    Cube cube = cube_from_json(c);
    if (cube.dim() != dim) throw ParseError("cube dimension does not match \"dim\"");
    cubes.push_back(std::move(cube));
  }
  return CubeUnion(dim, std::move(cubes));
}

}  // namespace cubelearn
