#pragma once

#include <json.hpp>

#include "cubelearn/cube_union.hpp"

namespace cubelearn {

// Cube-union wire format:
//   {"dim": 2, "cubes": [{"lo": [0, 3], "hi": [5, 10]},
//                        {"lo": [8, "-inf"], "hi": ["+inf", "+inf"]}]}

nlohmann::json bound_to_json(const Bound& b);
Bound bound_from_json(const nlohmann::json& j);

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

nlohmann::json cube_to_json(const Cube& c);
Cube cube_from_json(const nlohmann::json& j);

nlohmann::json union_to_json(const CubeUnion& u);
/// Throws ParseError on malformed input.
CubeUnion union_from_json(const nlohmann::json& j);

}  // namespace cubelearn
