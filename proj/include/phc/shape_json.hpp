#pragma once

// Shape files: {"kind": "ball"|"rectangle"|"polygon"|"interval", "dim": 3,
// "half_widths": [1, 1], "vertices": [[0,0],[1,0],[0,1]], "a": 0, "b": 1}.

#include <string>
#include <string_view>

#include "phc/shapes.hpp"

namespace phc {

// Throws Error(Parse) for malformed JSON or missing fields and
// Error(InvalidShape) for invalid geometry.
Shape parse_shape_json(std::string_view text);
std::string shape_to_json(const Shape& shape);

// ball2, ball3, square, interval (the unit interval), triangle.
Shape named_shape(std::string_view name);

}  // namespace phc
