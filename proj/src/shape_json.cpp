#include "phc/shape_json.hpp"

#include <json.hpp>

#include "phc/errors.hpp"

namespace phc {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Shape parse_shape_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::Parse, "shape must be a JSON object");
  const auto kind = field<std::string>(j, "kind");
  if (kind == "ball") return Shape::ball(j.contains("dim") ? field<int>(j, "dim") : 2);
  if (kind == "rectangle") {
    const auto h = field<std::vector<double>>(j, "half_widths");
    if (h.size() != 2) throw Error(ErrorCode::Parse, "half_widths needs 2 entries");
    return Shape::rectangle(h[0], h[1]);
  }
  if (kind == "polygon") {
    const auto raw = field<std::vector<std::vector<double>>>(j, "vertices");
    std::vector<Point2> v;
    for (const auto& p : raw) {
      if (p.size() != 2) throw Error(ErrorCode::Parse, "vertices must be [x, y] pairs");
      v.push_back({p[0], p[1]});
    }
    return Shape::polygon(std::move(v));
  }
  if (kind == "interval") return Shape::interval(field<double>(j, "a"), field<double>(j, "b"));
  throw Error(ErrorCode::Parse, "unknown shape kind \"" + kind + "\"");
}

std::string shape_to_json(const Shape& shape) {
  json j;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, UnitBall>) {
          j = {{"kind", "ball"}, {"dim", k.dim}};
        } else if constexpr (std::is_same_v<K, Rectangle>) {
          j = {{"kind", "rectangle"}, {"half_widths", k.half_widths}};
        } else if constexpr (std::is_same_v<K, ConvexPolygon>) {
          json v = json::array();
          for (const Point2& p : k.vertices) v.push_back({p.x, p.y});
          j = {{"kind", "polygon"}, {"vertices", v}};
        } else {
          j = {{"kind", "interval"}, {"a", k.a}, {"b", k.b}};
        }
      },
      shape.kind());
  return j.dump();
}

Shape named_shape(std::string_view name) {
  if (name == "ball2") return Shape::ball(2);
  if (name == "ball3") return Shape::ball(3);
  if (name == "square") return Shape::square();
  if (name == "interval") return Shape::interval(0.0, 1.0);
  if (name == "triangle") return Shape::polygon({{0, 0}, {1, 0}, {0, 1}});
  throw Error(ErrorCode::Parse, "unknown shape name \"" + std::string(name) + "\"");
}

}  // namespace phc
