#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "blanket/geometry.hpp"

namespace blanket::io {

enum class ShapeKind { Solid, Plus, Frame, Staircase, Disconnected, Random };

struct ShapeSpec {
  ShapeKind kind = ShapeKind::Solid;
  int width = 1;
  int height = 1;
  std::uint64_t seed = 0;
  double density = 0.5;
};

std::string to_string(ShapeKind kind);

BinaryImage gen_shape(ShapeKind kind, int width, int height, std::uint64_t seed = 0,
                      double density = 0.5);
BinaryImage gen_shape(const ShapeSpec& spec);

/// Parses "KIND:WxH" or "KIND:WxH:SEED:DENSITY". Throws std::invalid_argument.
ShapeSpec parse_shape_spec(std::string_view text);

}  // namespace blanket::io
