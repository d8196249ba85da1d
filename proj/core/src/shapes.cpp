#include "blanket/io/shapes.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <stdexcept>
#include <vector>

namespace blanket::io {

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Solid: return "solid";
    case ShapeKind::Plus: return "plus";
    case ShapeKind::Frame: return "frame";
    case ShapeKind::Staircase: return "staircase";
    case ShapeKind::Disconnected: return "disconnected";
    case ShapeKind::Random: return "random";
  }
  return "unknown";
}

BinaryImage gen_shape(ShapeKind kind, int width, int height, std::uint64_t seed, double density) {
  if (width < 1 || height < 1) throw std::invalid_argument("shape dimensions must be positive");
  BinaryImage img(width, height);
  const auto fill = [&](int l, int r, int t, int b) {
    for (int y = t; y <= b; ++y) {
      for (int x = l; x <= r; ++x) img.set(x, y, true);
    }
  };
  switch (kind) {
    case ShapeKind::Solid: fill(1, width, 1, height); break;
    case ShapeKind::Plus:
      fill(1, width, height / 3 + 1, height - height / 3);
      fill(width / 3 + 1, width - width / 3, 1, height);
      break;
    case ShapeKind::Frame:
      fill(1, width, 1, 1);
      fill(1, width, height, height);
      fill(1, 1, 1, height);
      fill(width, width, 1, height);
      break;
    case ShapeKind::Staircase:
      for (int y = 1; y <= height; ++y) {
        const int len = std::max(1, (width * (height - y + 1) + height - 1) / height);
        fill(1, len, y, y);
      }
      break;
    case ShapeKind::Disconnected: {
      const int ax = std::max(1, (width - 1) / 2);
      const int ay = std::max(1, (height - 1) / 2);
      fill(1, ax, 1, ay);
      fill(std::min(width, ax + 2), width, std::min(height, ay + 2), height);
      break;
    }
    case ShapeKind::Random: {
      if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
      std::mt19937_64 rng(seed);
      std::bernoulli_distribution coin(density);
      for (int y = 1; y <= height; ++y) {
        for (int x = 1; x <= width; ++x) img.set(x, y, coin(rng));
      }
      break;
    }
  }
  return img;
}

BinaryImage gen_shape(const ShapeSpec& spec) {
  return gen_shape(spec.kind, spec.width, spec.height, spec.seed, spec.density);
}

ShapeSpec parse_shape_spec(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  const std::string bad = "bad shape spec '" + std::string(text) + "' (want KIND:WxH[:SEED:DENSITY])";
  if (parts.size() != 2 && parts.size() != 4) throw std::invalid_argument(bad);

  ShapeSpec spec;
  bool known = false;
  for (ShapeKind k : {ShapeKind::Solid, ShapeKind::Plus, ShapeKind::Frame, ShapeKind::Staircase,
                      ShapeKind::Disconnected, ShapeKind::Random}) {
    if (parts[0] == to_string(k)) {
      spec.kind = k;
      known = true;
    }
  }
  if (!known) throw std::invalid_argument("unknown shape kind '" + std::string(parts[0]) + "'");

  const auto number = [&](std::string_view s, auto& out) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) throw std::invalid_argument(bad);
  };
  const auto x = parts[1].find('x');
  if (x == std::string_view::npos) throw std::invalid_argument(bad);
  number(parts[1].substr(0, x), spec.width);
  number(parts[1].substr(x + 1), spec.height);
  if (spec.width < 1 || spec.height < 1) throw std::invalid_argument(bad);
  if (parts.size() == 4) {
    number(parts[2], spec.seed);
    number(parts[3], spec.density);
    if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw std::invalid_argument(bad);
  }
  return spec;
}

}  // namespace blanket::io
