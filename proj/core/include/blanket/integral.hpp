#pragma once

#include <vector>

#include "blanket/geometry.hpp"

namespace blanket {

/// Per-pixel real weights, laid out like BinaryImage (row-major, 1-based access).
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(int width, int height, double fill = 0.0);
  WeightMatrix(int width, int height, std::vector<double> values);

  /// The unpriced pricing weights 1 - 2 I.
  static WeightMatrix from_image(const BinaryImage& image);

  int width() const { return width_; }
  int height() const { return height_; }

  double at(int x, int y) const { return values_[index(x, y)]; }
  double at(Pixel p) const { return at(p.x, p.y); }
  double& at(int x, int y) { return values_[index(x, y)]; }
  double& at(Pixel p) { return at(p.x, p.y); }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y - 1) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x - 1);
  }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Summed-area tables over the positive and negative parts of a weight
/// matrix, zero-padded on row 0 and column 0.
class IntegralTables {
 public:
  IntegralTables() = default;
  explicit IntegralTables(const WeightMatrix& weights);

  int width() const { return width_; }
  int height() const { return height_; }

  double positive(const Rect& r) const { return box(pos_, r); }
  double negative(const Rect& r) const { return box(neg_, r); }
  double sum(const Rect& r) const { return positive(r) + negative(r); }

 private:
  double box(const std::vector<double>& table, const Rect& r) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<double> pos_;
  std::vector<double> neg_;
};

inline IntegralTables build_integrals(const WeightMatrix& weights) {
  return IntegralTables(weights);
}

}  // namespace blanket
