#include "blanket/integral.hpp"

#include <algorithm>

namespace blanket {

WeightMatrix::WeightMatrix(int width, int height, double fill)
    : width_(width),
      height_(height),
      values_(static_cast<std::size_t>(std::max(width, 0)) *
                  static_cast<std::size_t>(std::max(height, 0)),
              fill) {
  if (width < 1 || height < 1) throw std::invalid_argument("weight matrix dimensions must be positive");
}

WeightMatrix::WeightMatrix(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width < 1 || height < 1) throw std::invalid_argument("weight matrix dimensions must be positive");
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("weight count does not match width*height");
  }
}

WeightMatrix WeightMatrix::from_image(const BinaryImage& image) {
  WeightMatrix w(image.width(), image.height());
  for (int y = 1; y <= image.height(); ++y) {
    for (int x = 1; x <= image.width(); ++x) {
      w.at(x, y) = image.at(x, y) ? -1.0 : 1.0;
    }
  }
  return w;
}

IntegralTables::IntegralTables(const WeightMatrix& weights)
    : width_(weights.width()),
      height_(weights.height()),
      pos_(static_cast<std::size_t>(width_ + 1) * static_cast<std::size_t>(height_ + 1), 0.0),
      neg_(pos_.size(), 0.0) {
  const auto stride = static_cast<std::size_t>(width_ + 1);
  for (int y = 1; y <= height_; ++y) {
    double prow = 0.0;
    double nrow = 0.0;
    for (int x = 1; x <= width_; ++x) {
      const double w = weights.at(x, y);
      if (w > 0.0) {
        prow += w;
      } else {
        nrow += w;
      }
      pos_[y * stride + x] = pos_[(y - 1) * stride + x] + prow;
      neg_[y * stride + x] = neg_[(y - 1) * stride + x] + nrow;
    }
  }
}

double IntegralTables::box(const std::vector<double>& t, const Rect& r) const {
  if (!r.valid() || r.left < 1 || r.top < 1 || r.right > width_ || r.bottom > height_) {
    throw BoundsError("rectangle " + to_string(r) + " outside weight matrix");
  }
  const auto stride = static_cast<std::size_t>(width_ + 1);
  const auto at = [&](int x, int y) { return t[y * stride + x]; };
  return at(r.right, r.bottom) - at(r.left - 1, r.bottom) - at(r.right, r.top - 1) +
         at(r.left - 1, r.top - 1);
}

}  // namespace blanket
