#include "blanket/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace blanket {

std::int64_t overlap_area(const Rect& a, const Rect& b) {
  const int w = std::min(a.right, b.right) - std::max(a.left, b.left) + 1;
  const int h = std::min(a.bottom, b.bottom) - std::max(a.top, b.top) + 1;
  if (w <= 0 || h <= 0) return 0;
  return std::int64_t{w} * h;
}

std::string to_string(const Rect& r) {
  std::ostringstream os;
  os << "(left=" << r.left << ", right=" << r.right << ", top=" << r.top
     << ", bottom=" << r.bottom << ")";
  return os.str();
}

std::string to_string(Pixel p) {
  std::ostringstream os;
  os << "(" << p.x << "," << p.y << ")";
  return os.str();
}

BinaryImage::BinaryImage(int width, int height)
    : BinaryImage(width, height,
                  std::vector<std::uint8_t>(
                      static_cast<std::size_t>(std::max(width, 0)) *
                      static_cast<std::size_t>(std::max(height, 0)), 0)) {}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("image dimensions must be positive");
  }
  if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("image bit count does not match width*height");
  }
  for (auto& b : bits_) {
    b = b != 0 ? 1 : 0;
    area_ += b;
  }
}

BinaryImage BinaryImage::from_rows(std::span<const std::string> rows) {
  if (rows.empty()) throw std::invalid_argument("image needs at least one row");
  const int w = static_cast<int>(rows.front().size());
  const int h = static_cast<int>(rows.size());
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(w) * h);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != w) {
      throw std::invalid_argument("ragged image rows");
    }
    for (char c : row) {
      if (c == '1' || c == '#') {
        bits.push_back(1);
      } else if (c == '0' || c == '.') {
        bits.push_back(0);
      } else {
        throw std::invalid_argument(std::string("unexpected image character '") + c + "'");
      }
    }
  }
  return BinaryImage(w, h, std::move(bits));
}

void BinaryImage::set(int x, int y, bool value) {
  auto& b = bits_[index(x, y)];
  area_ += static_cast<int>(value) - static_cast<int>(b);
  b = value ? 1 : 0;
}

bool BinaryImage::in_bounds(const Rect& r) const {
  return r.valid() && 1 <= r.left && r.right <= width_ && 1 <= r.top && r.bottom <= height_;
}

ImageIntegral::ImageIntegral(const BinaryImage& image)
    : width_(image.width()),
      height_(image.height()),
      sums_(static_cast<std::size_t>(width_ + 1) * static_cast<std::size_t>(height_ + 1), 0) {
  const auto stride = static_cast<std::size_t>(width_ + 1);
  for (int y = 1; y <= height_; ++y) {
    std::int64_t row = 0;
    for (int x = 1; x <= width_; ++x) {
      row += image.at(x, y) ? 1 : 0;
      sums_[y * stride + x] = sums_[(y - 1) * stride + x] + row;
    }
  }
}

std::int64_t ImageIntegral::ones(const Rect& r) const {
  if (!r.valid() || r.left < 1 || r.top < 1 || r.right > width_ || r.bottom > height_) {
    throw BoundsError("rectangle " + to_string(r) + " outside image");
  }
  const auto stride = static_cast<std::size_t>(width_ + 1);
  const auto at = [&](int x, int y) { return sums_[y * stride + x]; };
  return at(r.right, r.bottom) - at(r.left - 1, r.bottom) - at(r.right, r.top - 1) +
         at(r.left - 1, r.top - 1);
}

std::int64_t rect_cost(const ImageIntegral& tables, const Rect& r) {
  return r.area() - 2 * tables.ones(r);
}

std::int64_t blanket_objective(const BinaryImage& image, const ImageIntegral& tables,
                               std::span<const Rect> blanket) {
  for (std::size_t i = 0; i < blanket.size(); ++i) {
    for (std::size_t j = i + 1; j < blanket.size(); ++j) {
      if (blanket[i].intersects(blanket[j])) {
        throw BlanketError("rectangles " + to_string(blanket[i]) + " and " +
                           to_string(blanket[j]) + " overlap");
      }
    }
  }
  std::int64_t total = image.area();
  for (const auto& r : blanket) total += rect_cost(tables, r);
  return total;
}

std::int64_t blanket_objective(const BinaryImage& image, std::span<const Rect> blanket) {
  return blanket_objective(image, ImageIntegral(image), blanket);
}

ValidationReport validate_blanket(std::span<const Rect> blanket, int budget) {
  ValidationReport report;
  report.size = blanket.size();
  report.budget = budget;
  report.cardinality_exceeded = budget < 0 || blanket.size() > static_cast<std::size_t>(budget);
  for (std::size_t i = 0; i < blanket.size(); ++i) {
    for (std::size_t j = i + 1; j < blanket.size(); ++j) {
      const Rect& a = blanket[i];
      const Rect& b = blanket[j];
      if (a.intersects(b)) {
        report.overlaps.push_back(
            {i, j, Pixel{std::max(a.left, b.left), std::max(a.top, b.top)}});
      }
    }
  }
  return report;
}

}  // namespace blanket
