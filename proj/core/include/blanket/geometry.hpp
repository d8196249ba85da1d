#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blanket {

// Pixel coordinates are 1-based: x is the column (1..W), y the row (1..H),
// with y growing downward.
struct Pixel {
  int x = 1;
  int y = 1;

  friend bool operator==(const Pixel&, const Pixel&) = default;
  friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

// Axis-aligned rectangle with inclusive edges. Field order follows the
// (left, right, top, bottom) quadruplet, while ordering is lexicographic on
// (top, left, bottom, right), the tie-break used throughout the solvers.
struct Rect {
  int left = 1;
  int right = 1;
  int top = 1;
  int bottom = 1;

  int width() const { return right - left + 1; }
  int height() const { return bottom - top + 1; }
  std::int64_t area() const { return std::int64_t{width()} * height(); }

  bool valid() const { return left <= right && top <= bottom; }
  bool contains(Pixel p) const {
    return left <= p.x && p.x <= right && top <= p.y && p.y <= bottom;
  }
  bool contains(const Rect& r) const {
    return left <= r.left && r.right <= right && top <= r.top && r.bottom <= bottom;
  }
  bool intersects(const Rect& r) const {
    return left <= r.right && r.left <= right && top <= r.bottom && r.top <= bottom;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
  friend std::strong_ordering operator<=>(const Rect& a, const Rect& b) {
    if (auto c = a.top <=> b.top; c != 0) return c;
    if (auto c = a.left <=> b.left; c != 0) return c;
    if (auto c = a.bottom <=> b.bottom; c != 0) return c;
    return a.right <=> b.right;
  }
};

/// Number of pixels shared by two rectangles (0 when disjoint).
std::int64_t overlap_area(const Rect& a, const Rect& b);

std::string to_string(const Rect& r);
std::string to_string(Pixel p);

struct RectHash {
  std::size_t operator()(const Rect& r) const noexcept {
    std::size_t h = static_cast<std::size_t>(r.left);
    h = h * 1000003u ^ static_cast<std::size_t>(r.right);
    h = h * 1000003u ^ static_cast<std::size_t>(r.top);
    h = h * 1000003u ^ static_cast<std::size_t>(r.bottom);
    return h;
  }
};

class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class BlanketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// W x H binary target image; a set bit marks a pixel of the shape.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height);
  /// `bits` is row-major (y outer, x inner), size width*height.
  BinaryImage(int width, int height, std::vector<std::uint8_t> bits);

  /// Rows of '0'/'1' (or '.'/'#') characters, all of equal length.
  static BinaryImage from_rows(std::span<const std::string> rows);

  int width() const { return width_; }
  int height() const { return height_; }
  std::int64_t area() const { return area_; }
  std::size_t pixel_count() const { return bits_.size(); }

  bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  bool at(Pixel p) const { return at(p.x, p.y); }
  void set(int x, int y, bool value);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y - 1) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x - 1);
  }
  std::size_t index(Pixel p) const { return index(p.x, p.y); }

  Rect frame() const { return Rect{1, width_, 1, height_}; }
  bool in_bounds(const Rect& r) const;
  bool in_bounds(Pixel p) const {
    return 1 <= p.x && p.x <= width_ && 1 <= p.y && p.y <= height_;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
  std::int64_t area_ = 0;
};

/// Exact integer prefix sums of the image's set bits.
class ImageIntegral {
 public:
  explicit ImageIntegral(const BinaryImage& image);

  int width() const { return width_; }
  int height() const { return height_; }
  /// Count of 1-pixels inside `r`. Throws BoundsError when `r` leaves the image.
  std::int64_t ones(const Rect& r) const;
  std::int64_t zeros(const Rect& r) const { return r.area() - ones(r); }

 private:
  int width_;
  int height_;
  std::vector<std::int64_t> sums_;
};

/// c(r) = area(r) - 2 * ones(r).
std::int64_t rect_cost(const ImageIntegral& tables, const Rect& r);

using Blanket = std::vector<Rect>;

/// Mismatch area |I| + sum c(r). Throws BlanketError for overlapping
/// rectangles and BoundsError for rectangles outside the image.
std::int64_t blanket_objective(const BinaryImage& image, const ImageIntegral& tables,
                               std::span<const Rect> blanket);
std::int64_t blanket_objective(const BinaryImage& image, std::span<const Rect> blanket);

struct OverlapViolation {
  std::size_t first = 0;
  std::size_t second = 0;
  Pixel witness;  // one shared pixel
};

struct ValidationReport {
  std::vector<OverlapViolation> overlaps;
  bool cardinality_exceeded = false;
  std::size_t size = 0;
  int budget = 0;

  bool ok() const { return overlaps.empty() && !cardinality_exceeded; }
};

ValidationReport validate_blanket(std::span<const Rect> blanket, int budget);

}  // namespace blanket
