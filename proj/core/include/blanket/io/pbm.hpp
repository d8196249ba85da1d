#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "blanket/geometry.hpp"

namespace blanket::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class PbmFormat { Plain /* P1 */, Raw /* P4 */ };

/// Parses P1 or P4 bytes. A set PBM bit (black) is a shape pixel.
BinaryImage load_pbm(std::string_view bytes);
/// Reads the file and parses it; std::runtime_error when unreadable.
BinaryImage load_pbm_file(const std::string& path);

std::string emit_pbm(const BinaryImage& image, PbmFormat format = PbmFormat::Plain);

}  // namespace blanket::io
