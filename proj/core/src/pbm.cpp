#include "blanket/io/pbm.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace blanket::io {

namespace {

class Reader {
 public:
  Reader(std::string_view bytes, std::size_t start) : s_(bytes), pos_(start) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= s_.size(); }

  void skip_space() {
    while (pos_ < s_.size()) {
      const unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int integer(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > std::numeric_limits<int>::max()) throw ParseError(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (done()) throw ParseError(std::string("truncated header: missing ") + what, pos_);
      throw ParseError(std::string("expected ") + what, pos_);
    }
    return static_cast<int>(v);
  }

  char get() { return s_[pos_++]; }
  unsigned char byte() { return static_cast<unsigned char>(s_[pos_++]); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

BinaryImage load_pbm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("bad magic: not a PBM file", 0);
  if (bytes[1] != '1' && bytes[1] != '4') {
    throw ParseError(std::string("unsupported PNM variant P") + bytes[1] + " (expected P1 or P4)", 1);
  }
  const bool raw = bytes[1] == '4';
  Reader in(bytes, 2);
  const auto fail = [](const std::string& msg, std::size_t p) { return ParseError(msg, p); };

  const int w = in.integer("width");
  const int h = in.integer("height");
  if (w < 1 || h < 1) throw fail("dimensions must be positive", in.pos());

  BinaryImage image(w, h);
  if (raw) {
    if (in.done()) throw fail("truncated payload", in.pos());
    const std::size_t sep = in.pos();
    if (!std::isspace(static_cast<unsigned char>(in.get()))) throw fail("expected whitespace after header", sep);
    const int row_bytes = (w + 7) / 8;
    for (int y = 1; y <= h; ++y) {
      for (int b = 0; b < row_bytes; ++b) {
        if (in.done()) throw fail("truncated payload", in.pos());
        const unsigned char v = in.byte();
        for (int bit = 0; bit < 8; ++bit) {
          const int x = b * 8 + bit + 1;
          if (x <= w && (v & (0x80u >> bit))) image.set(x, y, true);
        }
      }
    }
  } else {
    for (int y = 1; y <= h; ++y) {
      for (int x = 1; x <= w; ++x) {
        in.skip_space();
        if (in.done()) throw fail("truncated payload", in.pos());
        const std::size_t p = in.pos();
        const char c = in.get();
        if (c != '0' && c != '1') throw fail(std::string("unexpected character '") + c + "'", p);
        if (c == '1') image.set(x, y, true);
      }
    }
    in.skip_space();
    if (!in.done()) throw fail("dimension mismatch: extra pixel data", in.pos());
  }
  return image;
}

BinaryImage load_pbm_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_pbm(ss.str());
}

std::string emit_pbm(const BinaryImage& image, PbmFormat format) {
  const int w = image.width();
  const int h = image.height();
  std::string out = (format == PbmFormat::Raw ? "P4\n" : "P1\n") + std::to_string(w) + " " +
                    std::to_string(h) + "\n";
  if (format == PbmFormat::Raw) {
    for (int y = 1; y <= h; ++y) {
      for (int b = 0; b < (w + 7) / 8; ++b) {
        unsigned char v = 0;
        for (int bit = 0; bit < 8; ++bit) {
          const int x = b * 8 + bit + 1;
          if (x <= w && image.at(x, y)) v |= static_cast<unsigned char>(0x80u >> bit);
        }
        out.push_back(static_cast<char>(v));
      }
    }
  } else {
    for (int y = 1; y <= h; ++y) {
      for (int x = 1; x <= w; ++x) {
        out.push_back(image.at(x, y) ? '1' : '0');
        out.push_back(x == w ? '\n' : ' ');
      }
    }
  }
  return out;
}

}  // namespace blanket::io
