#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blanket/geometry.hpp"
#include "blanket/solution.hpp"

namespace blanket::io {

struct RunRecord {
  std::string instance;
  int width = 0;
  int height = 0;
  std::int64_t area = 0;
  int k = 0;
  std::string method;
  std::int64_t objective = 0;
  double lower_bound = 0.0;
  std::string status;
  double wall_seconds = 0.0;
  std::int64_t nodes = 0;
  std::int64_t columns = 0;
};

RunRecord make_record(std::string instance, const BinaryImage& image, int k, std::string method,
                      const BlanketSolution& solution);

/// Solution JSON with stable key order. Timing fields only when requested.
std::string solution_json(const BinaryImage& image, int k, const std::string& method,
                          const BlanketSolution& solution, bool timings = false);

/// SVG 1.1: image pixels as one gray path, one stroked <rect> per rectangle.
std::string solution_svg(const BinaryImage& image, std::span<const Rect> blanket, int scale = 10);

/// Per-iteration column-generation trace.
std::string trace_csv(std::span<const IterationRecord> trace);

/// 100 * (z_h - z_bp) / z_bp, or "(z_h)" when z_bp is 0.
std::string percent_deviation(std::int64_t z_h, std::int64_t z_bp);

/// One row per record plus a pd column computed against the bp row of the
/// same (instance, k). Throws std::invalid_argument when `pd` is set and a
/// bp row is missing; with `pd` unset the column is left empty.
std::string bench_csv(std::span<const RunRecord> records, bool pd = true);

}  // namespace blanket::io
