#include "blanket/io/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace blanket::io {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

RunRecord make_record(std::string instance, const BinaryImage& image, int k, std::string method,
                      const BlanketSolution& solution) {
  RunRecord r;
  r.instance = std::move(instance);
  r.width = image.width();
  r.height = image.height();
  r.area = image.area();
  r.k = k;
  r.method = std::move(method);
  r.objective = solution.objective;
  r.lower_bound = solution.lower_bound;
  r.status = to_string(solution.status);
  r.wall_seconds = solution.stats.wall_seconds;
  r.nodes = solution.stats.nodes;
  r.columns = solution.stats.columns;
  return r;
}

std::string solution_json(const BinaryImage& image, int k, const std::string& method,
                          const BlanketSolution& solution, bool timings) {
  nlohmann::ordered_json j;
  j["width"] = image.width();
  j["height"] = image.height();
  j["area"] = image.area();
  j["k"] = k;
  j["method"] = method;
  j["status"] = to_string(solution.status);
  j["objective"] = solution.objective;
  j["lower_bound"] = solution.lower_bound;
  auto rects = nlohmann::ordered_json::array();
  for (const Rect& r : solution.blanket) {
    rects.push_back({{"left", r.left}, {"top", r.top}, {"right", r.right}, {"bottom", r.bottom}});
  }
  j["rects"] = std::move(rects);
  nlohmann::ordered_json stats;
  stats["nodes"] = solution.stats.nodes;
  stats["columns"] = solution.stats.columns;
  stats["iterations"] = solution.stats.iterations;
  stats["misprices"] = solution.stats.misprices;
  stats["max_depth"] = solution.stats.max_depth;
  stats["root_fractional"] = solution.stats.root_fractional;
  if (timings) {
    stats["lp_seconds"] = solution.stats.lp_seconds;
    stats["pricing_seconds"] = solution.stats.pricing_seconds;
    stats["wall_seconds"] = solution.stats.wall_seconds;
  }
  j["stats"] = std::move(stats);
  return j.dump(2) + "\n";
}

std::string solution_svg(const BinaryImage& image, std::span<const Rect> blanket, int scale) {
  const int w = image.width();
  const int h = image.height();
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w * scale
     << "\" height=\"" << h * scale << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
     << "  <path fill=\"#b0b0b0\" d=\"";
  for (int y = 1; y <= h; ++y) {
    for (int x = 1; x <= w; ++x) {
      if (image.at(x, y)) os << "M" << x - 1 << " " << y - 1 << "h1v1h-1z";
    }
  }
  os << "\"/>\n";
  for (const Rect& r : blanket) {
    os << "  <rect x=\"" << r.left - 1 << "\" y=\"" << r.top - 1 << "\" width=\"" << r.width()
       << "\" height=\"" << r.height()
       << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string trace_csv(std::span<const IterationRecord> trace) {
  std::ostringstream os;
  os << "node,depth,iteration,z_rlpm,lagrangean,best_bound,dual_objective,max_pixel_dual,mu,"
        "alpha,columns_added,misprice\n";
  for (const auto& t : trace) {
    os << t.node << ',' << t.depth << ',' << t.iteration << ',' << fixed(t.z_rlpm, 9) << ','
       << fixed(t.lagrangean, 9) << ',' << fixed(t.best_bound, 9) << ',' << fixed(t.dual_objective, 9)
       << ',' << fixed(t.max_pixel_dual, 9) << ',' << fixed(t.mu, 9) << ',' << fixed(t.alpha, 3) << ','
       << t.columns_added << ',' << (t.misprice ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string percent_deviation(std::int64_t z_h, std::int64_t z_bp) {
  if (z_bp == 0) return "(" + std::to_string(z_h) + ")";
  return fixed(100.0 * static_cast<double>(z_h - z_bp) / static_cast<double>(z_bp), 2);
}

std::string bench_csv(std::span<const RunRecord> records, bool with_pd) {
  std::map<std::pair<std::string, int>, std::int64_t> bp;
  for (const auto& r : records) {
    if (r.method == "bp") bp[{r.instance, r.k}] = r.objective;
  }
  std::ostringstream os;
  os << "instance,width,height,area,k,method,objective,lower_bound,status,wall_seconds,nodes,"
        "columns,pd\n";
  for (const auto& r : records) {
    std::string pd;
    if (with_pd && r.method != "bp") {
      const auto it = bp.find({r.instance, r.k});
      if (it == bp.end()) {
        throw std::invalid_argument("no bp row for " + r.instance + " at k=" + std::to_string(r.k));
      }
      pd = percent_deviation(r.objective, it->second);
    }
    os << csv_field(r.instance) << ',' << r.width << ',' << r.height << ',' << r.area << ',' << r.k
       << ',' << r.method << ',' << r.objective << ',' << fixed(r.lower_bound, 3) << ',' << r.status
       << ',' << fixed(r.wall_seconds, 6) << ',' << r.nodes << ',' << r.columns << ',' << pd << '\n';
  }
  return os.str();
}

}  // namespace blanket::io
