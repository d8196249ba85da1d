// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blanket/branch_and_price.hpp"
#include "blanket/heuristics.hpp"
#include "blanket/io/report.hpp"
#include "blanket/io/shapes.hpp"
#include "blanket/oracle.hpp"
#include "blanket/pricing.hpp"
#include "cli.hpp"
#include "support/oracles.hpp"

using namespace blanket;
using Clock = std::chrono::steady_clock;

namespace {

struct Instance {
  std::string name;
  BinaryImage image;
  int k;
  std::int64_t oracle;
};

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Instance> criterion1_instances() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> dim(2, 10);
  std::uniform_real_distribution<double> dens(0.2, 0.8);
  std::vector<Instance> out;
  for (int i = 0; i < 200; ++i) {
    const int w = dim(rng);
    const int h = dim(rng);
    const double d = dens(rng);
    const auto img = io::gen_shape(io::ShapeKind::Random, w, h, static_cast<std::uint64_t>(i), d);
    for (int k = 1; k <= 3; ++k) {
      out.push_back({fmt("r%03d_%dx%d", i, w, h), img, k, exact_solve(img, k).objective});
    }
  }
  return out;
}

struct WeightCase {
  WeightMatrix w;
  std::vector<BranchConstraint> constraints;
};

std::vector<WeightCase> criterion2_cases() {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> dim(1, 20);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::vector<WeightCase> out;
  for (int i = 0; i < 100; ++i) {
    const int w = dim(rng);
    const int h = dim(rng);
    WeightMatrix m(w, h);
    for (double& v : m.values()) v = val(rng);
    std::vector<BranchConstraint> cs;
    std::uniform_int_distribution<int> xs(1, w);
    std::uniform_int_distribution<int> ys(1, h);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int j = 0; j < n && w * h > 1; ++j) {
      Pixel e{xs(rng), ys(rng)};
      Pixel f{xs(rng), ys(rng)};
      if (e == f) continue;
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) cs.emplace_back(PairDiffer{e, f});
      else cs.emplace_back(PairSame{e, f});
    }
    out.push_back({std::move(m), std::move(cs)});
  }
  return out;
}

}  // namespace

int main() {
  const auto t_all = Clock::now();
  std::vector<std::pair<std::string, Outcome>> results;
  const auto report = [&](int id, const std::string& title, Outcome o) {
    std::printf("%s [%2d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
    std::fflush(stdout);
    results.emplace_back(title, o);
  };

  // Shared criterion-1 runs feed criteria 4, 5, 6 and 9.
  const auto t1 = Clock::now();
  const auto instances = criterion1_instances();
  int mismatches = 0;
  int duality_bad = 0;
  int sign_bad = 0;
  std::int64_t solves = 0;
  int lb_over_rlpm = 0;
  int root_runs = 0;
  int root_fractional = 0;
  int heuristic_below = 0;
  std::vector<io::RunRecord> records;
  for (const auto& inst : instances) {
    for (auto rule : {BranchRule::Variable, BranchRule::PixelPair}) {
      SolverConfig c;
      c.k = inst.k;
      c.rule = rule;
      c.record_trace = true;
      const auto s = solve(inst.image, c);
      if (s.objective != inst.oracle || s.status != SolveStatus::Optimal ||
          !testing_support::valid_blanket(s.blanket, inst.k)) {
        ++mismatches;
        std::printf("  mismatch %s k=%d rule=%d bp=%lld oracle=%lld\n", inst.name.c_str(), inst.k,
                    rule == BranchRule::Variable ? 1 : 2, static_cast<long long>(s.objective),
                    static_cast<long long>(inst.oracle));
      }
      for (const auto& t : s.trace) {
        ++solves;
        if (std::abs(t.z_rlpm - t.dual_objective) > 1e-6) ++duality_bad;
        if (t.max_pixel_dual > 1e-9 || t.mu > 1e-9) ++sign_bad;
        if (t.lagrangean > t.z_rlpm + 1e-6) ++lb_over_rlpm;
      }
      ++root_runs;
      root_fractional += s.stats.root_fractional ? 1 : 0;
      if (rule == BranchRule::PixelPair) {
        records.push_back(io::make_record(inst.name, inst.image, inst.k, "bp", s));
        CsaConfig cc;
        cc.seed = 1;
        for (const auto& [m, h] : {std::pair{std::string("sf"), sf_solve(inst.image, inst.k)},
                                   std::pair{std::string("fast"), fast_solve(inst.image, inst.k)},
                                   std::pair{std::string("csa"), csa_solve(inst.image, inst.k, cc)}}) {
          if (h.objective < s.objective || !testing_support::valid_blanket(h.blanket, inst.k)) ++heuristic_below;
          records.push_back(io::make_record(inst.name, inst.image, inst.k, m, h));
        }
      }
    }
  }
  const double c1_time = seconds(t1);
  report(1, "oracle equivalence",
         {mismatches == 0 && c1_time < 300.0,
          fmt("%zu instances x 2 rules, %d mismatches, %.1fs (limit 300s)", instances.size(), mismatches, c1_time)});

  {
    const auto t0 = Clock::now();
    int bad = 0;
    int checks = 0;
    for (const auto& wc : criterion2_cases()) {
      const auto plain = solve_pricing(wc.w, {});
      const auto ref = exact_min_rect(wc.w);
      ++checks;
      if (plain.empty() || !ref || plain.front().value != ref->value) ++bad;
      const auto constrained = solve_pricing(wc.w, wc.constraints);
      const auto cref = exact_min_rect(wc.w, wc.constraints);
      const auto filtered = testing_support::filtered_enumeration(wc.w, wc.constraints);
      ++checks;
      if (constrained.empty() || !cref || constrained.front().value != cref->value ||
          std::abs(cref->value - filtered.value) > 1e-9) {
        ++bad;
      }
      for (const auto& p : constrained)
        for (const auto& c : wc.constraints)
          if (!testing_support::pair_ok(p.rect, c)) ++bad;
    }
    const double t = seconds(t0);
    report(2, "pricing equivalence", {bad == 0 && t < 60.0, fmt("%d comparisons, %d differ, %.1fs (limit 60s)", checks, bad, t)});
  }

  {
    const auto img = testing_support::plus3();
    std::string got;
    bool ok = true;
    const std::int64_t want[] = {2, 1, 0, 0, 0, 0};
    for (int k = 1; k <= 6; ++k) {
      for (auto rule : {BranchRule::Variable, BranchRule::PixelPair}) {
        SolverConfig c;
        c.k = k;
        c.rule = rule;
        const auto s = solve(img, c);
        ok = ok && s.objective == want[k - 1] && s.objective == exact_solve(img, k).objective &&
             s.status == SolveStatus::Optimal;
        if (rule == BranchRule::PixelPair) got += fmt("%s%lld", k > 1 ? "," : "", static_cast<long long>(s.objective));
      }
    }
    report(3, "PLUS3 ladder", {ok, "k=1..6 -> " + got + " (want 2,1,0,0,0,0, equal to exact oracle)"});
  }

  {
    int violations = 0;
    std::int64_t iterations = 0;
    for (const auto& inst : instances) {
      for (auto rule : {BranchRule::Variable, BranchRule::PixelPair}) {
        SolverConfig c;
        c.k = inst.k;
        c.rule = rule;
        c.record_trace = true;
        c.lagrangean_stop = false;
        const auto s = solve(inst.image, c);
        if (s.objective != inst.oracle) ++violations;
        std::map<std::int64_t, double> z_final;
        for (const auto& n : s.nodes) {
          if (n.stop == NodeStop::LpOptimal) z_final[n.id] = n.z_final;
        }
        for (const auto& t : s.trace) {
          const auto it = z_final.find(t.node);
          if (it == z_final.end()) continue;
          ++iterations;
          if (t.lagrangean > it->second + 1e-6 || it->second > t.z_rlpm + 1e-6) ++violations;
        }
      }
    }
    report(4, "bound sandwich",
           {violations == 0 && lb_over_rlpm == 0,
            fmt("%lld iterations checked against final node LP, %d violations; LB<=z_RLPM violations in early-stop runs: %d",
                static_cast<long long>(iterations), violations, lb_over_rlpm)});
  }

  report(5, "LP duality",
         {duality_bad == 0 && sign_bad == 0 && solves > 0,
          fmt("%lld master solves, %d duality gaps > 1e-6, %d sign violations", static_cast<long long>(solves),
              duality_bad, sign_bad)});

  {
    int pd_bad = 0;
    std::string csv;
    try {
      csv = io::bench_csv(records);
    } catch (const std::exception& e) {
      ++pd_bad;
    }
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const std::string pd = line.substr(line.rfind(',') + 1);
      if (pd.empty()) continue;
      if (pd.front() == '(') {
        if (pd.back() != ')') ++pd_bad;
      } else if (std::stod(pd) < 0.0) {
        ++pd_bad;
      }
    }
    report(6, "heuristic dominance",
           {heuristic_below == 0 && pd_bad == 0,
            fmt("%zu heuristic runs, %d below bp, %d bad PD cells", records.size() * 3 / 4, heuristic_below, pd_bad)});
  }

  {
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto img = io::gen_shape(io::ShapeKind::Random, 12, 12, 5000 + seed, 0.5);
      std::int64_t prev = img.area();
      for (int k = 1; k <= 4; ++k) {
        const auto z = exact_solve(img, k).objective;
        if (z > prev) ++bad;
        prev = z;
      }
    }
    report(7, "monotonicity in K", {bad == 0, fmt("20 images 12x12, k=1..4, %d increases", bad)});
  }

  {
    int bad = 0;
    int runs = 0;
    const std::pair<int, int> sizes[] = {{3, 3}, {4, 6}, {6, 4}, {5, 8}, {8, 5}, {8, 8}, {7, 10}, {10, 7}, {8, 12}};
    for (auto kind : {io::ShapeKind::Solid, io::ShapeKind::Plus, io::ShapeKind::Staircase}) {
      for (const auto& [w, h] : sizes) {
        SolverConfig c;
        c.k = std::min(w, h);
        const auto s = solve(io::gen_shape(kind, w, h), c);
        ++runs;
        if (s.objective != 0 || s.status != SolveStatus::Optimal) {
          ++bad;
          std::printf("  strip cover %s %dx%d -> %lld\n", io::to_string(kind).c_str(), w, h,
                      static_cast<long long>(s.objective));
        }
      }
    }
    report(8, "strip cover", {bad == 0, fmt("%d shapes at k=min(W,H), %d not proven 0", runs, bad)});
  }

  {
    const double integral = 1.0 - static_cast<double>(root_fractional) / root_runs;
    report(9, "root integrality",
           {integral >= 0.5, fmt("%d of %d root LPs fractional, %.1f%% integral (need >= 50%%)", root_fractional,
                                 root_runs, 100.0 * integral)});
  }

  {
    bool ok = true;
    std::string detail;
    for (auto kind : {io::ShapeKind::Plus, io::ShapeKind::Random}) {
      const auto img = io::gen_shape(kind, 100, 100, 1, 0.5);
      auto t0 = Clock::now();
      sf_solve(img, 20);
      const double sf = seconds(t0);
      t0 = Clock::now();
      fast_solve(img, 20);
      const double fa = seconds(t0);
      t0 = Clock::now();
      csa_solve(img, 20);
      const double cs = seconds(t0);
      ok = ok && sf < 1.0 && fa < 1.0 && cs < 30.0;
      detail += fmt("%s%s sf %.3fs fast %.3fs csa %.3fs", detail.empty() ? "" : "; ",
                    io::to_string(kind).c_str(), sf, fa, cs);
    }
    report(10, "efficiency sanity", {ok, detail + " (limits 1s/1s/30s)"});
  }

  {
    int differ = 0;
    int runs = 0;
    for (const std::string shape : {"random:9x9:3:0.5", "plus:7x7", "staircase:8x6"}) {
      for (const std::string m : {"bp", "sf", "fast", "csa"}) {
        const std::vector<std::string> args = {"solve", "--gen", shape, "--k", "3", "--method", m, "--seed", "5"};
        std::ostringstream a, b, err;
        const int ca = cli::run(args, a, err);
        const int cb = cli::run(args, b, err);
        ++runs;
        if (ca != 0 || cb != 0 || a.str() != b.str()) ++differ;
      }
    }
    report(11, "determinism", {differ == 0, fmt("%d method/shape pairs run twice, %d differ", runs, differ)});
  }

  {
    int differ = 0;
    int checks = 0;
    for (const auto& wc : criterion2_cases()) {
      for (const auto* cs : {static_cast<const std::vector<BranchConstraint>*>(nullptr), &wc.constraints}) {
        const std::vector<BranchConstraint> none;
        const auto& use = cs ? *cs : none;
        std::vector<std::vector<PricedRect>> answers;
        for (std::int64_t threshold : {std::int64_t{1}, std::int64_t{256}, std::int64_t{1000000000}}) {
          answers.push_back(solve_pricing(wc.w, use, PricingOptions{10, threshold, 0.0}));
        }
        ++checks;
        for (const auto& a : answers) {
          for (std::size_t i = 0; i < a.size(); ++i) {
            if (i > 0 && a[i].value < a[i - 1].value) ++differ;
            for (const auto& c : use)
              if (!testing_support::pair_ok(a[i].rect, c)) ++differ;
          }
          if (a.empty() || a.front().rect != answers[0].front().rect || a.front().value != answers[0].front().value) {
            ++differ;
            break;
          }
        }
      }
    }
    report(12, "hybrid-switch neutrality",
           {differ == 0, fmt("%d pricing problems x thresholds {1,256,1e9}, %d differ", checks, differ)});
  }

  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
  std::printf("%zu/%zu criteria passed in %.1fs\n", results.size() - failed, results.size(), seconds(t_all));
  return failed == 0 ? 0 : 1;
}
