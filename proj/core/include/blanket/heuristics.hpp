#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "blanket/geometry.hpp"
#include "blanket/solution.hpp"

namespace blanket {

// Split-and-Fit

struct SfConfig {
  int rho = 3;  // cuts at i/rho, i = 1..rho-1
};

/// Fitness of a rectangle that covers no 0-pixel.
inline constexpr double kPerfectFit = std::numeric_limits<double>::infinity();

/// 1 / (number of 0-pixels in r), or kPerfectFit.
double fitness(const Rect& r, const ImageIntegral& integral);
double fitness(const Rect& r, const BinaryImage& image);

BlanketSolution sf_solve(const BinaryImage& image, int k, const SfConfig& config = {});

// FAST

struct FastConfig {
  double tau = 0.5;
  // When set, receives the benefit after every accepted growth step, one
  // vector per placed rectangle (seed first).
  std::vector<std::vector<double>>* growth_trace = nullptr;
};

/// sum over r of (I_p - tau).
double benefit(const Rect& r, const ImageIntegral& integral, double tau);
double benefit(const Rect& r, const BinaryImage& image, double tau);

BlanketSolution fast_solve(const BinaryImage& image, int k, const FastConfig& config = {});

// Constrained simulated annealing

struct CsaConfig {
  double initial_temperature = 0.0;  // <= 0: calibrate from probe moves
  int probe_moves = 100;
  double beta = 0.95;
  int moves_per_temperature = 200;
  int max_temperatures = 50;
  int convergence_window = 3;
  double lambda_step = 1.0;
  double lambda_move_probability = 0.2;
  std::uint64_t seed = 1;
  bool verify_energy = false;  // recompute the energy after every accepted move
};

struct CsaState {
  Blanket rects;  // may overlap or exceed the budget
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double energy = 0.0;
  Blanket best_feasible;
  std::int64_t best_objective = 0;  // mismatch of best_feasible
};

/// Number of pixels shared, summed over ordered pairs i != j.
std::int64_t overlap_penalty(const Blanket& rects);

/// sum c + lambda1 * max(0, |rects| - k) + lambda2 * overlap_penalty.
double csa_energy(const CsaState& state, const ImageIntegral& integral, int k);
double csa_energy(const CsaState& state, const BinaryImage& image, int k);

BlanketSolution csa_solve(const BinaryImage& image, int k, const CsaConfig& config = {});

}  // namespace blanket
