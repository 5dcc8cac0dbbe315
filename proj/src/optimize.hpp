#pragma once

#include "bounds.hpp"
#include "core.hpp"
#include "modify.hpp"

namespace bell {

enum class Objective { violation, dimension_ratio };

struct SearchConfig {
  Objective objective = Objective::violation;
  int dprime = 2;  // only for dimension_ratio
  long global_samples = 1000;
  bool local_refine = true;
  double init_step = 0.39269908169872414;  // pi/8
  double min_step = 1e-6;
  std::uint64_t seed = 0;
  int seesaw_restarts = 50;
  int refine_top_k = 1;
  long max_sweeps = 2000;
  bool epsilon_trick = false;
};

struct SearchResult {
  Matrix best_g;
  TwistSpec twist_spec;
  ShiftSpec shift_spec;
  double objective_value = 0;
  double tsirelson = 0;
  double denominator = 0;  // classical bound, or the see-saw value for ratios
  bool denominator_is_estimate = false;
  std::vector<std::pair<long, double>> trace;  // (evaluation index, new best)
  bool local_optimum = false;
  bool epsilon_applied = false;
  std::string note;
};

// Two-phase search over the modification parameters. Phase 1 draws uniform
// twist angles, sign flips and value shifts (plus structured candidates:
// the unmodified matrix, equalized-magnitude sign patterns, and shifts that
// promote lower singular values to the top). Phase 2 polls around the best
// samples: per sweep it tries +-step on every coordinate, +-step along a
// fresh random orthonormal frame, snaps of each lower value onto
// {+-top, +-top shrunk, 0}, and single flips of the discrete signs; the step
// grows 1.5x after an improving sweep and halves otherwise.
SearchResult optimize_violation(const Matrix& g, const SearchConfig& cfg);
SearchResult optimize_dimension_ratio(const Matrix& g, int dprime, SearchConfig cfg);

struct HistogramResult {
  std::vector<double> values;
  double mean = 0, min = 0, max = 0;
};

// mode "random": 3x3 matrices with entries uniform in [-1,1], value from the
// see-saw quantum estimate over the exact classical bound. mode "twisted":
// uniformly drawn twists of the 3x3 staircase matrix, value T/B(g').
HistogramResult violation_histogram(const std::string& mode, long n, std::uint64_t seed);

}  // namespace bell
