#pragma once

#include "core.hpp"

namespace bell {

struct ClassicalBound {
  double B = 0;
  std::vector<int> a1;  // +-1 per Alice setting
  std::vector<int> a2;  // +-1 per Bob setting
};

long enumeration_budget();  // BELL_MAX_ENUM override, default 24

// Exact max of sum g_ij a1_i a2_j over sign vectors. Enumerates the smaller
// side with Gray-code incremental column sums; the first sign is fixed +1.
ClassicalBound classical_bound(const Matrix& g, long budget = -1);

double tsirelson_bound(const Matrix& g);

// w_j = normalized sum_i g_ij v_i; near-zero sums keep the previous vector
// (or e1) and are flagged.
Matrix optimal_w_for_v(const Matrix& g, const Matrix& v, const Matrix* previous_w = nullptr,
                       std::vector<int>* degenerate_columns = nullptr);

struct SeesawResult {
  int dprime = 0;
  double value = 0;
  VectorStrategy strategy;
  int restarts = 0;
  std::vector<int> iterations_per_restart;
  bool converged = false;  // convergence of the restart that produced `value`
  bool heuristic_lower_bound = true;
};

SeesawResult dimensional_bound(const Matrix& g, int dprime, int restarts, std::uint64_t seed,
                               std::vector<std::vector<double>>* halfstep_trace = nullptr);

// See-saw at d' = min(M1,M2)+2 (clamped to M1+M2), enough in practice for the
// unconstrained quantum value of this matrix class.
SeesawResult full_quantum_value(const Matrix& g, int restarts, std::uint64_t seed);

}  // namespace bell
