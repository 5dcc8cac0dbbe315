#include "bounds.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>

namespace bell {

long enumeration_budget() {
  const char* env = std::getenv("BELL_MAX_ENUM");
  if (env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
  }
  return 24;
}

namespace {

std::vector<int> gray_signs(std::uint64_t counter, int m) {
  // counter indexes the Gray sequence over signs 2..m; the first sign is +1
  std::uint64_t gray = counter ^ (counter >> 1);
  std::vector<int> a(m, 1);
  for (int i = 0; i + 1 < m; ++i)
    if ((gray >> i) & 1ull) a[i + 1] = -1;
  return a;
}

}  // namespace

ClassicalBound classical_bound(const Matrix& g, long budget) {
  validate_matrix(g);
  if (budget < 0) budget = enumeration_budget();
  const bool transposed = g.rows() > g.cols();
  Matrix gw = transposed ? g.transpose() : g;
  const int m = static_cast<int>(gw.rows());
  const int n = static_cast<int>(gw.cols());
  if (m > budget)
    throw budget_error("enumeration too large: min(M1,M2)=" + std::to_string(m) + " exceeds budget " +
                           std::to_string(budget) + "; set BELL_MAX_ENUM=" + std::to_string(m) + " or higher",
                       m);

  Eigen::RowVectorXd colsums = gw.colwise().sum();
  std::vector<int> a(m, 1);
  double best = colsums.cwiseAbs().sum();
  std::uint64_t best_counter = 0;
  const std::uint64_t total = 1ull << (m - 1);
  for (std::uint64_t k = 1; k < total; ++k) {
    const int flip = std::countr_zero(k) + 1;
    a[flip] = -a[flip];
    colsums += (2.0 * a[flip]) * gw.row(flip);
    if ((k & 0xffff) == 0) {
      // periodic exact refresh against float drift
      colsums.setZero();
      for (int i = 0; i < m; ++i) colsums += a[i] * gw.row(i);
    }
    const double value = colsums.cwiseAbs().sum();
    if (value > best) {
      best = value;
      best_counter = k;
    }
  }

  ClassicalBound out;
  std::vector<int> abest = gray_signs(best_counter, m);
  Eigen::RowVectorXd fresh = Eigen::RowVectorXd::Zero(n);
  for (int i = 0; i < m; ++i) fresh += abest[i] * gw.row(i);
  out.B = fresh.cwiseAbs().sum();
  std::vector<int> bbest(n, 1);
  for (int j = 0; j < n; ++j) bbest[j] = fresh(j) >= 0 ? 1 : -1;
  out.a1 = transposed ? bbest : abest;
  out.a2 = transposed ? abest : bbest;
  return out;
}

double tsirelson_bound(const Matrix& g) {
  SingularDecomposition dec = svd(g);
  return dec.top * std::sqrt(double(g.rows()) * double(g.cols()));
}

Matrix optimal_w_for_v(const Matrix& g, const Matrix& v, const Matrix* previous_w,
                       std::vector<int>* degenerate_columns) {
  if (v.rows() != g.rows()) throw error("optimal_w_for_v: v has wrong number of rows");
  Matrix sums = g.transpose() * v;  // M2 x dprime
  Matrix w(sums.rows(), sums.cols());
  if (degenerate_columns) degenerate_columns->clear();
  for (Eigen::Index j = 0; j < sums.rows(); ++j) {
    const double norm = sums.row(j).norm();
    if (norm <= 1e-12) {
      if (previous_w && previous_w->rows() == w.rows() && previous_w->cols() == w.cols())
        w.row(j) = previous_w->row(j);
      else {
        w.row(j).setZero();
        w(j, 0) = 1.0;
      }
      if (degenerate_columns) degenerate_columns->push_back(static_cast<int>(j));
    } else {
      w.row(j) = sums.row(j) / norm;
    }
  }
  return w;
}

SeesawResult dimensional_bound(const Matrix& g, int dprime, int restarts, std::uint64_t seed,
                               std::vector<std::vector<double>>* halfstep_trace) {
  validate_matrix(g);
  if (dprime < 1) throw error("dimensional_bound: d' must be >= 1");
  if (restarts < 1) throw error("dimensional_bound: restarts must be >= 1");
  const int m1 = static_cast<int>(g.rows());
  const int m2 = static_cast<int>(g.cols());
  const Matrix gt = g.transpose();

  SeesawResult best;
  best.dprime = dprime;
  best.restarts = restarts;
  best.value = -1;
  if (halfstep_trace) halfstep_trace->clear();

  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix v(m1, dprime);
    for (int i = 0; i < m1; ++i) {
      for (int k = 0; k < dprime; ++k) v(i, k) = gauss(rng);
      const double norm = v.row(i).norm();
      if (norm <= 1e-12) {
        v.row(i).setZero();
        v(i, 0) = 1.0;
      } else {
        v.row(i) /= norm;
      }
    }
    Matrix w(m2, dprime);
    w.setZero();
    std::vector<double> steps;
    double value = -1;
    bool converged = false;
    int it = 0;
    for (; it < 10000; ++it) {
      w = optimal_w_for_v(g, v, &w);
      const double after_w = (g.array() * (v * w.transpose()).array()).sum();
      steps.push_back(after_w);
      v = optimal_w_for_v(gt, w, &v);
      const double after_v = (g.array() * (v * w.transpose()).array()).sum();
      steps.push_back(after_v);
      if (value >= 0 && after_v - value < 1e-10) {
        value = after_v;
        converged = true;
        break;
      }
      value = after_v;
    }
    best.iterations_per_restart.push_back(it + 1);
    if (halfstep_trace) halfstep_trace->push_back(std::move(steps));
    if (value > best.value) {
      best.value = value;
      best.strategy.dprime = dprime;
      best.strategy.v = v;
      best.strategy.w = w;
      best.converged = converged;
    }
  }
  return best;
}

SeesawResult full_quantum_value(const Matrix& g, int restarts, std::uint64_t seed) {
  const int s = static_cast<int>(std::min(g.rows(), g.cols()));
  const int cap = static_cast<int>(g.rows() + g.cols());
  return dimensional_bound(g, std::min(s + 2, cap), restarts, seed);
}

}  // namespace bell
