#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bell {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an exact enumeration would exceed the configured budget.
struct budget_error : error {
  long required;
  budget_error(const std::string& msg, long req) : error(msg), required(req) {}
};

void validate_matrix(const Matrix& g);

Matrix parse_csv(const std::string& text);
Matrix load_csv(const std::string& path);
std::string to_csv(const Matrix& g);

struct SingularDecomposition {
  int m1 = 0, m2 = 0;
  Matrix V;      // m1 x m1, columns are left singular vectors
  Matrix W;      // m2 x m2, columns are right singular vectors
  Vector sigma;  // min(m1,m2) values, descending
  double top = 0;
  int d = 1;  // degeneracy of the top singular value
  int s = 0;  // min(m1,m2)

  Matrix s_full() const;      // m1 x m2 diagonal embedding of sigma
  Matrix reconstruct() const; // V * s_full * W^T
};

SingularDecomposition svd(const Matrix& g, double degeneracy_tol = 1e-8);

Matrix rotation_rpy(double phi, double theta, double psi);

// Product of Givens rotations over index pairs in lexicographic order,
// optionally composed with diag(-1,1,...,1). Covers O(n).
Matrix orthogonal_from_angles(int n, const std::vector<double>& angles, bool reflect);

inline int angle_count(int n) { return n * (n - 1) / 2; }

struct VectorStrategy {
  int dprime = 0;
  Matrix v;  // m1 x dprime, each row a unit vector
  Matrix w;  // m2 x dprime
};

double strategy_value(const Matrix& g, const VectorStrategy& s);

}  // namespace bell
