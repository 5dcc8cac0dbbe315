#include "catalog.hpp"

#include "bounds.hpp"

#include <cmath>

namespace bell {

Matrix chsh_matrix() {
  Matrix g(2, 2);
  g << 1, 1, 1, -1;
  return g;
}

Matrix gisin_matrix(int m) {
  if (m < 2) throw error("gisin_matrix: need at least 2 settings");
  Matrix g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = (j <= i) ? 1.0 : -1.0;
  return g;
}

Matrix fishburn_reeds_factor(int d) {
  if (d < 2) throw error("fishburn_reeds_factor: need d >= 2");
  Matrix v = Matrix::Zero(d * (d - 1), d);
  int r = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      v(r, i) = -1;
      v(r, j) = 1;
      ++r;
      v(r, i) = 1;
      v(r, j) = 1;
      ++r;
    }
  }
  Matrix gram = v.transpose() * v;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const double want = (a == b) ? 2.0 * (d - 1) : 0.0;
      if (gram(a, b) != want) throw error("fishburn_reeds_factor: column structure broken");
    }
  return v;
}

Matrix fishburn_reeds_matrix(int d) {
  Matrix v = fishburn_reeds_factor(d);
  return v * v.transpose() - (4.0 / 3.0) * Matrix::Identity(v.rows(), v.rows());
}

Matrix rotated_factor() {
  Matrix f(6, 3);
  const double h = 0.5, q = 1.0 / std::sqrt(2.0);
  f << h, h, 0,
      -h, h, 0,
       0, 0, q,
       q, 0, 0,
       0, q, 0,
       0, 0, q;
  return f;
}

Matrix rotated_matrix(double phi, double theta, double psi) {
  return rotated_factor() * rotation_rpy(phi, theta, psi);
}

Matrix d6_1_matrix() {
  Matrix g(6, 6);
  g << 1, 0, 1, 0, 1, 1,
       0, 1, 0, 1, 1, -1,
       1, 0, 1, 1, -1, 0,
       0, 1, 1, -1, 0, -1,
       1, 1, -1, 0, -1, 0,
       1, -1, 0, -1, 0, -1;
  return g;
}

Matrix d6_1_optimized_matrix() {
  Matrix g(6, 6);
  g << -0.350174, 0.323788, 0.344416, -0.368076, -0.299221, 0.31404,
       -0.472675, -0.357842, -0.182589, -0.31764, -0.377403, 0.215713,
       -0.218507, -0.300642, -0.525576, -0.185735, 0.38952, 0.279595,
       0.39405, 0.286377, -0.315566, -0.315986, 0.296399, 0.391561,
       0.303896, 0.37589, -0.193803, -0.514786, -0.310722, -0.200436,
       0.190791, -0.355309, -0.321679, -0.184563, -0.326631, -0.511833;
  return g;
}

TwoQubitObservablePair bloch_observables(const Eigen::Vector3d& v, const Eigen::Vector3d& w) {
  if (std::abs(v.norm() - 1.0) > 1e-8 || std::abs(w.norm() - 1.0) > 1e-8)
    throw error("bloch_observables: vectors must be unit length");
  using namespace std::complex_literals;
  TwoQubitObservablePair pair;
  pair.bloch_a = v;
  pair.bloch_b = w;
  pair.operator_a << v.z(), v.x() - 1i * v.y(),
                     v.x() + 1i * v.y(), -v.z();
  Matrix2c wb;
  wb << w.z(), w.x() - 1i * w.y(),
        w.x() + 1i * w.y(), -w.z();
  pair.operator_b = wb.transpose();
  return pair;
}

double phi_plus_expectation(const TwoQubitObservablePair& pair) {
  Matrix4c kron = Matrix4c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      kron.block<2, 2>(2 * a, 2 * b) = pair.operator_a(a, b) * pair.operator_b;
  Eigen::Vector4cd phi;
  phi << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  Matrix4c rho = phi * phi.adjoint();
  return (rho * kron).trace().real();
}

std::vector<ScanPoint> rotation_scan(double phi, double theta, double psi, ScanAxis axis, int steps) {
  if (steps < 2) throw error("rotation_scan: need at least 2 steps");
  const Matrix g = rotated_matrix(phi, theta, psi);
  const double b = classical_bound(g).B;
  const Matrix f = rotated_factor();

  std::vector<Eigen::Vector3d> v(6);
  for (int i = 0; i < 6; ++i) v[i] = std::sqrt(2.0) * f.row(i).transpose();

  std::vector<ScanPoint> series;
  series.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double a = 2.0 * M_PI * k / steps;
    double angles[3] = {phi, theta, psi};
    angles[static_cast<int>(axis)] = a;
    const Matrix r = rotation_rpy(angles[0], angles[1], angles[2]);
    double q = 0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (g(i, j) == 0.0) continue;
        const Eigen::Vector3d w = r.col(j);
        q += g(i, j) * phi_plus_expectation(bloch_observables(v[i], w));
      }
    }
    series.push_back({a, q / b});
  }
  return series;
}

}  // namespace bell
