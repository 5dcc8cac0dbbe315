#pragma once

#include "core.hpp"

#include <complex>

namespace bell {

Matrix chsh_matrix();
Matrix gisin_matrix(int m);

Matrix fishburn_reeds_factor(int d);  // d(d-1) x d, rows e_j - e_i and e_j + e_i per pair i < j
Matrix fishburn_reeds_matrix(int d);  // factor * factor^T - (4/3) * identity

Matrix rotated_factor();  // the fixed 6x3 block of the rotated family
Matrix rotated_matrix(double phi, double theta, double psi);

Matrix d6_1_matrix();
Matrix d6_1_optimized_matrix();

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

struct TwoQubitObservablePair {
  Eigen::Vector3d bloch_a, bloch_b;
  Matrix2c operator_a;  // v . pauli
  Matrix2c operator_b;  // (w . pauli)^T
};

TwoQubitObservablePair bloch_observables(const Eigen::Vector3d& v, const Eigen::Vector3d& w);

// tr(rho (A (x) B)) for rho the projector onto (|00> + |11>)/sqrt(2)
double phi_plus_expectation(const TwoQubitObservablePair& pair);

enum class ScanAxis { phi = 0, theta = 1, psi = 2 };

struct ScanPoint {
  double angle;
  double q_over_b;
};

// Fixes g at the design angles and sweeps one axis of the actual observables;
// the quantum value is accumulated through the two-qubit operators.
std::vector<ScanPoint> rotation_scan(double phi, double theta, double psi, ScanAxis axis, int steps);

}  // namespace bell
