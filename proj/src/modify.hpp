#pragma once

#include "core.hpp"
#include "tightness.hpp"

#include <optional>

namespace bell {

struct TwistSpec {
  std::vector<double> angles_r1, angles_r2, angles_r3;
  bool reflect_r1 = false, reflect_r2 = false, reflect_r3 = false;
};

struct ShiftSpec {
  std::vector<int> sigma;        // d signs, +-1
  double lambda1 = 0;
  std::vector<double> lambdas;   // one per singular value beyond the top block
};

struct ShiftOutcome {
  Matrix g;
  bool forced = false;  // admissibility was overridden and g was re-certified
  TightnessCertificate recertification;
};

// g' = V (R1 (+) R2) S (1 (+) R3) W^T. R1 rotates inside the top singular
// subspace and must commute with alpha; without an explicit alpha this is
// enforced by requiring the identity-candidate certificate.
Matrix twist_blocks(const Matrix& g, const Matrix& r1, const Matrix& r2, const Matrix& r3,
                    const Matrix* alpha = nullptr, double degeneracy_tol = 1e-8);
Matrix twist(const Matrix& g, const TwistSpec& spec, const Matrix* alpha = nullptr,
             double degeneracy_tol = 1e-8);

bool shift_admissible(const SingularDecomposition& dec, const ShiftSpec& spec);

// g' = V S' W^T with S' = diag(sigma_i (S_ii + lambda1), ..., S_ii + lambda_i, ...).
// Inadmissible specs are rejected unless force is set, in which case the
// result is re-certified and the certificate attached.
ShiftOutcome shift(const Matrix& g, const ShiftSpec& spec, bool force = false,
                   double degeneracy_tol = 1e-8);

// g' = g + lambda * identity, for square g whose left and right singular
// vectors agree up to column signs.
Matrix fishburn_reeds_diagonal(const Matrix& g, double lambda);

}  // namespace bell
