#pragma once

#include "core.hpp"

namespace bell {

struct TightnessCertificate {
  bool tight = false;
  int d = 0;
  Matrix alpha;  // d x dprime_min when tight
  Matrix gram;   // d x d, Q = alpha alpha^T
  int dprime_min = 0;
  double residual = 0;
  std::string method = "none";  // identity-candidate | gram-solve | none
  bool requires_larger_dprime = false;
};

// The M1+M2 vectors in R^d whose squared norms under Q must equal 1: rows of
// the top-block of V and rows of the top-block of W scaled by sqrt(M2/M1).
Matrix constraint_rows(const SingularDecomposition& dec);

// Stage 1: equal row norms give alpha proportional to the identity.
// Stage 2: least-squares solve of the linear system in Q with a PSD check.
TightnessCertificate certify_rows(const Matrix& rows, int d);
TightnessCertificate gram_solve_rows(const Matrix& rows, int d);

// Runs certify_rows on g's decomposition; on failure retries with the
// degeneracy widened to 1e-6 relative, since the bound can be tight for a
// larger d.
TightnessCertificate certify(const Matrix& g, int dprime_max = -1, double degeneracy_tol = 1e-8);

// Builds the strategy of a tight certificate: v_i = alpha^T V-row,
// w_j = sqrt(M2/M1) alpha^T W-row.
VectorStrategy certificate_strategy(const SingularDecomposition& dec, const TightnessCertificate& cert);

// Lower bound on the vector dimension d' needed to realize the bound:
// exact rank-1 feasibility of |r_k^T q| = 1 decides between 1 and >=2; when
// the linear system determines Q uniquely its rank is also forced.
int min_dimension(const TightnessCertificate& cert, const Matrix& rows);

}  // namespace bell
