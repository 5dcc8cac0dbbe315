#include "modify.hpp"

#include <cmath>

namespace bell {

namespace {

void check_block(const Matrix& r, int n, const char* name) {
  if (r.rows() != n || r.cols() != n)
    throw error(std::string("twist: ") + name + " must be " + std::to_string(n) + "x" + std::to_string(n));
  if (n > 0 && (r.transpose() * r - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw error(std::string("twist: ") + name + " is not orthogonal");
}

}  // namespace

Matrix twist_blocks(const Matrix& g, const Matrix& r1, const Matrix& r2, const Matrix& r3,
                    const Matrix* alpha, double degeneracy_tol) {
  SingularDecomposition dec = svd(g, degeneracy_tol);
  const int d = dec.d;
  check_block(r1, d, "R1");
  check_block(r2, dec.m1 - d, "R2");
  check_block(r3, dec.m2 - d, "R3");

  TightnessCertificate cert = certify(g, -1, degeneracy_tol);
  if (!cert.tight) throw error("twist: matrix is not certified tight");
  if (alpha) {
    if (alpha->rows() != d || alpha->cols() != d)
      throw error("twist: explicit alpha must be square of size d=" + std::to_string(d));
    const double comm = (r1 * (*alpha) - (*alpha) * r1).cwiseAbs().maxCoeff();
    if (comm > 1e-9)
      throw error("twist: R1 does not commute with alpha (commutator max-norm " + std::to_string(comm) + ")");
  } else if (cert.method != "identity-candidate") {
    throw error("twist: certificate alpha is not proportional to the identity; supply alpha explicitly");
  }

  Matrix left(dec.m1, dec.m1);
  left.leftCols(d) = dec.V.leftCols(d) * r1;
  if (dec.m1 > d) left.rightCols(dec.m1 - d) = dec.V.rightCols(dec.m1 - d) * r2;
  Matrix right(dec.m2, dec.m2);
  right.leftCols(d) = dec.W.leftCols(d);
  if (dec.m2 > d) right.rightCols(dec.m2 - d) = dec.W.rightCols(dec.m2 - d) * r3.transpose();
  return left * dec.s_full() * right.transpose();
}

Matrix twist(const Matrix& g, const TwistSpec& spec, const Matrix* alpha, double degeneracy_tol) {
  SingularDecomposition dec = svd(g, degeneracy_tol);
  Matrix r1 = orthogonal_from_angles(dec.d, spec.angles_r1, spec.reflect_r1);
  Matrix r2 = orthogonal_from_angles(dec.m1 - dec.d, spec.angles_r2, spec.reflect_r2);
  Matrix r3 = orthogonal_from_angles(dec.m2 - dec.d, spec.angles_r3, spec.reflect_r3);
  return twist_blocks(g, r1, r2, r3, alpha, degeneracy_tol);
}

bool shift_admissible(const SingularDecomposition& dec, const ShiftSpec& spec) {
  const double top = std::abs(dec.top + spec.lambda1);
  for (int i = dec.d; i < dec.s; ++i)
    if (!(std::abs(spec.lambdas[i - dec.d] + dec.sigma(i)) < top - 1e-12)) return false;
  return true;
}

ShiftOutcome shift(const Matrix& g, const ShiftSpec& spec, bool force, double degeneracy_tol) {
  SingularDecomposition dec = svd(g, degeneracy_tol);
  if (static_cast<int>(spec.sigma.size()) != dec.d)
    throw error("shift: sigma must have one sign per degenerate top value (need " + std::to_string(dec.d) + ")");
  for (int s : spec.sigma)
    if (s != 1 && s != -1) throw error("shift: sigma entries must be +1 or -1");
  if (static_cast<int>(spec.lambdas.size()) != dec.s - dec.d)
    throw error("shift: lambdas must have " + std::to_string(dec.s - dec.d) + " entries");
  if (std::abs(dec.top + spec.lambda1) <= 1e-12 * dec.top)
    throw error("shift: top singular value would vanish (degenerate scaling)");

  const bool admissible = shift_admissible(dec, spec);
  if (!admissible && !force)
    throw error(
        "shift: inadmissible, a shifted lower singular value reaches the top block "
        "(|lambda_i + S_ii| must stay strictly below |top + lambda1|); "
        "pass force to re-certify the result instead");

  Matrix sprime = Matrix::Zero(dec.m1, dec.m2);
  for (int i = 0; i < dec.d; ++i) sprime(i, i) = spec.sigma[i] * (dec.sigma(i) + spec.lambda1);
  for (int i = dec.d; i < dec.s; ++i) sprime(i, i) = dec.sigma(i) + spec.lambdas[i - dec.d];

  ShiftOutcome out;
  out.g = dec.V * sprime * dec.W.transpose();
  if (!admissible) {
    out.forced = true;
    out.recertification = certify(out.g, -1, degeneracy_tol);
  }
  return out;
}

Matrix fishburn_reeds_diagonal(const Matrix& g, double lambda) {
  if (g.rows() != g.cols()) throw error("diagonal shift requires a square matrix");
  SingularDecomposition dec = svd(g);
  for (int k = 0; k < dec.s; ++k) {
    const double dot = dec.V.col(k).dot(dec.W.col(k));
    if (std::abs(std::abs(dot) - 1.0) > 1e-8)
      throw error("diagonal shift requires left and right singular vectors to agree up to sign");
  }
  return g + lambda * Matrix::Identity(g.rows(), g.cols());
}

}  // namespace bell
