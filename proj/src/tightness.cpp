#include "tightness.hpp"

#include <cmath>

namespace bell {

namespace {

int gram_unknowns(int d) { return d * (d + 1) / 2; }

Matrix quadratic_design(const Matrix& rows, int d) {
  // r^T Q r = 1 is linear in the upper triangle of Q
  const int m = static_cast<int>(rows.rows());
  Matrix A(m, gram_unknowns(d));
  for (int k = 0; k < m; ++k) {
    int col = 0;
    for (int a = 0; a < d; ++a) {
      for (int b = a; b < d; ++b) {
        A(k, col++) = (a == b) ? rows(k, a) * rows(k, a) : 2.0 * rows(k, a) * rows(k, b);
      }
    }
  }
  return A;
}

Matrix unpack_gram(const Vector& x, int d) {
  Matrix q(d, d);
  int col = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      q(a, b) = x(col);
      q(b, a) = x(col);
      ++col;
    }
  return q;
}

double max_norm_residual(const Matrix& rows, const Matrix& q) {
  double worst = 0;
  for (Eigen::Index k = 0; k < rows.rows(); ++k)
    worst = std::max(worst, std::abs(rows.row(k) * q * rows.row(k).transpose() - 1.0));
  return worst;
}

void finish_from_gram(TightnessCertificate& cert, const Matrix& rows, const Matrix& q) {
  cert.gram = q;
  cert.residual = max_norm_residual(rows, q);
  const double trace = q.trace();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q);
  const double psd_tol = 1e-8 * std::abs(trace);
  if (trace <= 0 || eig.eigenvalues()(0) < -psd_tol || cert.residual > 1e-8) {
    cert.tight = false;
    cert.dprime_min = 0;
    return;
  }
  const int d = static_cast<int>(q.rows());
  const double rank_tol = 1e-8 * trace;
  std::vector<int> keep;
  for (int k = d - 1; k >= 0; --k)
    if (eig.eigenvalues()(k) > rank_tol) keep.push_back(k);
  cert.alpha = Matrix(d, keep.size());
  for (size_t c = 0; c < keep.size(); ++c)
    cert.alpha.col(c) = eig.eigenvectors().col(keep[c]) * std::sqrt(std::max(eig.eigenvalues()(keep[c]), 0.0));
  cert.dprime_min = static_cast<int>(keep.size());
  cert.tight = true;
}

}  // namespace

Matrix constraint_rows(const SingularDecomposition& dec) {
  Matrix rows(dec.m1 + dec.m2, dec.d);
  rows.topRows(dec.m1) = dec.V.leftCols(dec.d);
  rows.bottomRows(dec.m2) = std::sqrt(double(dec.m2) / double(dec.m1)) * dec.W.leftCols(dec.d);
  return rows;
}

TightnessCertificate gram_solve_rows(const Matrix& rows, int d) {
  TightnessCertificate cert;
  cert.d = d;
  cert.method = "gram-solve";
  Matrix A = quadratic_design(rows, d);
  Vector b = Vector::Ones(rows.rows());
  Vector x = A.completeOrthogonalDecomposition().solve(b);
  finish_from_gram(cert, rows, unpack_gram(x, d));
  if (!cert.tight) cert.method = "none";
  return cert;
}

TightnessCertificate certify_rows(const Matrix& rows, int d) {
  Vector norms = rows.rowwise().norm();
  const double lo = norms.minCoeff(), hi = norms.maxCoeff();
  if (hi - lo <= 1e-9 && lo > 0) {
    TightnessCertificate cert;
    cert.d = d;
    cert.method = "identity-candidate";
    const double c = norms.mean();
    cert.alpha = Matrix::Identity(d, d) / c;
    cert.gram = Matrix::Identity(d, d) / (c * c);
    cert.residual = max_norm_residual(rows, cert.gram);
    cert.dprime_min = d;
    cert.tight = true;
    return cert;
  }
  return gram_solve_rows(rows, d);
}

TightnessCertificate certify(const Matrix& g, int dprime_max, double degeneracy_tol) {
  SingularDecomposition dec = svd(g, degeneracy_tol);
  TightnessCertificate cert = certify_rows(constraint_rows(dec), dec.d);
  if (!cert.tight) {
    SingularDecomposition wide = svd(g, 1e-6);
    if (wide.d > dec.d) {
      TightnessCertificate retry = certify_rows(constraint_rows(wide), wide.d);
      if (retry.tight) cert = retry;
    }
  }
  if (dprime_max >= 1 && cert.tight && cert.dprime_min > dprime_max) cert.requires_larger_dprime = true;
  return cert;
}

VectorStrategy certificate_strategy(const SingularDecomposition& dec, const TightnessCertificate& cert) {
  if (!cert.tight) throw error("certificate is not tight; no strategy to build");
  const int d = cert.d;
  VectorStrategy s;
  s.dprime = static_cast<int>(cert.alpha.cols());
  s.v = dec.V.leftCols(d) * cert.alpha;
  s.w = std::sqrt(double(dec.m2) / double(dec.m1)) * dec.W.leftCols(d) * cert.alpha;
  return s;
}

int min_dimension(const TightnessCertificate& cert, const Matrix& rows) {
  if (!cert.tight) throw error("min_dimension requires a tight certificate");
  const int d = static_cast<int>(rows.cols());
  const int m = static_cast<int>(rows.rows());

  // rank-1 feasibility: a single vector q with |r_k^T q| = 1 for every row
  Eigen::ColPivHouseholderQR<Matrix> qr(rows.transpose());
  const int r = static_cast<int>(qr.rank());
  int rank1_bound = 2;
  if (r <= 20) {
    Matrix basis(r, d);
    for (int k = 0; k < r; ++k) basis.row(k) = rows.row(qr.colsPermutation().indices()(k));
    const auto solver = basis.completeOrthogonalDecomposition();
    const std::uint64_t patterns = 1ull << (r - 1);
    for (std::uint64_t p = 0; p < patterns && rank1_bound == 2; ++p) {
      Vector rhs(r);
      rhs(0) = 1.0;
      for (int k = 1; k < r; ++k) rhs(k) = ((p >> (k - 1)) & 1ull) ? -1.0 : 1.0;
      Vector q = solver.solve(rhs);
      bool ok = true;
      for (int k = 0; k < m && ok; ++k)
        ok = std::abs(std::abs(rows.row(k).dot(q)) - 1.0) <= 1e-8;
      if (ok) rank1_bound = 1;
    }
  } else {
    rank1_bound = 1;  // too large to decide; claim nothing
  }

  // when the linear system pins Q down uniquely, its rank is forced as well
  int unique_bound = 1;
  Matrix A = quadratic_design(rows, d);
  Eigen::ColPivHouseholderQR<Matrix> aqr(A);
  if (static_cast<int>(aqr.rank()) == gram_unknowns(d)) unique_bound = cert.dprime_min;

  return std::max(rank1_bound, unique_bound);
}

}  // namespace bell
