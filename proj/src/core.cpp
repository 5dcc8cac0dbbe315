#include "core.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bell {

void validate_matrix(const Matrix& g) {
  if (g.rows() < 1 || g.cols() < 1) throw error("matrix must have at least one row and one column");
  if (!g.allFinite()) throw error("matrix contains non-finite entries");
  if (g.cwiseAbs().maxCoeff() == 0.0) throw error("matrix is identically zero");
}

Matrix parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = line.find_first_not_of(" \t") == std::string::npos;
    if (blank) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    int col = 0;
    while (std::getline(ls, cell, ',')) {
      ++col;
      size_t pos = 0;
      double value = 0;
      try {
        value = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw error("CSV parse error at line " + std::to_string(lineno) + ", column " + std::to_string(col) +
                    ": '" + cell + "' is not a number");
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size())
        throw error("CSV parse error at line " + std::to_string(lineno) + ", column " + std::to_string(col) +
                    ": trailing characters in '" + cell + "'");
      if (!std::isfinite(value))
        throw error("CSV parse error at line " + std::to_string(lineno) + ", column " + std::to_string(col) +
                    ": non-finite value");
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw error("CSV parse error at line " + std::to_string(lineno) + ": expected " +
                  std::to_string(rows.front().size()) + " columns, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw error("CSV parse error: no data rows");
  Matrix g(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) g(i, j) = rows[i][j];
  validate_matrix(g);
  return g;
}

Matrix load_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw error("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_csv(buf.str());
}

std::string to_csv(const Matrix& g) {
  std::string out;
  char cell[64];
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      std::snprintf(cell, sizeof cell, "%.17g", g(i, j));
      out += cell;
      out += (j + 1 < g.cols()) ? "," : "\n";
    }
  }
  return out;
}

Matrix SingularDecomposition::s_full() const {
  Matrix S = Matrix::Zero(m1, m2);
  for (int k = 0; k < s; ++k) S(k, k) = sigma(k);
  return S;
}

Matrix SingularDecomposition::reconstruct() const { return V * s_full() * W.transpose(); }

SingularDecomposition svd(const Matrix& g, double degeneracy_tol) {
  validate_matrix(g);
  if (degeneracy_tol <= 0) throw error("degeneracy tolerance must be positive");
  Eigen::JacobiSVD<Matrix> solver(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SingularDecomposition dec;
  dec.m1 = static_cast<int>(g.rows());
  dec.m2 = static_cast<int>(g.cols());
  dec.V = solver.matrixU();
  dec.W = solver.matrixV();
  dec.sigma = solver.singularValues();
  dec.s = static_cast<int>(dec.sigma.size());

  // Deterministic orientation: the first entry of magnitude > 1e-10 in each
  // left singular vector is made positive; the sign moves into the paired
  // right vector. Unpaired columns (beyond min(m1,m2)) get the same rule
  // applied to themselves.
  for (int k = 0; k < dec.m1; ++k) {
    for (int i = 0; i < dec.m1; ++i) {
      if (std::abs(dec.V(i, k)) > 1e-10) {
        if (dec.V(i, k) < 0) {
          dec.V.col(k) = -dec.V.col(k);
          if (k < dec.s) dec.W.col(k) = -dec.W.col(k);
        }
        break;
      }
    }
  }
  for (int k = dec.s; k < dec.m2; ++k) {
    for (int j = 0; j < dec.m2; ++j) {
      if (std::abs(dec.W(j, k)) > 1e-10) {
        if (dec.W(j, k) < 0) dec.W.col(k) = -dec.W.col(k);
        break;
      }
    }
  }

  dec.top = dec.sigma(0);
  dec.d = 0;
  for (int k = 0; k < dec.s; ++k)
    if (dec.top - dec.sigma(k) <= degeneracy_tol * dec.top) ++dec.d;
  return dec;
}

Matrix rotation_rpy(double phi, double theta, double psi) {
  Matrix a(3, 3), b(3, 3), c(3, 3);
  a << 1, 0, 0,
       0, std::cos(phi), std::sin(phi),
       0, -std::sin(phi), std::cos(phi);
  b << std::cos(theta), 0, -std::sin(theta),
       0, 1, 0,
       std::sin(theta), 0, std::cos(theta);
  c << std::cos(psi), std::sin(psi), 0,
       -std::sin(psi), std::cos(psi), 0,
       0, 0, 1;
  return a * b * c;
}

Matrix orthogonal_from_angles(int n, const std::vector<double>& angles, bool reflect) {
  if (n < 0) throw error("orthogonal_from_angles: negative dimension");
  if (static_cast<int>(angles.size()) != angle_count(n))
    throw error("orthogonal_from_angles: expected " + std::to_string(angle_count(n)) + " angles for n=" +
                std::to_string(n) + ", got " + std::to_string(angles.size()));
  Matrix r = Matrix::Identity(n, n);
  int idx = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      double ct = std::cos(angles[idx]), st = std::sin(angles[idx]);
      ++idx;
      // right-multiply by the Givens rotation in the (p,q) plane
      Vector cp = r.col(p), cq = r.col(q);
      r.col(p) = ct * cp + st * cq;
      r.col(q) = -st * cp + ct * cq;
    }
  }
  if (reflect && n > 0) r.col(0) = -r.col(0);
  return r;
}

double strategy_value(const Matrix& g, const VectorStrategy& s) {
  if (s.v.rows() != g.rows() || s.w.rows() != g.cols() || s.v.cols() != s.w.cols())
    throw error("strategy dimensions do not match the coefficient matrix");
  return (g.array() * (s.v * s.w.transpose()).array()).sum();
}

}  // namespace bell
