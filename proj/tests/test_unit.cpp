#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include "bounds.hpp"
#include "catalog.hpp"
#include "core.hpp"
#include "modify.hpp"
#include "optimize.hpp"
#include "report.hpp"
#include "repro.hpp"
#include "tightness.hpp"

using namespace bell;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
const double kSqrt2 = std::sqrt(2.0);

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Matrix random_matrix(int r, int c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix g(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) g(i, j) = u(rng);
  return g;
}

double naive_classical(const Matrix& g) {
  const int m1 = int(g.rows()), m2 = int(g.cols());
  double best = -1e300;
  for (long a = 0; a < (1L << m1); ++a)
    for (long b = 0; b < (1L << m2); ++b) {
      double s = 0;
      for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j)
          s += g(i, j) * ((a >> i) & 1 ? 1 : -1) * ((b >> j) & 1 ? 1 : -1);
      best = std::max(best, s);
    }
  return best;
}

}  // namespace

TEST_CASE("csv parsing round trips and reports positions") {
  Matrix g = parse_csv("1,2\n3,-4.5\n");
  CHECK(g.rows() == 2);
  CHECK(g(1, 1) == -4.5);
  Matrix back = parse_csv(to_csv(g));
  CHECK(max_abs_diff(g, back) == 0.0);

  CHECK_THROWS_WITH_AS(parse_csv("1,2\n3\n"), doctest::Contains("line 2"), error);
  CHECK_THROWS_WITH_AS(parse_csv("1,x\n"), doctest::Contains("column 2"), error);
  CHECK_THROWS_AS(parse_csv(""), error);
  CHECK_THROWS_WITH_AS(parse_csv("0,0\n0,0\n"), doctest::Contains("zero"), error);
}

TEST_CASE("svd fixes signs, finds degeneracy, reconstructs") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix g = random_matrix(4 + trial % 3, 3 + trial % 4, rng);
    SingularDecomposition dec = svd(g);
    CHECK(max_abs_diff(dec.reconstruct(), g) < 1e-12);
    CHECK(dec.top == doctest::Approx(dec.sigma(0)));
    CHECK((dec.V * dec.V.transpose() - Matrix::Identity(dec.m1, dec.m1)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((dec.W * dec.W.transpose() - Matrix::Identity(dec.m2, dec.m2)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  CHECK(svd(gisin_matrix(3)).d == 2);
  CHECK(svd(chsh_matrix()).d == 2);
  CHECK(svd(d6_1_matrix()).d == 4);
  CHECK(svd(rotated_matrix(0.3, 1.2, 2.1)).d == 3);
}

TEST_CASE("rotation matrices have the fixed axis layouts") {
  CHECK(max_abs_diff(rotation_rpy(0, 0, 0), Matrix::Identity(3, 3)) == 0.0);
  Matrix r = rotation_rpy(0.3, 0.0, 0.0);
  CHECK(r(0, 0) == 1.0);
  CHECK(r(1, 2) == doctest::Approx(std::sin(0.3)));
  r = rotation_rpy(0.0, 0.4, 0.0);
  CHECK(r(1, 1) == 1.0);
  CHECK(r(0, 2) == doctest::Approx(-std::sin(0.4)));
  r = rotation_rpy(0.0, 0.0, 0.5);
  CHECK(r(2, 2) == 1.0);
  CHECK(r(0, 1) == doctest::Approx(std::sin(0.5)));
  Matrix full = rotation_rpy(0.3, 0.4, 0.5);
  CHECK(max_abs_diff(full, rotation_rpy(0.3, 0, 0) * rotation_rpy(0, 0.4, 0) *
                               rotation_rpy(0, 0, 0.5)) < 1e-15);
  CHECK((full * full.transpose() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("orthogonal_from_angles covers O(n)") {
  Matrix r = orthogonal_from_angles(2, {kPi / 2}, false);
  Matrix expect(2, 2);
  expect << 0, -1, 1, 0;
  CHECK(max_abs_diff(r, expect) < 1e-15);

  std::vector<double> angles(angle_count(4));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  for (double& a : angles) a = u(rng);
  Matrix q = orthogonal_from_angles(4, angles, false);
  CHECK((q * q.transpose() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(q.determinant() == doctest::Approx(1.0));
  Matrix qr = orthogonal_from_angles(4, angles, true);
  CHECK(qr.determinant() == doctest::Approx(-1.0));
  CHECK(orthogonal_from_angles(0, {}, false).rows() == 0);
  CHECK_THROWS_AS(orthogonal_from_angles(3, {0.1}, false), error);
}

TEST_CASE("classical bound matches the sign-enumeration oracle") {
  CHECK(classical_bound(chsh_matrix()).B == 2.0);
  CHECK(classical_bound(gisin_matrix(3)).B == 5.0);
  CHECK(classical_bound(gisin_matrix(6)).B == 18.0);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + int(rng() % 5), c = 1 + int(rng() % 5);
    Matrix g = random_matrix(r, c, rng);
    ClassicalBound cb = classical_bound(g);
    CHECK(cb.B == doctest::Approx(naive_classical(g)).epsilon(1e-12));

    double recomputed = 0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) recomputed += g(i, j) * cb.a1[i] * cb.a2[j];
    CHECK(recomputed == doctest::Approx(cb.B).epsilon(1e-13));
    CHECK(cb.B > 0);
    CHECK(cb.B <= tsirelson_bound(g) + 1e-9);
  }
}

TEST_CASE("enumeration budget guards large inputs") {
  Matrix big = Matrix::Identity(25, 25);
  try {
    classical_bound(big);
    FAIL("expected budget error");
  } catch (const budget_error& e) {
    CHECK(e.required == 25);
    CHECK(std::string(e.what()).find("BELL_MAX_ENUM") != std::string::npos);
  }
  CHECK_NOTHROW(classical_bound(big, 25));
}

TEST_CASE("tsirelson bound via the top singular value") {
  CHECK(tsirelson_bound(chsh_matrix()) == doctest::Approx(2 * kSqrt2).epsilon(1e-12));
  for (int m = 2; m <= 8; ++m) {
    double norm = tsirelson_bound(gisin_matrix(m)) / m;
    CHECK(norm == doctest::Approx(1.0 / std::sin(kPi / (2 * m))).epsilon(1e-9));
  }
}

TEST_CASE("see-saw lower bound: d'=1 equals B, full dimension reaches T") {
  for (const Matrix& g : {chsh_matrix(), gisin_matrix(3)}) {
    SeesawResult one = dimensional_bound(g, 1, 30, 11);
    CHECK(one.value == doctest::Approx(classical_bound(g).B).epsilon(1e-10));
    CHECK(one.value == doctest::Approx(strategy_value(g, one.strategy)).epsilon(1e-10));
    SeesawResult full = full_quantum_value(g, 30, 11);
    CHECK(full.value <= tsirelson_bound(g) + 1e-9);
    CHECK(full.value == doctest::Approx(tsirelson_bound(g)).epsilon(1e-7));
  }
}

TEST_CASE("see-saw is monotone in d' and deterministic in the seed") {
  Matrix g = gisin_matrix(3);
  double prev = 0;
  for (int dp = 1; dp <= 3; ++dp) {
    double v = dimensional_bound(g, dp, 30, 5).value;
    CHECK(v >= prev - 1e-9);
    CHECK(v <= tsirelson_bound(g) + 1e-9);
    prev = v;
  }
  SeesawResult a = dimensional_bound(d6_1_matrix(), 3, 15, 9);
  SeesawResult b = dimensional_bound(d6_1_matrix(), 3, 15, 9);
  CHECK(a.value == b.value);
  CHECK(a.heuristic_lower_bound);
}

TEST_CASE("tightness certificates: identity candidate on catalog matrices") {
  struct Case {
    Matrix g;
    int d;
    double alpha_scale;
  };
  std::vector<Case> cases;
  cases.push_back({chsh_matrix(), 2, 1.0});
  cases.push_back({gisin_matrix(3), 2, std::sqrt(1.5)});
  cases.push_back({rotated_matrix(0.2, 0.9, 1.4), 3, kSqrt2});
  cases.push_back({d6_1_matrix(), 4, std::sqrt(1.5)});
  for (const Case& c : cases) {
    TightnessCertificate cert = certify(c.g);
    CHECK(cert.tight);
    CHECK(cert.method == "identity-candidate");
    CHECK(cert.d == c.d);
    CHECK(max_abs_diff(cert.alpha, c.alpha_scale * Matrix::Identity(c.d, c.d)) < 1e-9);
    SingularDecomposition dec = svd(c.g);
    VectorStrategy s = certificate_strategy(dec, cert);
    for (int i = 0; i < dec.m1; ++i) CHECK(s.v.row(i).norm() == doctest::Approx(1.0));
    for (int j = 0; j < dec.m2; ++j) CHECK(s.w.row(j).norm() == doctest::Approx(1.0));
    CHECK(strategy_value(c.g, s) == doctest::Approx(tsirelson_bound(c.g)).epsilon(1e-9));
  }
  for (int d = 2; d <= 5; ++d) CHECK(certify(fishburn_reeds_matrix(d)).tight);
}

TEST_CASE("tightness certificates reject non-members") {
  Matrix g(2, 2);
  g << 2, 0, 0, 1;
  TightnessCertificate cert = certify(g);
  CHECK_FALSE(cert.tight);
  CHECK(tsirelson_bound(g) > classical_bound(g).B + 0.5);
}

TEST_CASE("gram solving certifies anisotropic row systems") {
  Matrix rows(3, 2);
  rows << 0.5, 0, 0, 2.0, 0.3, 1.6;
  TightnessCertificate cert = certify_rows(rows, 2);
  CHECK(cert.tight);
  CHECK(cert.method == "gram-solve");
  Matrix expect(2, 2);
  expect << 4.0, 0, 0, 0.25;
  CHECK(max_abs_diff(cert.gram, expect) < 1e-9);
  CHECK(cert.residual < 1e-10);

  Matrix infeasible(2, 1);
  infeasible << 1.0, 2.0;
  CHECK_FALSE(certify_rows(infeasible, 1).tight);
}

TEST_CASE("min_dimension separates rank-1-achievable bounds") {
  SingularDecomposition dec = svd(chsh_matrix());
  TightnessCertificate cert = certify(chsh_matrix());
  CHECK(cert.dprime_min == 2);
  CHECK(min_dimension(cert, constraint_rows(dec)) == 2);

  Matrix triv(1, 1);
  triv << 1;
  SingularDecomposition tdec = svd(triv);
  TightnessCertificate tcert = certify(triv);
  CHECK(tcert.tight);
  CHECK(tcert.dprime_min == 1);
  CHECK(min_dimension(tcert, constraint_rows(tdec)) == 1);
}

TEST_CASE("twist preserves the Tsirelson bound and tightness") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  Matrix g = gisin_matrix(3);
  double T = tsirelson_bound(g);
  for (int k = 0; k < 100; ++k) {
    TwistSpec spec;
    spec.angles_r1 = {u(rng)};
    spec.reflect_r1 = (rng() & 1) != 0;
    Matrix gp = twist(g, spec);
    CHECK(std::abs(tsirelson_bound(gp) - T) <= 1e-9 * T);
    CHECK(certify(gp).tight);
  }
}

TEST_CASE("a twist of the 3x3 staircase changes the classical bound") {
  TwistSpec spec;
  spec.angles_r1 = {0.4};
  Matrix gp = twist(gisin_matrix(3), spec);
  double Bp = classical_bound(gp).B;
  CHECK(std::abs(Bp - 5.0) > 0.1);
  CHECK(tsirelson_bound(gp) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("twists compose: the double twist lies in the single-twist orbit") {
  Matrix g = chsh_matrix();
  SingularDecomposition dec = svd(g);
  TwistSpec s1, s2;
  s1.angles_r1 = {0.7};
  s2.angles_r1 = {1.1};
  Matrix g2 = twist(twist(g, s1), s2);
  Matrix block = dec.V.transpose() * g2 * dec.W * dec.s_full().inverse();
  CHECK((block * block.transpose() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
  Matrix direct = twist_blocks(g, block, Matrix(0, 0), Matrix(0, 0));
  CHECK(max_abs_diff(direct, g2) < 1e-9);
}

TEST_CASE("twist rejects bad blocks, non-commuting alpha, non-tight bases") {
  Matrix g = gisin_matrix(3);
  Matrix one = Matrix::Identity(1, 1);
  Matrix bad(2, 2);
  bad << 1, 1, 0, 1;
  CHECK_THROWS_WITH_AS(twist_blocks(g, bad, one, one), doctest::Contains("orthogonal"), error);

  Matrix r1 = orthogonal_from_angles(2, {0.4}, false);
  Matrix alpha(2, 2);
  alpha << 1, 0, 0, 2;
  CHECK_THROWS_WITH_AS(twist_blocks(g, r1, one, one, &alpha), doctest::Contains("commute"),
                       error);

  Matrix loose(2, 2);
  loose << 2, 0, 0, 1;
  TwistSpec spec;
  CHECK_THROWS_WITH_AS(twist(loose, spec), doctest::Contains("tight"), error);
}

TEST_CASE("shift scales T, flips signs, and enforces admissibility") {
  Matrix g = gisin_matrix(3);
  SingularDecomposition dec = svd(g);

  ShiftSpec spec;
  spec.sigma = {1, 1};
  spec.lambda1 = 0.5;
  spec.lambdas = {0.0};
  ShiftOutcome out = shift(g, spec);
  CHECK_FALSE(out.forced);
  CHECK(tsirelson_bound(out.g) ==
        doctest::Approx(tsirelson_bound(g) * (dec.top + 0.5) / dec.top).epsilon(1e-12));

  ShiftSpec flip = spec;
  flip.sigma = {1, -1};
  Vector diag(3);
  diag << dec.top + 0.5, -(dec.top + 0.5), dec.sigma(2);
  Matrix manual =
      dec.V.leftCols(3) * diag.asDiagonal() * dec.W.leftCols(3).transpose();
  CHECK(max_abs_diff(shift(g, flip).g, manual) < 1e-12);

  ShiftSpec bad = spec;
  bad.lambdas = {5.0};
  CHECK_THROWS_WITH_AS(shift(g, bad), doctest::Contains("force"), error);
  ShiftOutcome forced = shift(g, bad, true);
  CHECK(forced.forced);

  ShiftSpec wrong = spec;
  wrong.sigma = {1, 0};
  CHECK_THROWS_AS(shift(g, wrong), error);
}

TEST_CASE("aligned-diagonal helper guards its applicability") {
  Matrix g = fishburn_reeds_matrix(3);
  Matrix shifted = fishburn_reeds_diagonal(g, 0.25);
  CHECK(max_abs_diff(shifted, g + 0.25 * Matrix::Identity(6, 6)) == 0.0);
  CHECK(tsirelson_bound(shifted) ==
        doctest::Approx(6 * (8.0 / 3.0 + 0.25)).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(fishburn_reeds_diagonal(rotated_matrix(0.1, 0.2, 0.3), 0.1),
                       doctest::Contains("square"), error);
  Matrix skew(2, 2);
  skew << 1, 2, 3, 4;
  CHECK_THROWS_WITH_AS(fishburn_reeds_diagonal(skew, 0.1), doctest::Contains("sign"), error);
}

TEST_CASE("fishburn-reeds family: exact factor gram and violation sequence") {
  for (int d = 2; d <= 5; ++d) {
    Matrix f = fishburn_reeds_factor(d);
    CHECK(f.rows() == d * (d - 1));
    Matrix gram = f.transpose() * f;
    CHECK(max_abs_diff(gram, 2.0 * (d - 1) * Matrix::Identity(d, d)) == 0.0);
    for (int c = 0; c < d; ++c)
      CHECK(f.col(c).norm() == doctest::Approx(std::sqrt(2.0 * (d - 1))));

    Matrix g = fishburn_reeds_matrix(d);
    double nu = tsirelson_bound(g) / classical_bound(g).B;
    CHECK(nu == doctest::Approx(double(3 * d - 5) / double(2 * d - 3)).epsilon(1e-9));
  }
}

TEST_CASE("d6 catalog rows match the published displays") {
  Matrix g = d6_1_matrix();
  Vector row1(6), row6(6);
  row1 << 1, 0, 1, 0, 1, 1;
  row6 << 1, -1, 0, -1, 0, -1;
  CHECK(max_abs_diff(g.row(0), row1.transpose()) == 0.0);
  CHECK(max_abs_diff(g.row(5), row6.transpose()) == 0.0);
  Matrix opt = d6_1_optimized_matrix();
  CHECK(opt(0, 0) == -0.350174);
  CHECK(opt(5, 5) == -0.511833);
}

TEST_CASE("bloch observables and the singlet-family expectation") {
  TwoQubitObservablePair z = bloch_observables({0, 0, 1}, {0, 0, 1});
  CHECK(std::abs(z.operator_a(0, 0).real() - 1.0) < 1e-15);
  CHECK(std::abs(z.operator_a(1, 1).real() + 1.0) < 1e-15);
  CHECK(phi_plus_expectation(z) == doctest::Approx(1.0).epsilon(1e-12));

  TwoQubitObservablePair x = bloch_observables({1, 0, 0}, {0, 0, 1});
  CHECK(std::abs(x.operator_a(0, 1).real() - 1.0) < 1e-15);
  CHECK(phi_plus_expectation(x) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(bloch_observables({0, 0, 2}, {0, 0, 1}), error);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 1000; ++k) {
    Eigen::Vector3d v(n(rng), n(rng), n(rng)), w(n(rng), n(rng), n(rng));
    v.normalize();
    w.normalize();
    TwoQubitObservablePair pair = bloch_observables(v, w);
    CHECK(std::abs(phi_plus_expectation(pair) - v.dot(w)) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> ev(pair.operator_a);
    CHECK(ev.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rotation scan peaks exactly at the design angle") {
  const double design = 2.0 * kPi * 90 / 720;
  auto series = rotation_scan(0.35, design, 2.4, ScanAxis::theta, 720);
  REQUIRE(series.size() == 720);
  Matrix g = rotated_matrix(0.35, design, 2.4);
  double B = classical_bound(g).B;

  size_t arg = 0;
  for (size_t k = 0; k < series.size(); ++k) {
    CHECK(series[k].q_over_b * B <= 3 * kSqrt2 + 1e-9);
    if (series[k].q_over_b > series[arg].q_over_b) arg = k;
  }
  CHECK(arg == 90);
  CHECK(series[90].angle == doctest::Approx(design).epsilon(1e-15));
  CHECK(series[90].q_over_b * B == doctest::Approx(3 * kSqrt2).epsilon(1e-9));
  CHECK_THROWS_AS(rotation_scan(0, 0, 0, ScanAxis::phi, 1), error);
}

TEST_CASE("optimizer reaches the staircase-6 optimum and reports honestly") {
  SearchConfig cfg;
  cfg.global_samples = 64;
  cfg.seed = 7;
  SearchResult res = optimize_violation(gisin_matrix(6), cfg);
  CHECK(res.objective_value == doctest::Approx(kSqrt2).epsilon(1e-6));
  CHECK(classical_bound(res.best_g).B ==
        doctest::Approx(6 * (1 + std::sqrt(3.0))).epsilon(1e-6));

  double fresh = tsirelson_bound(res.best_g) / classical_bound(res.best_g).B;
  CHECK(std::abs(fresh - res.objective_value) <= 1e-8);

  double prev = 0;
  for (const auto& [idx, val] : res.trace) {
    CHECK(val >= prev);
    prev = val;
  }
  CHECK(res.local_optimum);

  SearchResult again = optimize_violation(gisin_matrix(6), cfg);
  CHECK(max_abs_diff(res.best_g, again.best_g) == 0.0);
  CHECK(res.objective_value == again.objective_value);
}

TEST_CASE("optimizer never regresses below the unmodified violation") {
  for (const Matrix& g : {chsh_matrix(), gisin_matrix(3), fishburn_reeds_matrix(3)}) {
    SearchConfig cfg;
    cfg.global_samples = 10;
    cfg.seed = 3;
    SearchResult res = optimize_violation(g, cfg);
    double nu0 = tsirelson_bound(g) / classical_bound(g).B;
    CHECK(res.objective_value >= nu0 - 1e-12);
  }
}

TEST_CASE("optimizer rejects non-tight bases") {
  Matrix loose(2, 2);
  loose << 2, 0, 0, 1;
  SearchConfig cfg;
  cfg.global_samples = 1;
  CHECK_THROWS_AS(optimize_violation(loose, cfg), error);
}

TEST_CASE("zero-sample ratio search returns the matrix itself") {
  SearchConfig cfg;
  cfg.global_samples = 0;
  cfg.local_refine = false;
  cfg.seesaw_restarts = 30;
  cfg.seed = 5;
  Matrix g = gisin_matrix(3);
  SearchResult res = optimize_dimension_ratio(g, 5, cfg);
  CHECK(max_abs_diff(res.best_g, g) < 1e-9);
  CHECK(res.objective_value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.denominator_is_estimate);
}

TEST_CASE("epsilon post-processing pulls boundary shifts strictly inside") {
  SearchConfig cfg;
  cfg.global_samples = 64;
  cfg.local_refine = false;
  cfg.seed = 7;
  cfg.epsilon_trick = true;
  Matrix g = gisin_matrix(6);
  SearchResult res = optimize_violation(g, cfg);
  CHECK(res.epsilon_applied);
  CHECK(res.note.find("epsilon") != std::string::npos);
  SingularDecomposition dec = svd(res.best_g);
  CHECK(dec.d == svd(g).d);
  for (int i = dec.d; i < dec.s; ++i) CHECK(dec.sigma(i) < dec.top * (1 - 1e-8));
  CHECK(res.objective_value ==
        doctest::Approx(tsirelson_bound(res.best_g) / classical_bound(res.best_g).B)
            .epsilon(1e-8));
}

TEST_CASE("histogram modes are deterministic and sane") {
  HistogramResult tw = violation_histogram("twisted", 200, 11);
  HistogramResult tw2 = violation_histogram("twisted", 200, 11);
  CHECK(tw.values == tw2.values);
  CHECK(tw.mean > 1.0);
  for (double v : tw.values) {
    CHECK(v > 0.9);
    CHECK(v <= 3.0);
  }
  HistogramResult rn = violation_histogram("random", 100, 11);
  for (double v : rn.values) CHECK(v <= 3.0);
  CHECK_THROWS_AS(violation_histogram("nope", 10, 0), error);
}

TEST_CASE("identity-angle twist keeps the staircase-3 violation at 6/5") {
  TwistSpec spec;
  spec.angles_r1 = {0.0};
  Matrix gp = twist(gisin_matrix(3), spec);
  CHECK(tsirelson_bound(gp) / classical_bound(gp).B == doctest::Approx(1.2).epsilon(1e-9));
}

TEST_CASE("report JSON carries digests, manifests and round-trips specs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  Manifest man;
  man.command = "bounds";
  man.arguments = {"bounds", "x.csv"};
  Matrix g = chsh_matrix();
  Json rep = bounds_report(man, g, classical_bound(g), certify(g), {});
  CHECK(rep["kind"] == "bounds");
  CHECK(rep["B"] == 2.0);
  CHECK(rep["matrix_sha256"] == matrix_digest(g));
  CHECK(rep["manifest"]["seed"].is_null());
  CHECK(rep["tightness"]["tight"] == true);

  TwistSpec ts;
  ts.angles_r1 = {0.25, 1.5};
  ts.reflect_r2 = true;
  TwistSpec ts2 = twist_spec_from_json(twist_spec_json(ts));
  CHECK(ts2.angles_r1 == ts.angles_r1);
  CHECK(ts2.reflect_r2 == ts.reflect_r2);

  ShiftSpec ss;
  ss.sigma = {1, -1};
  ss.lambda1 = 0.125;
  ss.lambdas = {-0.5};
  ShiftSpec ss2 = shift_spec_from_json(shift_spec_json(ss));
  CHECK(ss2.sigma == ss.sigma);
  CHECK(ss2.lambda1 == ss.lambda1);
  CHECK(ss2.lambdas == ss.lambdas);
}

TEST_CASE("repro scenarios all pass") {
  for (const std::string& name : {"chsh", "gisin3"}) {
    ReproResult r = run_repro(name);
    INFO(r.text);
    CHECK(r.pass);
  }
  CHECK_THROWS_AS(run_repro("unknown"), error);
}
