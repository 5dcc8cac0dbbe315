#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "catalog.hpp"
#include "tightness.hpp"

namespace bell {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Params {
  std::vector<double> a1, a2, a3;  // twist angles
  double lambda1 = 0;              // shift of the top block
  std::vector<double> lambdas;     // shifts of the lower values
  std::vector<int> sigma;          // signs on the top block
  bool reflect[3] = {false, false, false};
};

struct Searcher {
  Matrix g;
  SingularDecomposition dec;
  SearchConfig cfg;
  int m1, m2, d, s, nlow;
  int n1, n2, n3, ncont;
  double sqrtmm;
  std::mt19937_64 rng;
  long evals = 0;

  Searcher(const Matrix& gin, const SearchConfig& c)
      : g(gin), dec(svd(gin)), cfg(c), rng(c.seed) {
    m1 = dec.m1;
    m2 = dec.m2;
    d = dec.d;
    s = dec.s;
    nlow = s - d;
    n1 = angle_count(d);
    n2 = angle_count(m1 - d);
    n3 = angle_count(m2 - d);
    ncont = n1 + n2 + n3 + 1 + nlow;
    sqrtmm = std::sqrt(double(m1) * double(m2));
  }

  Params identity_params() const {
    Params p;
    p.a1.assign(n1, 0.0);
    p.a2.assign(n2, 0.0);
    p.a3.assign(n3, 0.0);
    p.lambdas.assign(nlow, 0.0);
    p.sigma.assign(d, 1);
    return p;
  }

  std::vector<double> flatten(const Params& p) const {
    std::vector<double> x;
    x.reserve(ncont);
    x.insert(x.end(), p.a1.begin(), p.a1.end());
    x.insert(x.end(), p.a2.begin(), p.a2.end());
    x.insert(x.end(), p.a3.begin(), p.a3.end());
    x.push_back(p.lambda1);
    x.insert(x.end(), p.lambdas.begin(), p.lambdas.end());
    return x;
  }

  void unflatten(const std::vector<double>& x, Params& p) const {
    int k = 0;
    for (int i = 0; i < n1; ++i) p.a1[i] = x[k++];
    for (int i = 0; i < n2; ++i) p.a2[i] = x[k++];
    for (int i = 0; i < n3; ++i) p.a3[i] = x[k++];
    p.lambda1 = x[k++];
    for (int i = 0; i < nlow; ++i) p.lambdas[i] = x[k++];
  }

  double classical(const Matrix& gp) const {
    return classical_bound(gp).B;
  }

  double denominator(const Matrix& gp) const {
    if (cfg.objective == Objective::violation) return classical(gp);
    return dimensional_bound(gp, cfg.dprime, cfg.seesaw_restarts, cfg.seed).value;
  }

  // Builds the modified matrix, checks it stays within the invariant family
  // (either strictly admissible shifts or a recertified tight boundary case)
  // and returns the objective, or a negative value when the point is invalid.
  double eval(const Params& p, Matrix* out = nullptr) {
    ++evals;
    double top_shifted = dec.top + p.lambda1;
    if (std::abs(top_shifted) <= 1e-12 * dec.top) return -1.0;

    Matrix r1 = orthogonal_from_angles(d, p.a1, p.reflect[0]);
    Matrix r2 = orthogonal_from_angles(m1 - d, p.a2, p.reflect[1]);
    Matrix r3 = orthogonal_from_angles(m2 - d, p.a3, p.reflect[2]);

    Matrix left(m1, s);
    left.leftCols(d) = dec.V.leftCols(d) * r1;
    if (s > d)
      left.rightCols(s - d) = dec.V.block(0, d, m1, s - d) * r2.topLeftCorner(s - d, s - d);
    Matrix right(m2, s);
    right.leftCols(d) = dec.W.leftCols(d);
    if (s > d)
      right.rightCols(s - d) =
          dec.W.block(0, d, m2, s - d) * r3.topLeftCorner(s - d, s - d).transpose();

    Vector diag(s);
    for (int i = 0; i < d; ++i) diag(i) = p.sigma[i] * top_shifted;
    for (int i = d; i < s; ++i) diag(i) = dec.sigma(i) + p.lambdas[i - d];

    double newmax = diag.cwiseAbs().maxCoeff();
    if (newmax <= 1e-12 * dec.top) return -1.0;

    bool admissible = true;
    for (int i = d; i < s; ++i)
      if (std::abs(diag(i)) >= std::abs(top_shifted) - 1e-12) admissible = false;

    if (!admissible) {
      std::vector<int> topset;
      for (int i = 0; i < s; ++i)
        if (std::abs(diag(i)) >= newmax * (1.0 - 1e-8)) topset.push_back(i);
      Matrix rows(int(topset.size()), m1 + m2);
      double scale = std::sqrt(double(m2) / double(m1));
      for (std::size_t t = 0; t < topset.size(); ++t) {
        int i = topset[t];
        double sgn = diag(i) >= 0 ? 1.0 : -1.0;
        rows.row(int(t)).head(m1) = left.col(i).transpose();
        rows.row(int(t)).tail(m2) = scale * sgn * right.col(i).transpose();
      }
      TightnessCertificate cert = certify_rows(rows.transpose(), int(topset.size()));
      if (!cert.tight) return -1.0;
    }

    Matrix gp = left * diag.asDiagonal() * right.transpose();
    double T = newmax * sqrtmm;
    double den = denominator(gp);
    if (den <= 1e-12) return -1.0;
    if (out) *out = gp;
    return T / den;
  }

  Params sample() {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> shift(-dec.top, dec.top);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Params p = identity_params();
    for (double& a : p.a1) a = angle(rng);
    for (double& a : p.a2) a = angle(rng);
    for (double& a : p.a3) a = angle(rng);
    p.lambda1 = shift(rng);
    for (double& l : p.lambdas) l = shift(rng);
    for (int& si : p.sigma) si = unit(rng) < 0.5 ? 1 : -1;
    for (bool& r : p.reflect) r = unit(rng) < 0.5;
    // With probability 1/2, promote a random subset of the lower values to
    // just inside the equal-magnitude boundary; equalized optima are common
    // and plain uniform draws almost never land near them.
    if (nlow > 0 && unit(rng) < 0.5) {
      double topv = std::abs(dec.top + p.lambda1);
      std::vector<int> idx(nlow);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      std::uniform_int_distribution<int> cnt(1, nlow);
      int k = cnt(rng);
      for (int t = 0; t < k; ++t) {
        double sgn = unit(rng) < 0.5 ? 1.0 : -1.0;
        p.lambdas[idx[t]] = sgn * topv - dec.sigma(d + idx[t]);
      }
    }
    return p;
  }

  std::vector<Params> special_candidates() const {
    std::vector<Params> out;
    out.push_back(identity_params());
    if (s >= 1 && s <= 13) {  // 2^(s-1) <= 4096
      std::uint64_t npat = 1ull << (s - 1);
      for (std::uint64_t pat = 1; pat < npat; ++pat) {
        Params p = identity_params();
        auto sgn = [&](int i) { return i == 0 ? 1 : ((pat >> (i - 1)) & 1 ? -1 : 1); };
        for (int i = 0; i < d; ++i) p.sigma[i] = sgn(i);
        for (int i = d; i < s; ++i) p.lambdas[i - d] = sgn(i) * dec.top - dec.sigma(i);
        out.push_back(p);
      }
    }
    return out;
  }

  struct Refined {
    Params p;
    double value;
  };

  Refined refine(Params p, double v, std::vector<std::pair<long, double>>* trace,
                 double* global_best) {
    double step = cfg.init_step;
    long sweeps = 0;
    auto record = [&](double nv) {
      if (nv > *global_best) {
        *global_best = nv;
        trace->emplace_back(evals, nv);
      }
    };
    while (step >= cfg.min_step && sweeps < cfg.max_sweeps) {
      ++sweeps;
      bool improved = false;
      std::vector<double> x = flatten(p);

      for (int i = 0; i < ncont && !improved; ++i) {
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> x2 = x;
          x2[i] += sgn * step;
          Params p2 = p;
          unflatten(x2, p2);
          double v2 = eval(p2);
          if (v2 > v + 1e-14) {
            p = p2;
            v = v2;
            record(v);
            improved = true;
            break;
          }
        }
      }

      if (!improved && ncont > 1) {
        Matrix gauss(ncont, ncont);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int i = 0; i < ncont; ++i)
          for (int j = 0; j < ncont; ++j) gauss(i, j) = nd(rng);
        Eigen::HouseholderQR<Matrix> qr(gauss);
        Matrix frame = qr.householderQ() * Matrix::Identity(ncont, ncont);
        for (int k = 0; k < ncont && !improved; ++k) {
          for (double sgn : {1.0, -1.0}) {
            std::vector<double> x2 = x;
            for (int i = 0; i < ncont; ++i) x2[i] += sgn * step * frame(i, k);
            Params p2 = p;
            unflatten(x2, p2);
            double v2 = eval(p2);
            if (v2 > v + 1e-14) {
              p = p2;
              v = v2;
              record(v);
              improved = true;
              break;
            }
          }
        }
      }

      double topv = std::abs(dec.top + p.lambda1);
      double shrink = 1e-9 * std::max(1.0, topv);
      for (int i = 0; i < nlow; ++i) {
        for (double target : {topv - shrink, -(topv - shrink), 0.0, topv, -topv}) {
          Params p2 = p;
          p2.lambdas[i] = target - dec.sigma(d + i);
          double v2 = eval(p2);
          if (v2 > v + 1e-14) {
            p = p2;
            v = v2;
            record(v);
            improved = true;
            break;
          }
        }
      }

      for (int i = 0; i < d; ++i) {
        Params p2 = p;
        p2.sigma[i] = -p2.sigma[i];
        double v2 = eval(p2);
        if (v2 > v + 1e-14) {
          p = p2;
          v = v2;
          record(v);
          improved = true;
        }
      }
      for (int r = 0; r < 3; ++r) {
        Params p2 = p;
        p2.reflect[r] = !p2.reflect[r];
        double v2 = eval(p2);
        if (v2 > v + 1e-14) {
          p = p2;
          v = v2;
          record(v);
          improved = true;
        }
      }

      step = improved ? std::min(step * 1.5, 3.141592653589793) : step * 0.5;
    }
    return {p, v};
  }

  bool is_local_optimum(const Params& p, double v) {
    std::vector<double> x = flatten(p);
    for (int i = 0; i < ncont; ++i) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> x2 = x;
        x2[i] += sgn * cfg.min_step;
        Params p2 = p;
        unflatten(x2, p2);
        if (eval(p2) > v + 1e-10) return false;
      }
    }
    return true;
  }
};

TwistSpec twist_spec_of(const Params& p) {
  TwistSpec t;
  t.angles_r1 = p.a1;
  t.angles_r2 = p.a2;
  t.angles_r3 = p.a3;
  t.reflect_r1 = p.reflect[0];
  t.reflect_r2 = p.reflect[1];
  t.reflect_r3 = p.reflect[2];
  return t;
}

ShiftSpec shift_spec_of(const Params& p) {
  ShiftSpec sp;
  sp.sigma = p.sigma;
  sp.lambda1 = p.lambda1;
  sp.lambdas = p.lambdas;
  return sp;
}

SearchResult run_search(const Matrix& g, const SearchConfig& cfg) {
  validate_matrix(g);
  TightnessCertificate cert = certify(g);
  if (!cert.tight)
    throw error("search requires a tight base inequality; certification failed");
  if (cfg.objective == Objective::violation)
    classical_bound(g);  // surfaces the enumeration budget up front

  Searcher sr(g, cfg);
  SearchResult res;

  struct Cand {
    Params p;
    double value;
    long order;
  };
  std::vector<Cand> top;
  int keep = std::max(1, cfg.refine_top_k);
  double best_seen = -1.0;
  long order = 0;
  auto consider = [&](const Params& p) {
    double v = sr.eval(p);
    ++order;
    if (v < 0) return;
    if (v > best_seen) {
      best_seen = v;
      res.trace.emplace_back(sr.evals, v);
    }
    top.push_back({p, v, order});
    std::sort(top.begin(), top.end(), [](const Cand& a, const Cand& b) {
      if (a.value != b.value) return a.value > b.value;
      return a.order < b.order;
    });
    if (int(top.size()) > keep) top.pop_back();
  };

  for (const Params& p : sr.special_candidates()) consider(p);
  for (long k = 0; k < cfg.global_samples; ++k) consider(sr.sample());

  if (top.empty()) throw error("no valid modification found during search");

  Params best_p = top.front().p;
  double best_v = top.front().value;
  if (cfg.local_refine) {
    double global_best = best_seen;
    for (const Cand& c : top) {
      auto ref = sr.refine(c.p, c.value, &res.trace, &global_best);
      if (ref.value > best_v) {
        best_v = ref.value;
        best_p = ref.p;
      }
    }
  }

  if (cfg.epsilon_trick) {
    double topv = std::abs(sr.dec.top + best_p.lambda1);
    double eps = 1e-6 * sr.dec.top;
    Params adj = best_p;
    bool touched = false;
    for (int i = 0; i < sr.nlow; ++i) {
      double val = sr.dec.sigma(sr.d + i) + adj.lambdas[i];
      if (std::abs(val) >= topv - 1e-12) {
        double sgn = val >= 0 ? 1.0 : -1.0;
        adj.lambdas[i] = sgn * (topv - eps) - sr.dec.sigma(sr.d + i);
        touched = true;
      }
    }
    if (touched) {
      double v2 = sr.eval(adj);
      if (v2 > 0) {
        best_p = adj;
        best_v = v2;
        res.epsilon_applied = true;
        res.note = "boundary values pulled inside by epsilon to keep the shift "
                   "strictly admissible";
      }
    }
  }

  Matrix best_g;
  double final_v = sr.eval(best_p, &best_g);
  res.best_g = best_g;
  res.twist_spec = twist_spec_of(best_p);
  res.shift_spec = shift_spec_of(best_p);
  res.objective_value = final_v;
  res.tsirelson = tsirelson_bound(best_g);
  res.denominator = res.tsirelson / final_v;
  res.denominator_is_estimate = cfg.objective == Objective::dimension_ratio;
  if (res.denominator_is_estimate) {
    if (!res.note.empty()) res.note += "; ";
    res.note += "denominator is a heuristic lower bound on the restricted "
                "quantum value, so the ratio is an upper estimate";
  }
  if (cfg.local_refine) res.local_optimum = sr.is_local_optimum(best_p, best_v);
  return res;
}

}  // namespace

SearchResult optimize_violation(const Matrix& g, const SearchConfig& cfg) {
  SearchConfig c = cfg;
  c.objective = Objective::violation;
  return run_search(g, c);
}

SearchResult optimize_dimension_ratio(const Matrix& g, int dprime, SearchConfig cfg) {
  if (dprime < 1) throw error("dprime must be at least 1");
  cfg.objective = Objective::dimension_ratio;
  cfg.dprime = dprime;
  return run_search(g, cfg);
}

HistogramResult violation_histogram(const std::string& mode, long n, std::uint64_t seed) {
  if (n < 1) throw error("histogram needs at least one sample");
  HistogramResult h;
  h.values.reserve(std::size_t(n));
  std::mt19937_64 rng(seed);
  if (mode == "random") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (long k = 0; k < n; ++k) {
      Matrix g(3, 3);
      do {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) g(i, j) = u(rng);
      } while (g.cwiseAbs().maxCoeff() < 1e-12);
      double B = classical_bound(g).B;
      std::uint64_t sk = rng();
      double Q = full_quantum_value(g, 10, sk).value;
      h.values.push_back(Q / B);
    }
  } else if (mode == "twisted") {
    Matrix g0 = gisin_matrix(3);
    SingularDecomposition dec = svd(g0);
    double T = dec.top * 3.0;
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (long k = 0; k < n; ++k) {
      TwistSpec spec;
      spec.angles_r1.resize(std::size_t(angle_count(dec.d)));
      spec.angles_r2.resize(std::size_t(angle_count(dec.m1 - dec.d)));
      spec.angles_r3.resize(std::size_t(angle_count(dec.m2 - dec.d)));
      for (double& a : spec.angles_r1) a = angle(rng);
      for (double& a : spec.angles_r2) a = angle(rng);
      for (double& a : spec.angles_r3) a = angle(rng);
      Matrix gp = twist(g0, spec);
      h.values.push_back(T / classical_bound(gp).B);
    }
  } else {
    throw error("unknown histogram mode: " + mode);
  }
  h.min = *std::min_element(h.values.begin(), h.values.end());
  h.max = *std::max_element(h.values.begin(), h.values.end());
  h.mean = std::accumulate(h.values.begin(), h.values.end(), 0.0) / double(h.values.size());
  return h;
}

}  // namespace bell
