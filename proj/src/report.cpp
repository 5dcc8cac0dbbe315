#include "report.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <ctime>

namespace bell {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw error("sha256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

std::string matrix_digest(const Matrix& g) { return sha256_hex(to_csv(g)); }

std::string iso_timestamp() {
  long long epoch = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) epoch = std::atoll(env);
  std::time_t t = std::time_t(epoch);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json manifest_json(const Manifest& m) {
  Json j;
  j["command"] = m.command;
  j["arguments"] = m.arguments;
  if (m.has_seed)
    j["seed"] = m.seed;
  else
    j["seed"] = nullptr;
  j["version"] = kVersion;
  if (!m.input_sha256.empty())
    j["input_sha256"] = m.input_sha256;
  else
    j["input_sha256"] = nullptr;
  j["timestamp"] = iso_timestamp();
  return j;
}

Json matrix_json(const Matrix& g) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(g(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Json row_major(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

}  // namespace

Json tightness_json(const TightnessCertificate& cert) {
  Json j;
  j["tight"] = cert.tight;
  j["method"] = cert.method;
  j["d"] = cert.d;
  j["dprime_min"] = cert.dprime_min;
  j["residual"] = cert.residual;
  j["alpha"] = cert.tight ? row_major(cert.alpha) : Json::array();
  j["gram"] = cert.tight ? row_major(cert.gram) : Json::array();
  return j;
}

Json twist_spec_json(const TwistSpec& spec) {
  Json j;
  j["angles_r1"] = spec.angles_r1;
  j["reflect_r1"] = spec.reflect_r1;
  j["angles_r2"] = spec.angles_r2;
  j["reflect_r2"] = spec.reflect_r2;
  j["angles_r3"] = spec.angles_r3;
  j["reflect_r3"] = spec.reflect_r3;
  return j;
}

TwistSpec twist_spec_from_json(const Json& j) {
  TwistSpec s;
  s.angles_r1 = j.value("angles_r1", std::vector<double>{});
  s.angles_r2 = j.value("angles_r2", std::vector<double>{});
  s.angles_r3 = j.value("angles_r3", std::vector<double>{});
  s.reflect_r1 = j.value("reflect_r1", false);
  s.reflect_r2 = j.value("reflect_r2", false);
  s.reflect_r3 = j.value("reflect_r3", false);
  return s;
}

Json shift_spec_json(const ShiftSpec& spec) {
  Json j;
  j["sigma"] = spec.sigma;
  j["lambda1"] = spec.lambda1;
  j["lambdas"] = spec.lambdas;
  return j;
}

ShiftSpec shift_spec_from_json(const Json& j) {
  ShiftSpec s;
  s.sigma = j.value("sigma", std::vector<int>{});
  s.lambda1 = j.value("lambda1", 0.0);
  s.lambdas = j.value("lambdas", std::vector<double>{});
  return s;
}

Json bounds_report(const Manifest& m, const Matrix& g, const ClassicalBound& cb,
                   const TightnessCertificate& cert, const std::vector<SeesawResult>& seesaw) {
  Json j;
  j["kind"] = "bounds";
  j["manifest"] = manifest_json(m);
  j["matrix_sha256"] = matrix_digest(g);
  j["m1"] = int(g.rows());
  j["m2"] = int(g.cols());
  j["B"] = cb.B;
  j["B_argmax_a1"] = cb.a1;
  j["B_argmax_a2"] = cb.a2;
  double T = tsirelson_bound(g);
  j["T"] = T;
  j["nu"] = T / cb.B;
  j["tightness"] = tightness_json(cert);
  Json arr = Json::array();
  for (const SeesawResult& s : seesaw) {
    Json e;
    e["dprime"] = s.dprime;
    e["value"] = s.value;
    e["restarts"] = s.restarts;
    e["converged"] = s.converged;
    arr.push_back(std::move(e));
  }
  j["seesaw"] = std::move(arr);
  return j;
}

Json modification_report(const Manifest& m, const std::string& kind, const Json& spec,
                         const Matrix& in, const Matrix& out,
                         const TightnessCertificate* recertification) {
  Json j;
  j["kind"] = kind;
  j["manifest"] = manifest_json(m);
  j["spec"] = spec;
  j["T_input"] = tsirelson_bound(in);
  j["T_output"] = tsirelson_bound(out);
  j["output_matrix"] = matrix_json(out);
  j["output_sha256"] = matrix_digest(out);
  if (recertification)
    j["recertification"] = tightness_json(*recertification);
  else
    j["recertification"] = nullptr;
  return j;
}

Json optimize_report(const Manifest& m, const SearchConfig& cfg, const SearchResult& res) {
  Json j;
  j["kind"] = "optimize";
  j["manifest"] = manifest_json(m);
  j["objective"] =
      cfg.objective == Objective::violation ? "violation" : "dimension_ratio";
  Json c;
  c["dprime"] = cfg.dprime;
  c["global_samples"] = cfg.global_samples;
  c["local_refine"] = cfg.local_refine;
  c["init_step"] = cfg.init_step;
  c["min_step"] = cfg.min_step;
  c["seed"] = cfg.seed;
  c["seesaw_restarts"] = cfg.seesaw_restarts;
  c["refine_top_k"] = cfg.refine_top_k;
  c["max_sweeps"] = cfg.max_sweeps;
  c["epsilon_trick"] = cfg.epsilon_trick;
  j["config"] = std::move(c);
  j["objective_value"] = res.objective_value;
  j["T"] = res.tsirelson;
  j["denominator"] = res.denominator;
  j["denominator_is_estimate"] = res.denominator_is_estimate;
  j["local_optimum"] = res.local_optimum;
  j["epsilon_applied"] = res.epsilon_applied;
  j["note"] = res.note;
  j["twist_spec"] = twist_spec_json(res.twist_spec);
  j["shift_spec"] = shift_spec_json(res.shift_spec);
  Json tr = Json::array();
  for (const auto& [idx, val] : res.trace) tr.push_back(Json::array({idx, val}));
  j["trace"] = std::move(tr);
  j["best_matrix"] = matrix_json(res.best_g);
  j["best_sha256"] = matrix_digest(res.best_g);
  return j;
}

Json histogram_report(const Manifest& m, const std::string& mode, long n,
                      const HistogramResult& h) {
  Json j;
  j["kind"] = "histogram";
  j["manifest"] = manifest_json(m);
  j["mode"] = mode;
  j["n"] = n;
  j["mean"] = h.mean;
  j["min"] = h.min;
  j["max"] = h.max;
  return j;
}

Json scan_report(const Manifest& m, double phi, double theta, double psi,
                 const std::string& axis, int steps, double B, double argmax_angle,
                 double max_ratio) {
  Json j;
  j["kind"] = "scan";
  j["manifest"] = manifest_json(m);
  j["design"] = Json::array({phi, theta, psi});
  j["axis"] = axis;
  j["steps"] = steps;
  j["B"] = B;
  j["argmax_angle"] = argmax_angle;
  j["max_ratio"] = max_ratio;
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bell
