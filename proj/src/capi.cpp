#include "bell/bell.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "bounds.hpp"
#include "catalog.hpp"
#include "core.hpp"
#include "modify.hpp"
#include "optimize.hpp"
#include "report.hpp"
#include "repro.hpp"
#include "tightness.hpp"

struct bell_matrix {
  bell::Matrix m;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const bell::budget_error& e) {
    return fail(BELL_ERR_BUDGET, e.what());
  } catch (const bell::error& e) {
    return fail(BELL_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(BELL_ERR_INTERNAL, e.what());
  }
}

bell::Manifest to_manifest(const bell_manifest* m) {
  bell::Manifest out;
  if (!m) return out;
  if (m->command) out.command = m->command;
  for (int i = 0; i < m->n_arguments; ++i)
    if (m->arguments && m->arguments[i]) out.arguments.emplace_back(m->arguments[i]);
  out.has_seed = m->has_seed != 0;
  out.seed = m->seed;
  return out;
}

int require(const void* p, const char* what) {
  if (p) return BELL_OK;
  return fail(BELL_ERR_INVALID, std::string("null ") + what);
}

}  // namespace

extern "C" {

const char* bell_version(void) { return bell::kVersion; }

const char* bell_last_error(void) { return g_last_error.c_str(); }

void bell_string_free(char* s) { std::free(s); }

int bell_matrix_from_csv_file(const char* path, bell_matrix** out) {
  if (require(path, "path") || require(out, "output handle")) return BELL_ERR_INVALID;
  return guarded([&] {
    std::ifstream f(path);
    if (!f) throw bell::error(std::string("cannot open ") + path);
    std::stringstream buf;
    buf << f.rdbuf();
    *out = new bell_matrix{bell::parse_csv(buf.str())};
    return BELL_OK;
  });
}

int bell_matrix_from_csv_text(const char* text, bell_matrix** out) {
  if (require(text, "csv text") || require(out, "output handle")) return BELL_ERR_INVALID;
  return guarded([&] {
    *out = new bell_matrix{bell::parse_csv(text)};
    return BELL_OK;
  });
}

int bell_matrix_dims(const bell_matrix* m, int* rows, int* cols) {
  if (require(m, "matrix")) return BELL_ERR_INVALID;
  if (rows) *rows = int(m->m.rows());
  if (cols) *cols = int(m->m.cols());
  return BELL_OK;
}

int bell_matrix_to_csv(const bell_matrix* m, char** out_csv) {
  if (require(m, "matrix") || require(out_csv, "output")) return BELL_ERR_INVALID;
  return guarded([&] {
    *out_csv = dup_string(bell::to_csv(m->m));
    return BELL_OK;
  });
}

void bell_matrix_free(bell_matrix* m) { delete m; }

int bell_bounds_json(const bell_matrix* m, const bell_manifest* manifest, int dprime,
                     int restarts, char** out_json) {
  if (require(m, "matrix") || require(out_json, "output")) return BELL_ERR_INVALID;
  return guarded([&] {
    bell::Manifest man = to_manifest(manifest);
    man.input_sha256 = bell::matrix_digest(m->m);
    bell::ClassicalBound cb = bell::classical_bound(m->m);
    bell::TightnessCertificate cert = bell::certify(m->m);
    std::vector<bell::SeesawResult> seesaw;
    if (dprime > 0) seesaw.push_back(bell::dimensional_bound(m->m, dprime, restarts, man.seed));
    *out_json = dup_string(bell::dump_json(bell::bounds_report(man, m->m, cb, cert, seesaw)));
    return BELL_OK;
  });
}

int bell_twist_json(const bell_matrix* m, const char* spec_json,
                    const bell_manifest* manifest, char** out_json, char** out_matrix_csv) {
  if (require(m, "matrix") || require(spec_json, "spec") || require(out_json, "output"))
    return BELL_ERR_INVALID;
  return guarded([&] {
    bell::Json spec = bell::Json::parse(spec_json, nullptr, true, true);
    bell::TwistSpec ts = bell::twist_spec_from_json(spec);
    bell::Matrix out = bell::twist(m->m, ts);
    bell::Manifest man = to_manifest(manifest);
    man.input_sha256 = bell::matrix_digest(m->m);
    *out_json = dup_string(bell::dump_json(bell::modification_report(
        man, "twist", bell::twist_spec_json(ts), m->m, out, nullptr)));
    if (out_matrix_csv) *out_matrix_csv = dup_string(bell::to_csv(out));
    return BELL_OK;
  });
}

int bell_shift_json(const bell_matrix* m, const char* spec_json, int force,
                    const bell_manifest* manifest, char** out_json, char** out_matrix_csv) {
  if (require(m, "matrix") || require(spec_json, "spec") || require(out_json, "output"))
    return BELL_ERR_INVALID;
  return guarded([&] {
    bell::Json spec = bell::Json::parse(spec_json, nullptr, true, true);
    bell::ShiftSpec ss = bell::shift_spec_from_json(spec);
    bell::ShiftOutcome out = bell::shift(m->m, ss, force != 0);
    bell::Manifest man = to_manifest(manifest);
    man.input_sha256 = bell::matrix_digest(m->m);
    *out_json = dup_string(bell::dump_json(bell::modification_report(
        man, "shift", bell::shift_spec_json(ss), m->m, out.g,
        out.forced ? &out.recertification : nullptr)));
    if (out_matrix_csv) *out_matrix_csv = dup_string(bell::to_csv(out.g));
    return BELL_OK;
  });
}

void bell_search_config_init(bell_search_config* cfg) {
  if (!cfg) return;
  bell::SearchConfig d;
  cfg->objective = "violation";
  cfg->global_samples = d.global_samples;
  cfg->local_refine = d.local_refine ? 1 : 0;
  cfg->init_step = d.init_step;
  cfg->min_step = d.min_step;
  cfg->seed = d.seed;
  cfg->seesaw_restarts = d.seesaw_restarts;
  cfg->refine_top_k = d.refine_top_k;
  cfg->max_sweeps = d.max_sweeps;
  cfg->epsilon_trick = d.epsilon_trick ? 1 : 0;
}

int bell_optimize_json(const bell_matrix* m, const bell_search_config* cfg,
                       const bell_manifest* manifest, char** out_json,
                       char** out_matrix_csv) {
  if (require(m, "matrix") || require(cfg, "config") || require(out_json, "output"))
    return BELL_ERR_INVALID;
  return guarded([&] {
    bell::SearchConfig c;
    std::string objective = cfg->objective ? cfg->objective : "violation";
    c.global_samples = cfg->global_samples;
    c.local_refine = cfg->local_refine != 0;
    c.init_step = cfg->init_step;
    c.min_step = cfg->min_step;
    c.seed = cfg->seed;
    c.seesaw_restarts = cfg->seesaw_restarts;
    c.refine_top_k = cfg->refine_top_k;
    c.max_sweeps = cfg->max_sweeps;
    c.epsilon_trick = cfg->epsilon_trick != 0;
    if (c.global_samples < 0) throw bell::error("global_samples must be >= 0");
    if (c.init_step <= c.min_step || c.min_step <= 0)
      throw bell::error("need 0 < min_step < init_step");

    bell::SearchResult res;
    if (objective == "violation") {
      res = bell::optimize_violation(m->m, c);
    } else if (objective.rfind("dim:", 0) == 0) {
      int dprime = std::atoi(objective.c_str() + 4);
      res = bell::optimize_dimension_ratio(m->m, dprime, c);
      c.objective = bell::Objective::dimension_ratio;
      c.dprime = dprime;
    } else {
      throw bell::error("objective must be 'violation' or 'dim:<K>'");
    }
    bell::Manifest man = to_manifest(manifest);
    man.input_sha256 = bell::matrix_digest(m->m);
    *out_json = dup_string(bell::dump_json(bell::optimize_report(man, c, res)));
    if (out_matrix_csv) *out_matrix_csv = dup_string(bell::to_csv(res.best_g));
    return BELL_OK;
  });
}

int bell_scan_csv(double phi, double theta, double psi, const char* axis, int steps,
                  const bell_manifest* manifest, char** out_csv, char** out_json) {
  if (require(axis, "axis") || require(out_csv, "output")) return BELL_ERR_INVALID;
  return guarded([&] {
    std::string ax = axis;
    bell::ScanAxis a;
    if (ax == "phi" || ax == "yaw")
      a = bell::ScanAxis::phi;
    else if (ax == "theta" || ax == "pitch")
      a = bell::ScanAxis::theta;
    else if (ax == "psi" || ax == "roll")
      a = bell::ScanAxis::psi;
    else
      throw bell::error("axis must be phi|theta|psi (or yaw|pitch|roll)");

    auto series = bell::rotation_scan(phi, theta, psi, a, steps);
    std::ostringstream csv;
    csv.precision(17);
    int arg = 0;
    for (int k = 0; k < int(series.size()); ++k) {
      csv << series[k].angle << "," << series[k].q_over_b << "\n";
      if (series[k].q_over_b > series[arg].q_over_b) arg = k;
    }
    *out_csv = dup_string(csv.str());
    if (out_json) {
      bell::Matrix g = bell::rotated_matrix(phi, theta, psi);
      double B = bell::classical_bound(g).B;
      *out_json = dup_string(bell::dump_json(
          bell::scan_report(to_manifest(manifest), phi, theta, psi, ax, steps, B,
                            series[arg].angle, series[arg].q_over_b)));
    }
    return BELL_OK;
  });
}

int bell_histogram(const char* mode, long n, uint64_t seed,
                   const bell_manifest* manifest, char** out_csv, char** out_json) {
  if (require(mode, "mode") || require(out_csv, "output")) return BELL_ERR_INVALID;
  return guarded([&] {
    bell::HistogramResult h = bell::violation_histogram(mode, n, seed);
    std::ostringstream csv;
    csv.precision(17);
    for (std::size_t i = 0; i < h.values.size(); ++i) csv << i << "," << h.values[i] << "\n";
    *out_csv = dup_string(csv.str());
    if (out_json)
      *out_json = dup_string(
          bell::dump_json(bell::histogram_report(to_manifest(manifest), mode, n, h)));
    return BELL_OK;
  });
}

int bell_repro(const char* scenario, const char* outdir, char** out_text, int* pass) {
  if (require(scenario, "scenario") || require(out_text, "output")) return BELL_ERR_INVALID;
  return guarded([&] {
    bell::ReproResult r = bell::run_repro(scenario, outdir ? outdir : "");
    *out_text = dup_string(r.text);
    if (pass) *pass = r.pass ? 1 : 0;
    return BELL_OK;
  });
}

}  // extern "C"
