// Command-line front end for the Bell inequality toolkit. Talks to the
// shared library strictly through the C interface in bell/bell.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bell/bell.h"

namespace {

int exit_code_for(int status) {
  switch (status) {
    case BELL_OK:
      return 0;
    case BELL_ERR_BUDGET:
      return 2;
    default:
      return 1;
  }
}

int report_failure(int status) {
  std::cerr << "error: " << bell_last_error() << "\n";
  return exit_code_for(status);
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { bell_string_free(ptr); }
  char** out() { return &ptr; }
  std::string str() const { return ptr ? ptr : ""; }
};

struct OwnedMatrix {
  bell_matrix* ptr = nullptr;
  ~OwnedMatrix() { bell_matrix_free(ptr); }
};

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  f << content;
  return true;
}

bool emit(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return true;
  }
  return write_file(path, content);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return "";
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

struct ManifestData {
  std::string command;
  std::vector<std::string> arguments;
  std::vector<const char*> argv;
  bell_manifest raw{};

  const bell_manifest* build(const std::string& cmd, const std::vector<std::string>& args,
                             bool has_seed, std::uint64_t seed) {
    command = cmd;
    arguments = args;
    argv.clear();
    for (const std::string& a : arguments) argv.push_back(a.c_str());
    raw.command = command.c_str();
    raw.arguments = argv.empty() ? nullptr : argv.data();
    raw.n_arguments = int(argv.size());
    raw.has_seed = has_seed ? 1 : 0;
    raw.seed = seed;
    return &raw;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell inequality bounds, certificates, modifications and searches"};
  app.set_version_flag("--version", std::string(bell_version()));
  app.require_subcommand(1);

  std::vector<std::string> raw_args(argv + 1, argv + argc);
  ManifestData manifest;

  // bounds
  std::string bounds_csv, bounds_out;
  auto* bounds = app.add_subcommand("bounds", "Classical bound, Tsirelson bound, violation and tightness certificate");
  bounds->add_option("matrix", bounds_csv, "coefficient matrix CSV")->required();
  bounds->add_option("--out", bounds_out, "write JSON here instead of stdout");

  // seesaw
  std::string seesaw_csv, seesaw_out;
  int seesaw_dprime = 2, seesaw_restarts = 50;
  std::uint64_t seesaw_seed = 0;
  auto* seesaw = app.add_subcommand("seesaw", "Dimension-restricted quantum value via alternating optimization");
  seesaw->add_option("matrix", seesaw_csv)->required();
  seesaw->add_option("--dprime", seesaw_dprime, "vector dimension")->required();
  seesaw->add_option("--restarts", seesaw_restarts, "random restarts");
  seesaw->add_option("--seed", seesaw_seed, "RNG seed")->required();
  seesaw->add_option("--out", seesaw_out);

  // twist
  std::string twist_csv, twist_spec, twist_out, twist_matrix_out;
  auto* twist = app.add_subcommand("twist", "Rotate singular vectors; preserves the Tsirelson bound");
  twist->add_option("matrix", twist_csv)->required();
  twist->add_option("--spec", twist_spec, "twist spec JSON file")->required();
  twist->add_option("--out", twist_out);
  twist->add_option("--matrix-out", twist_matrix_out, "write the modified matrix CSV here");

  // shift
  std::string shift_csv, shift_spec, shift_out, shift_matrix_out;
  bool shift_force = false;
  auto* shift = app.add_subcommand("shift", "Modify singular values; rescales the Tsirelson bound");
  shift->add_option("matrix", shift_csv)->required();
  shift->add_option("--spec", shift_spec, "shift spec JSON file")->required();
  shift->add_flag("--force", shift_force, "apply an inadmissible shift and recertify");
  shift->add_option("--out", shift_out);
  shift->add_option("--matrix-out", shift_matrix_out);

  // optimize
  std::string opt_csv, opt_objective = "violation", opt_out, opt_matrix_out;
  long opt_samples = 1000;
  std::uint64_t opt_seed = 0;
  int opt_topk = 1, opt_restarts = 50;
  bool opt_no_refine = false, opt_epsilon = false;
  auto* optimize = app.add_subcommand("optimize", "Search modifications maximizing the violation or a dimension-witness ratio");
  optimize->add_option("matrix", opt_csv)->required();
  optimize->add_option("--objective", opt_objective, "violation or dim:<K>");
  optimize->add_option("--samples", opt_samples, "global samples");
  optimize->add_option("--seed", opt_seed, "RNG seed")->required();
  optimize->add_option("--refine-top-k", opt_topk, "refine this many best samples");
  optimize->add_option("--seesaw-restarts", opt_restarts, "restarts per ratio evaluation");
  optimize->add_flag("--no-refine", opt_no_refine, "skip the local refinement phase");
  optimize->add_flag("--epsilon-trick", opt_epsilon, "pull boundary values strictly inside");
  optimize->add_option("--out", opt_out);
  optimize->add_option("--matrix-out", opt_matrix_out);

  // scan
  double scan_phi = 0, scan_theta = 0, scan_psi = 0;
  std::string scan_axis = "yaw", scan_out, scan_json_out;
  int scan_steps = 360;
  auto* scan = app.add_subcommand("scan", "Violation versus one measurement rotation angle");
  scan->add_option("phi", scan_phi, "design yaw")->required();
  scan->add_option("theta", scan_theta, "design pitch")->required();
  scan->add_option("psi", scan_psi, "design roll")->required();
  scan->add_option("--axis", scan_axis, "phi|theta|psi (or yaw|pitch|roll)");
  scan->add_option("--steps", scan_steps, "grid size");
  scan->add_option("--out", scan_out, "write CSV here instead of stdout");
  scan->add_option("--json-out", scan_json_out, "write the JSON summary here");

  // histogram
  std::string hist_mode, hist_out, hist_json_out;
  long hist_n = 5000;
  std::uint64_t hist_seed = 0;
  auto* histogram = app.add_subcommand("histogram", "Violation distribution of random or twisted inequalities");
  histogram->add_option("--mode", hist_mode, "random or twisted")->required();
  histogram->add_option("--n", hist_n, "sample count");
  histogram->add_option("--seed", hist_seed, "RNG seed")->required();
  histogram->add_option("--out", hist_out, "write CSV here instead of stdout");
  histogram->add_option("--json-out", hist_json_out, "write the JSON summary here");

  // repro
  std::string repro_scenario, repro_outdir;
  auto* repro = app.add_subcommand("repro", "Recompute published values: chsh, gisin3, gisin6, fr2..fr5, rotated, d6");
  repro->add_option("scenario", repro_scenario)->required();
  repro->add_option("--outdir", repro_outdir, "directory for emitted CSV series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*bounds || *seesaw) {
    const bool with_seesaw = bool(*seesaw);
    const std::string& csv = with_seesaw ? seesaw_csv : bounds_csv;
    OwnedMatrix m;
    int status = bell_matrix_from_csv_file(csv.c_str(), &m.ptr);
    if (status != BELL_OK) return report_failure(status);
    OwnedString json;
    const bell_manifest* man =
        manifest.build(with_seesaw ? "seesaw" : "bounds", raw_args, with_seesaw, seesaw_seed);
    status = bell_bounds_json(m.ptr, man, with_seesaw ? seesaw_dprime : 0, seesaw_restarts,
                              json.out());
    if (status != BELL_OK) return report_failure(status);
    return emit(json.str(), with_seesaw ? seesaw_out : bounds_out) ? 0 : 1;
  }

  if (*twist || *shift) {
    const bool is_twist = bool(*twist);
    OwnedMatrix m;
    int status = bell_matrix_from_csv_file((is_twist ? twist_csv : shift_csv).c_str(), &m.ptr);
    if (status != BELL_OK) return report_failure(status);
    std::string spec = read_text_file(is_twist ? twist_spec : shift_spec);
    if (spec.empty()) {
      std::cerr << "error: cannot read spec file\n";
      return 1;
    }
    OwnedString json, csv;
    const bell_manifest* man = manifest.build(is_twist ? "twist" : "shift", raw_args, false, 0);
    status = is_twist
                 ? bell_twist_json(m.ptr, spec.c_str(), man, json.out(), csv.out())
                 : bell_shift_json(m.ptr, spec.c_str(), shift_force ? 1 : 0, man, json.out(),
                                   csv.out());
    if (status != BELL_OK) return report_failure(status);
    const std::string& mat_out = is_twist ? twist_matrix_out : shift_matrix_out;
    if (!mat_out.empty() && !write_file(mat_out, csv.str())) return 1;
    return emit(json.str(), is_twist ? twist_out : shift_out) ? 0 : 1;
  }

  if (*optimize) {
    OwnedMatrix m;
    int status = bell_matrix_from_csv_file(opt_csv.c_str(), &m.ptr);
    if (status != BELL_OK) return report_failure(status);
    bell_search_config cfg;
    bell_search_config_init(&cfg);
    cfg.objective = opt_objective.c_str();
    cfg.global_samples = opt_samples;
    cfg.seed = opt_seed;
    cfg.refine_top_k = opt_topk;
    cfg.seesaw_restarts = opt_restarts;
    cfg.local_refine = opt_no_refine ? 0 : 1;
    cfg.epsilon_trick = opt_epsilon ? 1 : 0;
    OwnedString json, csv;
    const bell_manifest* man = manifest.build("optimize", raw_args, true, opt_seed);
    status = bell_optimize_json(m.ptr, &cfg, man, json.out(), csv.out());
    if (status != BELL_OK) return report_failure(status);
    if (!opt_matrix_out.empty() && !write_file(opt_matrix_out, csv.str())) return 1;
    return emit(json.str(), opt_out) ? 0 : 1;
  }

  if (*scan) {
    OwnedString csv, json;
    const bell_manifest* man = manifest.build("scan", raw_args, false, 0);
    int status = bell_scan_csv(scan_phi, scan_theta, scan_psi, scan_axis.c_str(), scan_steps,
                               man, csv.out(), json.out());
    if (status != BELL_OK) return report_failure(status);
    if (!scan_json_out.empty() && !write_file(scan_json_out, json.str())) return 1;
    return emit(csv.str(), scan_out) ? 0 : 1;
  }

  if (*histogram) {
    OwnedString csv, json;
    const bell_manifest* man = manifest.build("histogram", raw_args, true, hist_seed);
    int status = bell_histogram(hist_mode.c_str(), hist_n, hist_seed, man, csv.out(), json.out());
    if (status != BELL_OK) return report_failure(status);
    if (!hist_json_out.empty() && !write_file(hist_json_out, json.str())) return 1;
    return emit(csv.str(), hist_out) ? 0 : 1;
  }

  if (*repro) {
    OwnedString text;
    int pass = 0;
    int status = bell_repro(repro_scenario.c_str(),
                            repro_outdir.empty() ? nullptr : repro_outdir.c_str(), text.out(),
                            &pass);
    if (status != BELL_OK) return report_failure(status);
    std::cout << text.str();
    return pass ? 0 : 1;
  }

  return 0;
}
