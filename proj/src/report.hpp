#pragma once

#include <json.hpp>

#include "bounds.hpp"
#include "core.hpp"
#include "modify.hpp"
#include "optimize.hpp"
#include "tightness.hpp"

namespace bell {

inline constexpr const char* kVersion = "1.0.0";

std::string sha256_hex(const std::string& bytes);
std::string matrix_digest(const Matrix& g);

// UTC ISO-8601 stamp taken from SOURCE_DATE_EPOCH (0 when unset) so reruns
// with the same seed produce byte-identical reports.
std::string iso_timestamp();

struct Manifest {
  std::string command;
  std::vector<std::string> arguments;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::string input_sha256;
};

using Json = nlohmann::ordered_json;

Json manifest_json(const Manifest& m);
Json matrix_json(const Matrix& g);
Json tightness_json(const TightnessCertificate& cert);

Json twist_spec_json(const TwistSpec& spec);
TwistSpec twist_spec_from_json(const Json& j);
Json shift_spec_json(const ShiftSpec& spec);
ShiftSpec shift_spec_from_json(const Json& j);

Json bounds_report(const Manifest& m, const Matrix& g, const ClassicalBound& cb,
                   const TightnessCertificate& cert, const std::vector<SeesawResult>& seesaw);
Json modification_report(const Manifest& m, const std::string& kind, const Json& spec,
                         const Matrix& in, const Matrix& out,
                         const TightnessCertificate* recertification);
Json optimize_report(const Manifest& m, const SearchConfig& cfg, const SearchResult& res);
Json histogram_report(const Manifest& m, const std::string& mode, long n,
                      const HistogramResult& h);
Json scan_report(const Manifest& m, double phi, double theta, double psi,
                 const std::string& axis, int steps, double B, double argmax_angle,
                 double max_ratio);

std::string dump_json(const Json& j);

}  // namespace bell
