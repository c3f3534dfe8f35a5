#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dillonlab/catalog.hpp"
#include "dillonlab/dproperty.hpp"

namespace dillonlab {

using json = nlohmann::json;

/// Versioned JSON document for one D-check: schema "dreport/1".
json dreport_to_json(const DReport& r);

std::string dreport_schema_errors(const json& j);  // empty when valid

/// Aggregated per-function analysis: identity, degree, uniformity,
/// nonlinearity, plateaued summary, one DReport per method run, and the
/// dimension-bounds check. All D-reports must agree on the verdict;
/// disagreement throws with a diagnostic dump.
struct AnalysisReport {
  std::string spec_string;
  unsigned n = 0;
  unsigned m = 0;
  std::optional<u64> field_modulus;
  std::string provenance;
  std::string warning;
  unsigned degree = 0;
  unsigned delta = 0;
  i64 nl = 0;
  bool apn = false;
  bool plateaued = false;
  std::map<i64, size_t> amplitude_histogram;  // lambda -> component count
  size_t not_plateaued_components = 0;
  size_t bent_count = 0;
  std::vector<DReport> d_reports;
  bool is_d_function = false;
  std::optional<DimensionBounds> bounds;  // applicable when APN D-function
  bool bounds_ok = true;
  int threads = 1;
  double total_ms = 0.0;
};

struct AnalyzeOptions {
  std::vector<DMethod> methods;  // empty = router's choice
  bool all_methods = false;      // every size- and shape-applicable method
  DCheckOptions check;
};

AnalysisReport analyze_function(const BuiltFunction& built, const std::string& spec_string,
                                const AnalyzeOptions& opts);

/// Versioned JSON document: schema "analysis/1". Timing lives in a separate
/// "timings" subtree (and per-report "elapsed_ms") so byte-level determinism
/// checks can strip it.
json analysis_to_json(const AnalysisReport& r);

std::string analysis_schema_errors(const json& j);

json moment_report_to_json(const MomentIdentityReport& r);
json omega_report_to_json(const OmegaReport& r);

std::string render_dreport_text(const DReport& r);
std::string render_analysis_text(const AnalysisReport& r);

}  // namespace dillonlab
