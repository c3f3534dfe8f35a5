#include "dillonlab/report.hpp"

#include <chrono>
#include <sstream>

namespace dillonlab {

namespace {

std::string hex32(u32 w) { return word_to_hex(w); }

json witnesses_to_json(const std::map<u32, DWitness>& w) {
  json out = json::object();
  for (const auto& [val, wit] : w) {
    json entry = {{"a", hex32(wit.a)}, {"b", hex32(wit.b)}};
    if (wit.x != 0) entry["x"] = hex32(wit.x);
    out[hex32(val)] = entry;
  }
  return out;
}

}  // namespace

json dreport_to_json(const DReport& r) {
  json j;
  j["schema"] = "dreport/1";
  j["n"] = r.n;
  j["m"] = r.m;
  j["method"] = method_name(r.method);
  j["verdict"] = r.is_d_function ? "D-function" : "not-D-function";
  j["covered"] = r.covered;
  j["missing_total"] = r.missing_total;
  json missing = json::array();
  for (u32 v : r.missing) missing.push_back(hex32(v));
  j["missing"] = missing;
  j["missing_truncated"] = r.missing_truncated;
  j["witnesses"] = witnesses_to_json(r.witnesses);
  if (r.field_modulus) {
    j["modulus"] = word_to_hex(*r.field_modulus);
    j["modulus_poly"] = poly_to_string(*r.field_modulus);
  } else {
    j["modulus"] = nullptr;
    j["modulus_poly"] = nullptr;
  }
  j["provenance"] = r.provenance;
  j["threads"] = r.threads;
  j["runtime_note"] = r.runtime_note;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string dreport_schema_errors(const json& j) {
  std::ostringstream err;
  auto need = [&](const char* key, json::value_t type, bool nullable = false) {
    if (!j.contains(key)) {
      err << "missing field '" << key << "'; ";
      return;
    }
    if (nullable && j[key].is_null()) return;
    if (j[key].type() != type &&
        !(type == json::value_t::number_unsigned && j[key].is_number_integer()))
      err << "field '" << key << "' has wrong type; ";
  };
  need("schema", json::value_t::string);
  if (j.contains("schema") && j["schema"] != "dreport/1") err << "schema must be dreport/1; ";
  need("n", json::value_t::number_unsigned);
  need("m", json::value_t::number_unsigned);
  need("method", json::value_t::string);
  need("verdict", json::value_t::string);
  need("covered", json::value_t::number_unsigned);
  need("missing_total", json::value_t::number_unsigned);
  need("missing", json::value_t::array);
  need("witnesses", json::value_t::object);
  need("modulus", json::value_t::string, /*nullable=*/true);
  need("provenance", json::value_t::string);
  need("threads", json::value_t::number_unsigned);
  need("elapsed_ms", json::value_t::number_float);
  if (j.contains("verdict") && j["verdict"].is_string()) {
    const std::string v = j["verdict"];
    if (v != "D-function" && v != "not-D-function") err << "bad verdict '" << v << "'; ";
  }
  return err.str();
}

AnalysisReport analyze_function(const BuiltFunction& built, const std::string& spec_string,
                                const AnalyzeOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const VBF& f = built.f;
  AnalysisReport rep;
  rep.spec_string = spec_string;
  rep.n = f.n;
  rep.m = f.m;
  rep.field_modulus = f.field_modulus;
  rep.provenance = f.provenance;
  rep.warning = built.warning;
  rep.threads = opts.check.threads < 1 ? 1 : opts.check.threads;

  rep.degree = degree(f);
  const bool quadratic = rep.degree <= 2;
  rep.delta = differential_uniformity(f, rep.threads);
  rep.apn = rep.delta == 2;
  rep.nl = nonlinearity(f, rep.threads);

  const PlateauedProfile profile = plateaued_profile(f, /*with_structure=*/false, rep.threads);
  rep.plateaued = profile.is_plateaued;
  rep.bent_count = profile.bent_set_size;
  for (u64 v = 1; v < profile.amplitude.size(); ++v) {
    if (profile.amplitude[v])
      ++rep.amplitude_histogram[*profile.amplitude[v]];
    else
      ++rep.not_plateaued_components;
  }

  std::vector<DMethod> methods = opts.methods;
  if (methods.empty()) {
    if (opts.all_methods) {
      methods.push_back(DMethod::bruteforce);
      methods.push_back(DMethod::ddt);
      if (f.n + f.m <= guard_bits(28)) methods.push_back(DMethod::moment4);
      if (quadratic) {
        if (f.n + f.m <= guard_bits(28)) methods.push_back(DMethod::moment3_quadratic);
        methods.push_back(DMethod::hyperplane_quadratic);
        methods.push_back(DMethod::anf_span);
      }
      if (rep.plateaued) methods.push_back(DMethod::plateaued);
    } else {
      methods.push_back(quadratic          ? DMethod::hyperplane_quadratic
                        : (3 * f.n <= 24) ? DMethod::bruteforce
                                          : DMethod::ddt);
    }
  }

  for (DMethod m : methods) {
    switch (m) {
      case DMethod::bruteforce:
        rep.d_reports.push_back(d_check_bruteforce(f, opts.check));
        break;
      case DMethod::ddt:
        rep.d_reports.push_back(d_check_ddt(f, opts.check));
        break;
      case DMethod::moment4:
        rep.d_reports.push_back(d_check_moment4(f, opts.check));
        break;
      case DMethod::moment3_quadratic:
        rep.d_reports.push_back(d_check_moment3_quadratic(f, opts.check));
        break;
      case DMethod::hyperplane_quadratic:
        rep.d_reports.push_back(d_check_hyperplane_quadratic(f, opts.check));
        break;
      case DMethod::anf_span: {
        QuadraticAnf anf = built.anf ? *built.anf : to_quadratic_anf(f);
        rep.d_reports.push_back(d_check_anf_span(anf, opts.check));
        break;
      }
      case DMethod::plateaued:
        rep.d_reports.push_back(d_check_plateaued(f, opts.check));
        break;
    }
  }
  if (rep.d_reports.empty()) throw error(errc::internal, "no D-check method selected");

  rep.is_d_function = rep.d_reports.front().is_d_function;
  for (const DReport& r : rep.d_reports) {
    if (r.is_d_function != rep.is_d_function) {
      std::ostringstream dump;
      dump << "method verdicts disagree:";
      for (const DReport& d : rep.d_reports)
        dump << " " << method_name(d.method) << "="
             << (d.is_d_function ? "D-function" : "not-D-function") << " (covered " << d.covered
             << "/" << (u64{1} << d.m) << ")";
      throw error(errc::internal, dump.str());
    }
  }

  if (rep.apn && rep.is_d_function && (quadratic ? f.n > 3 : f.n > 2)) {
    rep.bounds = dimension_bounds(f.n, quadratic);
    rep.bounds_ok = rep.m >= rep.bounds->m_min && rep.m <= rep.bounds->m_max;
  }

  rep.total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

json analysis_to_json(const AnalysisReport& r) {
  json j;
  j["schema"] = "analysis/1";
  j["spec"] = r.spec_string;
  j["n"] = r.n;
  j["m"] = r.m;
  if (r.field_modulus) {
    j["modulus"] = word_to_hex(*r.field_modulus);
    j["modulus_poly"] = poly_to_string(*r.field_modulus);
  } else {
    j["modulus"] = nullptr;
    j["modulus_poly"] = nullptr;
  }
  j["provenance"] = r.provenance;
  if (!r.warning.empty()) j["warning"] = r.warning;
  j["degree"] = r.degree;
  j["delta"] = r.delta;
  j["nonlinearity"] = r.nl;
  j["is_apn"] = r.apn;
  json plat;
  plat["is_plateaued"] = r.plateaued;
  json hist = json::object();
  for (const auto& [lambda, count] : r.amplitude_histogram)
    hist[std::to_string(lambda)] = count;
  if (r.not_plateaued_components) hist["none"] = r.not_plateaued_components;
  plat["amplitude_histogram"] = hist;
  plat["bent_count"] = r.bent_count;
  j["plateaued"] = plat;
  json reports = json::array();
  json timings = json::object();
  for (const DReport& d : r.d_reports) {
    json dj = dreport_to_json(d);
    timings[method_name(d.method)] = dj["elapsed_ms"];
    dj["elapsed_ms"] = 0.0;  // per-method wall time lives under timings
    reports.push_back(dj);
  }
  j["d_reports"] = reports;
  j["verdict"] = r.is_d_function ? "D-function" : "not-D-function";
  if (r.bounds) {
    j["bounds"] = {{"m_min", r.bounds->m_min}, {"m_max", r.bounds->m_max}, {"ok", r.bounds_ok}};
  } else {
    j["bounds"] = nullptr;
  }
  j["threads"] = r.threads;
  timings["total_ms"] = r.total_ms;
  j["timings"] = timings;
  return j;
}

std::string analysis_schema_errors(const json& j) {
  std::ostringstream err;
  for (const char* key : {"schema", "spec", "n", "m", "modulus", "provenance", "degree", "delta",
                          "nonlinearity", "is_apn", "plateaued", "d_reports", "verdict", "bounds",
                          "threads", "timings"})
    if (!j.contains(key)) err << "missing field '" << key << "'; ";
  if (j.contains("schema") && j["schema"] != "analysis/1") err << "schema must be analysis/1; ";
  if (j.contains("d_reports")) {
    for (const json& d : j["d_reports"]) {
      const std::string sub = dreport_schema_errors(d);
      if (!sub.empty()) {
        err << "d_report invalid: " << sub;
        break;
      }
    }
  }
  return err.str();
}

json moment_report_to_json(const MomentIdentityReport& r) {
  auto item = [](const MomentIdentityReport::Item& it) {
    json j;
    j["name"] = it.name;
    j["applicable"] = it.applicable;
    if (!it.applicable) {
      j["skip_reason"] = it.skip_reason;
    } else {
      j["holds"] = it.holds;
      if (!it.holds) {
        j["first_mismatch"] = word_to_hex(it.first_mismatch);
        j["lhs"] = it.lhs;
        j["rhs"] = it.rhs;
      }
    }
    return j;
  };
  json j;
  j["schema"] = "moments/1";
  j["identities"] =
      json::array({item(r.fourth_moment), item(r.third_moment_quadratic), item(r.plateaued_amplitudes)});
  j["all_applicable_hold"] = r.all_applicable_hold();
  return j;
}

json omega_report_to_json(const OmegaReport& r) {
  json j;
  j["schema"] = "omega/1";
  j["n"] = r.n;
  j["m"] = r.m;
  j["verdict"] = r.is_d_function ? "D-function" : "not-D-function";
  j["bent_count"] = r.bent_count;
  j["nonbent_count"] = r.nonbent_count;
  j["min_omega"] = r.min_omega;
  j["argmin_w"] = word_to_hex(r.argmin_w);
  j["threshold"] = ((u64{1} << r.n) - 1) / 3;
  return j;
}

std::string render_dreport_text(const DReport& r) {
  std::ostringstream os;
  os << "method " << method_name(r.method) << ": "
     << (r.is_d_function ? "D-function" : "not-D-function") << " (covered " << r.covered << "/"
     << (u64{1} << r.m) << ")\n";
  if (!r.missing.empty()) {
    os << "  missing (" << r.missing_total << (r.missing_truncated ? ", truncated" : "") << "):";
    for (u32 v : r.missing) os << " " << word_to_hex(v);
    os << "\n";
  }
  if (!r.witnesses.empty()) os << "  witnesses: " << r.witnesses.size() << " recorded\n";
  os << "  " << r.runtime_note << "\n";
  return os.str();
}

std::string render_analysis_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "function " << r.spec_string << " : (" << r.n << "," << r.m << ")-function\n";
  if (r.field_modulus)
    os << "  modulus " << word_to_hex(*r.field_modulus) << " (" << poly_to_string(*r.field_modulus)
       << ")\n";
  if (!r.warning.empty()) os << "  warning: " << r.warning << "\n";
  os << "  degree " << r.degree << ", delta " << r.delta << (r.apn ? " (APN)" : "")
     << ", nonlinearity " << r.nl << "\n";
  os << "  plateaued: " << (r.plateaued ? "yes" : "no") << ", bent components " << r.bent_count
     << "\n";
  for (const DReport& d : r.d_reports) os << render_dreport_text(d);
  if (r.bounds)
    os << "  bounds: " << r.bounds->m_min << " <= m <= " << r.bounds->m_max
       << (r.bounds_ok ? " (ok)" : " (VIOLATED)") << "\n";
  os << "verdict: " << (r.is_d_function ? "D-function" : "not-D-function") << "\n";
  return os.str();
}

}  // namespace dillonlab
