#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dillonlab/experiments.hpp"
#include "dillonlab/io.hpp"
#include "dillonlab/report.hpp"

namespace dl = dillonlab;

namespace {

struct CommonArgs {
  std::string output = "text";
  int threads = 0;  // 0 = machine parallelism
  std::string modulus_hex;
  bool witnesses = false;
  bool full_missing = false;

  int resolved_threads() const { return threads > 0 ? threads : omp_get_max_threads(); }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--output", args.output, "Report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--threads", args.threads,
                  "Scan parallelism (default: machine parallelism; 1 = deterministic witnesses)");
  cmd->add_option("--modulus", args.modulus_hex, "Field modulus override (hex word)");
  cmd->add_flag("--witnesses", args.witnesses, "Record one replayable witness per covered value");
  cmd->add_flag("--full-missing", args.full_missing, "List every missing value, not just 32");
}

dl::FamilySpec parse_spec_with_overrides(const std::string& text, const CommonArgs& args) {
  dl::FamilySpec spec = dl::parse_family_spec(text);
  if (!args.modulus_hex.empty()) {
    const std::string h = args.modulus_hex;
    spec.modulus = std::stoull(h.rfind("0x", 0) == 0 ? h.substr(2) : h, nullptr, 16);
  }
  return spec;
}

dl::DCheckOptions check_options(const CommonArgs& args) {
  dl::DCheckOptions opts;
  opts.witnesses = args.witnesses;
  opts.full_missing = args.full_missing;
  opts.threads = args.resolved_threads();
  return opts;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw dl::error(dl::errc::invalid_arguments, "cannot open '" + path + "'");
  return file;
}

int run_analyze(const std::string& spec_text, const std::string& methods_arg,
                const CommonArgs& args) {
  dl::AnalyzeOptions opts;
  opts.check = check_options(args);
  if (methods_arg == "all") {
    opts.all_methods = true;
  } else if (!methods_arg.empty() && methods_arg != "auto") {
    std::istringstream ss(methods_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto m = dl::method_from_name(tok);
      if (!m) throw dl::error(dl::errc::invalid_arguments, "unknown method '" + tok + "'");
      opts.methods.push_back(*m);
    }
  }
  const dl::FamilySpec spec = parse_spec_with_overrides(spec_text, args);
  const dl::BuiltFunction built = dl::build_function(spec);
  // Requested-method applicability is a hard precondition, not a silent skip.
  const bool quadratic = dl::is_quadratic(built.f);
  for (dl::DMethod m : opts.methods) {
    if ((m == dl::DMethod::moment3_quadratic || m == dl::DMethod::hyperplane_quadratic ||
         m == dl::DMethod::anf_span) &&
        !quadratic)
      throw dl::error(dl::errc::precondition,
                      std::string("method ") + dl::method_name(m) + " needs a quadratic function");
  }
  const dl::AnalysisReport rep = dl::analyze_function(built, spec.canonical(), opts);
  if (args.output == "json")
    std::cout << dl::analysis_to_json(rep).dump(2) << "\n";
  else
    std::cout << dl::render_analysis_text(rep);
  return rep.is_d_function ? 0 : 1;
}

int run_dcheck(const std::string& spec_text, const std::string& method_arg,
               const CommonArgs& args) {
  const auto method = dl::method_from_name(method_arg);
  if (!method) throw dl::error(dl::errc::invalid_arguments, "unknown method '" + method_arg + "'");
  const dl::FamilySpec spec = parse_spec_with_overrides(spec_text, args);
  const dl::BuiltFunction built = dl::build_function(spec);
  const dl::DCheckOptions opts = check_options(args);
  dl::DReport report;
  switch (*method) {
    case dl::DMethod::bruteforce: report = dl::d_check_bruteforce(built.f, opts); break;
    case dl::DMethod::ddt: report = dl::d_check_ddt(built.f, opts); break;
    case dl::DMethod::moment4: report = dl::d_check_moment4(built.f, opts); break;
    case dl::DMethod::moment3_quadratic:
      report = dl::d_check_moment3_quadratic(built.f, opts);
      break;
    case dl::DMethod::hyperplane_quadratic:
      report = dl::d_check_hyperplane_quadratic(built.f, opts);
      break;
    case dl::DMethod::anf_span: {
      const dl::QuadraticAnf anf = built.anf ? *built.anf : dl::to_quadratic_anf(built.f);
      report = dl::d_check_anf_span(anf, opts);
      report.provenance = built.f.provenance;
      report.field_modulus = built.f.field_modulus;
      break;
    }
    case dl::DMethod::plateaued: report = dl::d_check_plateaued(built.f, opts); break;
  }
  if (args.output == "json")
    std::cout << dl::dreport_to_json(report).dump(2) << "\n";
  else
    std::cout << dl::render_dreport_text(report);
  return report.is_d_function ? 0 : 1;
}

int run_ddt(const std::string& spec_text, const std::string& a_hex, const std::string& out_path,
            const CommonArgs& args) {
  const dl::BuiltFunction built = dl::build_function(parse_spec_with_overrides(spec_text, args));
  const dl::u32 a = static_cast<dl::u32>(std::stoull(
      a_hex.rfind("0x", 0) == 0 ? a_hex.substr(2) : a_hex, nullptr, 16));
  if (a == 0 || a >= built.f.domain())
    throw dl::error(dl::errc::invalid_arguments, "difference a must satisfy 0 < a < 2^n");
  const dl::DdtRow row = dl::ddt_row(built.f, a);
  std::ofstream file;
  std::ostream& os = open_sink(file, out_path);
  os << "b,count\n";
  for (size_t b = 0; b < row.counts.size(); ++b) os << b << "," << row.counts[b] << "\n";
  return 0;
}

int run_walsh(const std::string& spec_text, const std::string& v_hex, const std::string& out_path,
              const CommonArgs& args) {
  const dl::BuiltFunction built = dl::build_function(parse_spec_with_overrides(spec_text, args));
  const dl::u64 v = std::stoull(v_hex.rfind("0x", 0) == 0 ? v_hex.substr(2) : v_hex, nullptr, 16);
  if (v >= (dl::u64{1} << built.f.m))
    throw dl::error(dl::errc::invalid_arguments, "component v must satisfy v < 2^m");
  const dl::WalshRow row = dl::walsh_row(built.f, static_cast<dl::u32>(v));
  std::ofstream file;
  std::ostream& os = open_sink(file, out_path);
  os << "u,walsh\n";
  for (size_t u = 0; u < row.values.size(); ++u) os << u << "," << row.values[u] << "\n";
  return 0;
}

int run_restrict(const std::string& spec_text, const std::string& to, const std::string& out_path,
                 const CommonArgs& args) {
  dl::FamilySpec spec = parse_spec_with_overrides(spec_text, args);
  if (to == "t0") {
    spec.restriction = dl::Restriction{dl::Restriction::Kind::trace_zero, 1};
  } else if (to.rfind("h:", 0) == 0) {
    spec.restriction = dl::Restriction{
        dl::Restriction::Kind::hyperplane,
        static_cast<dl::u32>(std::stoull(to.substr(2), nullptr, 16))};
  } else {
    throw dl::error(dl::errc::invalid_arguments, "--to must be t0 or h:<hex>");
  }
  const dl::BuiltFunction built = dl::build_function(spec);
  dl::write_truth_table_file(out_path, built.f);
  std::cout << "wrote (" << built.f.n << "," << built.f.m << ")-function to " << out_path << "\n";
  return 0;
}

int run_moments(const std::string& spec_text, const std::string& sample_arg,
                const CommonArgs& args) {
  const dl::BuiltFunction built = dl::build_function(parse_spec_with_overrides(spec_text, args));
  std::optional<std::vector<dl::u32>> sample;
  if (!sample_arg.empty()) {
    sample.emplace();
    std::istringstream ss(sample_arg);
    std::string tok;
    while (std::getline(ss, tok, ','))
      sample->push_back(static_cast<dl::u32>(std::stoull(
          tok.rfind("0x", 0) == 0 ? tok.substr(2) : tok, nullptr, 16)));
  }
  const dl::MomentIdentityReport rep =
      dl::verify_moment_identities(built.f, sample, args.resolved_threads());
  if (args.output == "json") {
    std::cout << dl::moment_report_to_json(rep).dump(2) << "\n";
  } else {
    for (const auto* item : {&rep.fourth_moment, &rep.third_moment_quadratic,
                             &rep.plateaued_amplitudes}) {
      if (!item->applicable)
        std::cout << "skip  " << item->name << " (" << item->skip_reason << ")\n";
      else if (item->holds)
        std::cout << "equal " << item->name << "\n";
      else
        std::cout << "DIFFER " << item->name << " at " << dl::word_to_hex(item->first_mismatch)
                  << ": lhs " << item->lhs << " rhs " << item->rhs << "\n";
    }
  }
  return rep.all_applicable_hold() ? 0 : 1;
}

int run_reproduce(const std::string& name, const CommonArgs& args) {
  const dl::ExperimentResult res = dl::run_experiment(name, args.resolved_threads());
  for (const std::string& line : res.lines) std::cout << line << "\n";
  std::cout << (res.pass ? "PASS " : "FAIL ") << res.name << " (" << res.elapsed_s << " s)\n";
  return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dillonlab: D-property and spectral analysis of vectorial Boolean functions"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string spec_text, methods_arg, method_arg, a_hex, v_hex, out_path, to_arg, sample_arg,
      experiment;

  CLI::App* analyze = app.add_subcommand("analyze", "Full analysis of one function");
  analyze->add_option("spec", spec_text, "Function spec, e.g. gold:n=7,i=1,restrict=t0")
      ->required();
  analyze->add_option("--methods", methods_arg, "auto (default), all, or a comma list");
  add_common(analyze, args);

  CLI::App* dcheck = app.add_subcommand("dcheck", "Run a single D-property checker");
  dcheck->add_option("spec", spec_text)->required();
  dcheck->add_option("--method", method_arg, "bruteforce|ddt|moment4|moment3-quadratic|"
                                             "hyperplane-quadratic|anf-span|plateaued")
      ->required();
  add_common(dcheck, args);

  CLI::App* ddt = app.add_subcommand("ddt", "Dump one DDT row as CSV");
  ddt->add_option("spec", spec_text)->required();
  ddt->add_option("--a", a_hex, "Input difference (hex, nonzero)")->required();
  ddt->add_option("--out", out_path, "Output path (default stdout)");
  add_common(ddt, args);

  CLI::App* walsh = app.add_subcommand("walsh", "Dump one Walsh row as CSV");
  walsh->add_option("spec", spec_text)->required();
  walsh->add_option("--v", v_hex, "Component selector (hex)")->required();
  walsh->add_option("--out", out_path, "Output path (default stdout)");
  add_common(walsh, args);

  CLI::App* restrict_cmd = app.add_subcommand("restrict", "Write a restricted truth table");
  restrict_cmd->add_option("spec", spec_text)->required();
  restrict_cmd->add_option("--to", to_arg, "t0 or h:<hex>")->required();
  restrict_cmd->add_option("--out", out_path)->required();
  add_common(restrict_cmd, args);

  CLI::App* moments = app.add_subcommand("moments", "Verify the moment/spectrum identities");
  moments->add_option("spec", spec_text)->required();
  moments->add_option("--sample", sample_arg, "Comma list of b values (hex); default: all");
  add_common(moments, args);

  CLI::App* reproduce = app.add_subcommand("reproduce", "Run a named reproduction experiment");
  std::string names;
  for (const std::string& n : dl::experiment_names()) names += (names.empty() ? "" : "|") + n;
  reproduce->add_option("experiment", experiment, names)->required();
  add_common(reproduce, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(spec_text, methods_arg, args);
    if (*dcheck) return run_dcheck(spec_text, method_arg, args);
    if (*ddt) return run_ddt(spec_text, a_hex, out_path, args);
    if (*walsh) return run_walsh(spec_text, v_hex, out_path, args);
    if (*restrict_cmd) return run_restrict(spec_text, to_arg, out_path, args);
    if (*moments) return run_moments(spec_text, sample_arg, args);
    if (*reproduce) return run_reproduce(experiment, args);
  } catch (const dl::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
