#include "dillonlab/catalog.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "dillonlab/io.hpp"

namespace dillonlab {

VBF gold(unsigned n1, unsigned i, std::optional<u64> modulus) {
  if (n1 < 3 || i < 1 || i >= n1)
    throw error(errc::invalid_arguments,
                "gold needs n1 >= 3 and 1 <= i < n1, got n1=" + std::to_string(n1) +
                    ", i=" + std::to_string(i));
  const FieldCtx ctx = make_field(n1, modulus);
  VBF f = from_univariate(ctx, {{(u64{1} << i) + 1, 1}});
  std::ostringstream prov;
  prov << "gold:n=" << n1 << ",i=" << i << ",modulus=" << word_to_hex(ctx.modulus);
  f.provenance = prov.str();
  return f;
}

VBF x3_tr9(unsigned n1, std::optional<u64> modulus) {
  if (n1 < 3) throw error(errc::invalid_arguments, "x3_tr9 needs n1 >= 3");
  const FieldCtx ctx = make_field(n1, modulus);
  const u64 dom = u64{1} << n1;
  std::vector<u32> table(dom);
  for (u64 x = 0; x < dom; ++x) {
    const u32 xw = static_cast<u32>(x);
    table[x] = pow(ctx, xw, 3) ^ abs_trace(ctx, pow(ctx, xw, 9));
  }
  VBF f = from_truth_table(n1, n1, std::move(table));
  f.field_modulus = ctx.modulus;
  std::ostringstream prov;
  prov << "x3tr9:n=" << n1 << ",modulus=" << word_to_hex(ctx.modulus);
  f.provenance = prov.str();
  return f;
}

QuadraticAnf random_quadratic(unsigned n, unsigned m, u64 seed, std::optional<double> density) {
  if (n < 2) throw error(errc::invalid_arguments, "random quadratic needs n >= 2");
  if (m < 1 || m > 32) throw error(errc::invalid_arguments, "random quadratic needs 1 <= m <= 32");
  std::mt19937_64 rng(seed);
  const u32 mask = (m == 32) ? ~u32{0} : (u32{1} << m) - 1;
  auto draw = [&]() -> u32 {
    if (density) {
      const double gate = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const u32 value = static_cast<u32>(rng()) & mask;
      return gate < *density ? value : 0;
    }
    return static_cast<u32>(rng()) & mask;
  };
  QuadraticAnf anf;
  anf.n = n;
  anf.m = m;
  anf.a_lin.assign(n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) anf.set_quad(i, j, draw());
  for (unsigned k = 0; k < n; ++k) anf.a_lin[k] = draw();
  anf.a_const = 0;
  return anf;
}

bool FamilySpec::apn_expected() const {
  if (family == Family::gold) return std::gcd(i, n1) == 1;
  return true;
}

std::string FamilySpec::canonical() const {
  std::ostringstream os;
  switch (family) {
    case Family::gold:
      os << "gold:n=" << n1 << ",i=" << i;
      break;
    case Family::x3_tr9:
      os << "x3tr9:n=" << n1;
      break;
    case Family::truth_table:
      os << "tt:" << path;
      break;
    case Family::anf:
      os << "anf:" << path;
      break;
    case Family::random_quadratic:
      os << "rand2:n=" << n1 << ",m=" << m << ",seed=" << seed;
      if (density) os << ",density=" << *density;
      break;
    case Family::univariate:
      os << "univariate";
      break;
  }
  if (restriction) {
    if (restriction->kind == Restriction::Kind::trace_zero)
      os << ",restrict=t0";
    else
      os << ",restrict=h:" << word_to_hex(restriction->alpha);
  }
  if (modulus) os << ",modulus=" << word_to_hex(*modulus);
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

u64 parse_u64(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const u64 v = (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
                      ? std::stoull(s.substr(2), &pos, 16)
                      : std::stoull(s, &pos, 10);
    if ((s.rfind("0x", 0) == 0 ? pos + 2 : pos) != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw error(errc::parse_error, "bad " + what + " value '" + s + "'");
  }
}

}  // namespace

FamilySpec parse_family_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw error(errc::parse_error, "function spec needs the form family:params, got '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);

  FamilySpec spec;
  if (head == "tt" || head == "anf") {
    spec.family = head == "tt" ? Family::truth_table : Family::anf;
    spec.path = rest;
    if (spec.path.empty()) throw error(errc::parse_error, head + ": needs a file path");
    return spec;
  }
  if (head == "gold")
    spec.family = Family::gold;
  else if (head == "x3tr9")
    spec.family = Family::x3_tr9;
  else if (head == "rand2")
    spec.family = Family::random_quadratic;
  else
    throw error(errc::parse_error, "unknown family '" + head + "'");

  for (const std::string& part : split(rest, ',')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw error(errc::parse_error, "expected key=value, got '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string val = part.substr(eq + 1);
    if (key == "n")
      spec.n1 = static_cast<unsigned>(parse_u64(val, "n"));
    else if (key == "i")
      spec.i = static_cast<unsigned>(parse_u64(val, "i"));
    else if (key == "m")
      spec.m = static_cast<unsigned>(parse_u64(val, "m"));
    else if (key == "seed")
      spec.seed = parse_u64(val, "seed");
    else if (key == "density")
      spec.density = std::stod(val);
    else if (key == "modulus")
      spec.modulus = parse_u64(val, "modulus");
    else if (key == "restrict") {
      Restriction r;
      if (val == "t0") {
        r.kind = Restriction::Kind::trace_zero;
      } else if (val.rfind("h:", 0) == 0) {
        r.kind = Restriction::Kind::hyperplane;
        r.alpha = static_cast<u32>(parse_u64(val.substr(2), "restriction alpha"));
      } else {
        throw error(errc::parse_error, "restrict must be t0 or h:<hex>, got '" + val + "'");
      }
      spec.restriction = r;
    } else {
      throw error(errc::parse_error, "unknown key '" + key + "' in function spec");
    }
  }
  if (spec.n1 == 0) throw error(errc::parse_error, "function spec needs n=<bits>");
  if (spec.family == Family::random_quadratic && spec.m == 0)
    throw error(errc::parse_error, "rand2 needs m=<bits>");
  return spec;
}

BuiltFunction build_function(const FamilySpec& spec) {
  BuiltFunction out;
  switch (spec.family) {
    case Family::gold:
      out.f = gold(spec.n1, spec.i, spec.modulus);
      if (!spec.apn_expected())
        out.warning = "gcd(i, n1) != 1: this Gold map is not APN";
      break;
    case Family::x3_tr9:
      out.f = x3_tr9(spec.n1, spec.modulus);
      break;
    case Family::random_quadratic: {
      out.anf = random_quadratic(spec.n1, spec.m, spec.seed, spec.density);
      out.f = from_anf(*out.anf);
      break;
    }
    case Family::truth_table:
      out.f = read_truth_table_file(spec.path);
      break;
    case Family::anf: {
      out.anf = read_anf_file(spec.path);
      out.f = from_anf(*out.anf);
      break;
    }
    case Family::univariate:
      throw error(errc::invalid_arguments, "univariate specs are built programmatically");
  }
  if (spec.restriction) {
    if (!out.f.field_modulus)
      throw error(errc::invalid_arguments,
                  "restriction requires a field-based family (gold or x3tr9)");
    const FieldCtx ctx = make_field(out.f.n, out.f.field_modulus);
    const SubspaceBasis basis = spec.restriction->kind == Restriction::Kind::trace_zero
                                    ? trace_zero_basis(ctx)
                                    : hyperplane_basis(ctx, spec.restriction->alpha);
    out.f = restrict_to(out.f, basis);
    out.anf.reset();
  }
  out.f.provenance = spec.canonical();
  if (out.f.field_modulus) {
    // Canonical provenance pins the modulus even when it was defaulted.
    FamilySpec pinned = spec;
    pinned.modulus = out.f.field_modulus;
    out.f.provenance = pinned.canonical();
  }
  return out;
}

}  // namespace dillonlab
