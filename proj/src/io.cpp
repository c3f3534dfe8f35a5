#include "dillonlab/io.hpp"

#include <fstream>
#include <sstream>

namespace dillonlab {

namespace {

u64 parse_hex(const std::string& tok) {
  std::string t = tok;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  if (t.empty()) throw error(errc::parse_error, "empty hex word");
  u64 v = 0;
  for (char c : t) {
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      d = c - 'A' + 10;
    else
      throw error(errc::parse_error, "bad hex word '" + tok + "'");
    v = (v << 4) | static_cast<u64>(d);
  }
  return v;
}

std::pair<unsigned, unsigned> parse_header(std::istream& is, const std::string& tag) {
  std::string line;
  if (!std::getline(is, line)) throw error(errc::parse_error, "missing " + tag + " header");
  std::istringstream ls(line);
  std::string word, nfield, mfield;
  ls >> word >> nfield >> mfield;
  if (word != tag || nfield.rfind("n=", 0) != 0 || mfield.rfind("m=", 0) != 0)
    throw error(errc::parse_error, "expected header '" + tag + " n=<n> m=<m>', got '" + line + "'");
  return {static_cast<unsigned>(std::stoul(nfield.substr(2))),
          static_cast<unsigned>(std::stoul(mfield.substr(2)))};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw error(errc::invalid_arguments, "cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw error(errc::invalid_arguments, "cannot open '" + path + "' for reading");
  return is;
}

}  // namespace

void write_truth_table(std::ostream& os, const VBF& f) {
  os << "vbf n=" << f.n << " m=" << f.m << "\n";
  os << std::hex;
  for (u32 w : f.table) os << w << "\n";
  os << std::dec;
}

VBF read_truth_table(std::istream& is) {
  const auto [n, m] = parse_header(is, "vbf");
  if (n < 1 || n > 24) throw error(errc::parse_error, "truth table n out of range");
  std::vector<u32> words;
  words.reserve(size_t{1} << n);
  std::string tok;
  while (words.size() < (size_t{1} << n) && is >> tok)
    words.push_back(static_cast<u32>(parse_hex(tok)));
  if (words.size() != (size_t{1} << n))
    throw error(errc::parse_error, "truth table ended early: expected " +
                                       std::to_string(size_t{1} << n) + " words, got " +
                                       std::to_string(words.size()));
  return from_truth_table(n, m, std::move(words));
}

void write_truth_table_file(const std::string& path, const VBF& f) {
  auto os = open_out(path);
  write_truth_table(os, f);
}

VBF read_truth_table_file(const std::string& path) {
  auto is = open_in(path);
  VBF f = read_truth_table(is);
  f.provenance = "tt:" + path;
  return f;
}

void write_anf(std::ostream& os, const QuadraticAnf& anf) {
  os << "anf n=" << anf.n << " m=" << anf.m << "\n";
  os << std::hex;
  if (anf.a_const) os << "0 " << anf.a_const << "\n";
  for (unsigned k = 0; k < anf.n; ++k)
    if (anf.a_lin[k]) os << std::dec << (k + 1) << std::hex << " " << anf.a_lin[k] << "\n";
  for (const auto& [ij, c] : anf.a_quad)
    os << std::dec << (ij.first + 1) << " " << (ij.second + 1) << std::hex << " " << c << "\n";
  os << std::dec;
}

QuadraticAnf read_anf(std::istream& is) {
  const auto [n, m] = parse_header(is, "anf");
  if (n < 1 || n > 24 || m < 1 || m > 32) throw error(errc::parse_error, "anf dimensions out of range");
  QuadraticAnf anf;
  anf.n = n;
  anf.m = m;
  anf.a_lin.assign(n, 0);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() == 2) {
      const unsigned k = static_cast<unsigned>(std::stoul(toks[0]));
      const u32 c = static_cast<u32>(parse_hex(toks[1]));
      if (k == 0)
        anf.a_const = c;
      else if (k <= n)
        anf.a_lin[k - 1] = c;
      else
        throw error(errc::parse_error, "linear index out of range in '" + line + "'");
    } else if (toks.size() == 3) {
      const unsigned i = static_cast<unsigned>(std::stoul(toks[0]));
      const unsigned j = static_cast<unsigned>(std::stoul(toks[1]));
      if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw error(errc::parse_error, "bad quadratic indices in '" + line + "'");
      anf.set_quad(i - 1, j - 1, static_cast<u32>(parse_hex(toks[2])));
    } else {
      throw error(errc::parse_error, "unparseable anf line '" + line + "'");
    }
  }
  return anf;
}

void write_anf_file(const std::string& path, const QuadraticAnf& anf) {
  auto os = open_out(path);
  write_anf(os, anf);
}

QuadraticAnf read_anf_file(const std::string& path) {
  auto is = open_in(path);
  return read_anf(is);
}

}  // namespace dillonlab
