#pragma once

#include <iosfwd>
#include <string>

#include "dillonlab/vbf.hpp"

namespace dillonlab {

// Truth-table file: header "vbf n=<n> m=<m>", then 2^n hex words, one per
// line, in index order.
void write_truth_table(std::ostream& os, const VBF& f);
VBF read_truth_table(std::istream& is);
void write_truth_table_file(const std::string& path, const VBF& f);
VBF read_truth_table_file(const std::string& path);

// Quadratic ANF file: header "anf n=<n> m=<m>" (the line format alone leaves
// the dimensions ambiguous), then lines "i j <hexword>" for quadratic terms
// (1-based, i < j), "k <hexword>" for linear terms, "0 <hexword>" for the
// constant.
void write_anf(std::ostream& os, const QuadraticAnf& anf);
QuadraticAnf read_anf(std::istream& is);
void write_anf_file(const std::string& path, const QuadraticAnf& anf);
QuadraticAnf read_anf_file(const std::string& path);

}  // namespace dillonlab
