#pragma once

#include <random>
#include <string>
#include <vector>

#include "dillonlab/catalog.hpp"
#include "dillonlab/dproperty.hpp"

namespace dillonlab {

/// One named reproduction suite: a list of claims, each checked exactly.
struct ExperimentResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;
  double elapsed_s = 0.0;
};

std::vector<std::string> experiment_names();
ExperimentResult run_experiment(const std::string& name, int threads);

/// Seeded cross-validation corpus: random quadratics, bounded-degree cubics,
/// unrestricted random tables, and catalog functions with their trace-zero
/// and hyperplane restrictions. All entries satisfy n <= 6, m <= 8.
/// The reduced corpus is a fast subset for unit-level runs.
struct CorpusEntry {
  BuiltFunction fn;
  std::string label;
};

std::vector<CorpusEntry> build_corpus(bool reduced, u64 seed = 0x9e3779b97f4a7c15ULL);

// Deterministic generator helpers shared by the corpus and the test suites.
VBF random_table_vbf(unsigned n, unsigned m, u64 seed);
VBF random_bounded_degree_vbf(unsigned n, unsigned m, unsigned max_degree, u64 seed);
AffineMap random_invertible_affine(unsigned dim, std::mt19937_64& rng);
AffineMap random_affine(unsigned dim_in, unsigned dim_out, std::mt19937_64& rng);

}  // namespace dillonlab
