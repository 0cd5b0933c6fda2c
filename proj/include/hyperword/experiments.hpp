#pragma once

// Desk-scale experiments comparing the word and geometric distances.

#include "hyperword/json_io.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hyperword {

struct ExperimentReport {
  std::string name;
  json params;  // inputs, including the seed where one is used
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  json summary;
  bool passed = true;  // every internal assertion held
  std::vector<std::string> failures;

  std::string to_csv() const;
  json to_json() const;
};

// Rows (n, word, geometric, ratio, log_growth) with
// word = d_Σ₂(1,uⁿ) (BFS for n <= 12, n beyond), geometric = d_R(1,uⁿ),
// ratio = word/geometric, log_growth = geometric / acosh(1 + n²/8).
// n runs over 1..12 and then 1, 2, 5 times powers of ten up to n_max.
ExperimentReport experiment_d2(std::int64_t n_max);

// Rows (trial, log_norm, length, geometric, length_ratio, geometric_ratio)
// for random products of gen_len letters from Σ₃ ∪ Σ₃⁻¹, with
// length_ratio = length / log max(2, ||γ||) and geometric_ratio = d_R / length.
// Identity products are skipped and counted.
ExperimentReport experiment_d3(int trials, int gen_len, std::uint64_t seed);

// Rows (k, l, word, geometric, ratio) for the translation lattice Z² of the
// Euclidean plane with generators s = (1,0), t = (0,1).
ExperimentReport experiment_lattice(int k_max);

// Random product of len letters drawn uniformly from gens ∪ gens⁻¹.
template <typename Rng>
ExactMatrix random_product(const GeneratorSet& gens, int len, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, 2 * gens.size() - 1);
  ExactMatrix m = ExactMatrix::identity(gens.dim());
  for (int i = 0; i < len; ++i) {
    std::size_t k = pick(rng);
    m = m * gens.matrix({static_cast<int>(k / 2), k % 2 ? -1 : 1});
  }
  return m;
}

}  // namespace hyperword
