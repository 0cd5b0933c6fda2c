#pragma once

#include "hyperword/exact_matrix.hpp"

#include <vector>

namespace hyperword {

struct Word {
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  void append(const Word& w) { letters.insert(letters.end(), w.letters.begin(), w.letters.end()); }
  friend bool operator==(const Word&, const Word&) = default;
};

// Left-to-right product of the letters' matrices (generator representatives).
ExactMatrix evaluate(const Word& w, const GeneratorSet& gens);

Word inverse(const Word& w);

// Cancels adjacent x x⁻¹ pairs.
Word free_reduce(const Word& w);

// Generators named like "E13^-1 P231 ..." for printing.
std::string to_string(const Word& w, const GeneratorSet& gens);

}  // namespace hyperword
