#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hyperword {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of |x|, finite for any nonzero x regardless of size.
double log_abs(const BigInt& x);

// d x d integer matrix, row-major. Entries never round.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(int dim);
  ExactMatrix(int dim, std::vector<BigInt> entries);
  ExactMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static ExactMatrix identity(int dim);
  // E_ij(t): identity plus t at row i, column j. Indices are 1-based.
  static ExactMatrix elementary(int dim, int i, int j, const BigInt& t);

  int dim() const { return dim_; }
  const BigInt& operator()(int r, int c) const { return a_[r * dim_ + c]; }
  BigInt& operator()(int r, int c) { return a_[r * dim_ + c]; }
  const std::vector<BigInt>& entries() const { return a_; }

  bool is_identity() const;
  BigInt determinant() const;
  ExactMatrix transpose() const;
  ExactMatrix operator-() const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  int dim_ = 0;
  std::vector<BigInt> a_;
};

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b);
inline ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) { return mat_mul(a, b); }

// Throws std::domain_error unless det(a) == 1.
ExactMatrix mat_inv(const ExactMatrix& a);

// Largest singular value. Overflows to +inf only when the norm itself
// exceeds the double range; log_operator_norm stays finite.
double operator_norm(const ExactMatrix& a);
double log_operator_norm(const ExactMatrix& a);

BigInt max_abs_entry(const ExactMatrix& a);

std::string to_string(const ExactMatrix& a);

// Coset of SL(d,Z) modulo {±I}. For even d the first nonzero entry of the
// representative (row-major) is positive; for odd d the coset is a single matrix.
class PslElement {
 public:
  PslElement() = default;
  explicit PslElement(const ExactMatrix& m);

  const ExactMatrix& rep() const { return rep_; }
  int dim() const { return rep_.dim(); }
  bool is_identity() const { return rep_.is_identity(); }

  friend bool operator==(const PslElement&, const PslElement&) = default;

 private:
  ExactMatrix rep_;
};

PslElement psl_canonicalize(const ExactMatrix& a);
PslElement operator*(const PslElement& a, const PslElement& b);
PslElement inverse(const PslElement& a);

struct Generator {
  std::string name;
  PslElement element;
};

// A letter is a generator index with exponent +1 or -1.
struct Letter {
  int gen = 0;
  int exp = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

class GeneratorSet {
 public:
  GeneratorSet(int dim, std::vector<Generator> gens);

  // The standard set: unit upper elementary matrices, the determinant-1
  // permutation matrices other than I, and every sign-adjusted odd permutation
  // matrix of determinant 1, deduplicated as PSL cosets.
  static GeneratorSet sigma(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }

  // Matrix of a letter (generator or its inverse).
  const ExactMatrix& matrix(Letter l) const;
  // Letter whose matrix equals m as a PSL coset, if any.
  std::optional<Letter> find(const ExactMatrix& m) const;
  std::optional<int> index_of(const std::string& name) const;

  GeneratorSet with(const Generator& extra) const;

 private:
  int dim_;
  std::vector<Generator> gens_;
  std::vector<ExactMatrix> inverses_;
};

}  // namespace hyperword
