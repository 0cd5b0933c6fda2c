#pragma once

// Word-metric algorithms on PSL(d,Z): breadth-first search, the
// factorization into SL(2,Z) blocks, and logarithmic-length words.

#include "hyperword/exact_matrix.hpp"
#include "hyperword/word.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace hyperword {

// Exact d_Σ(1, γ) when it is at most max_radius, std::nullopt otherwise.
// Throws std::length_error when the ball outgrows max_states.
std::optional<int> bfs_word_length(const PslElement& g, const GeneratorSet& gens, int max_radius,
                                   std::size_t max_states = 20000000);
std::optional<Word> bfs_shortest_word(const PslElement& g, const GeneratorSet& gens, int max_radius,
                                      std::size_t max_states = 20000000);

// The ball of radius r about 1 in the Cayley graph, with word lengths.
// distance() answers exactly up to r, and up to 2r by meeting in the middle.
class CayleyBall {
 public:
  CayleyBall(const GeneratorSet& gens, int radius, std::size_t max_states = 20000000);

  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ExactMatrix>& elements() const { return elements_; }
  const std::vector<int>& lengths() const { return lengths_; }

  std::optional<int> distance(const ExactMatrix& g) const;
  std::optional<int> distance_within_2r(const ExactMatrix& g) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<long long>& k) const;
  };
  std::optional<std::vector<long long>> key(const ExactMatrix& g) const;

  int dim_;
  int radius_;
  std::vector<ExactMatrix> elements_;
  std::vector<int> lengths_;
  std::unordered_map<std::vector<long long>, int, KeyHash> index_;
};

struct Bezout {
  BigInt u, v, a;  // u*y1 + v*yi == a == gcd(y1, yi) > 0
};

// Bézout coefficients with |u| <= max(1,|yi|) and |v| <= max(1,|y1|).
Bezout bounded_ext_gcd(const BigInt& y1, const BigInt& yi);

// γ_1, ..., γ_d with γ_d ⋯ γ_1 x = e_1. γ_1 is I or E_1j(1); γ_i (i >= 2)
// differs from I only in rows and columns 1 and i.
std::vector<ExactMatrix> reduce_unimodular_column(const std::vector<BigInt>& x);

// 5 (Σ x_j²)², the entry bound for the column reduction.
BigInt column_reduction_bound(const std::vector<BigInt>& x);

struct BlockFactor {
  ExactMatrix matrix;
  int s = 0, t = 0;  // 1-based support pair s < t; both 0 for the identity
};

// γ = δ_1 ⋯ δ_{d²}, each δ in a copy SL^{s,t}(2,Z).
std::vector<BlockFactor> factor_sl2_blocks(const ExactMatrix& g);

// The bound P(γ) on factor entries: a polynomial in max|γ_kl| obtained by
// following the entry growth of each reduction step.
BigInt factor_entry_bound(const ExactMatrix& g);

// The 2x2 block of m on rows/columns s, t (1-based).
ExactMatrix block_of(const ExactMatrix& m, int s, int t);
// Identity of size d with the 2x2 block b placed on rows/columns s, t.
ExactMatrix embed_block(const ExactMatrix& b, int d, int s, int t);

struct DigitExpansion {
  int sign = 1;
  std::vector<int> digits;  // digits[i] multiplies λ^(i+1)
};

// λ = (3 + √5)/2, the larger eigenvalue of A = [[2,1],[1,1]].
double lambda_value();

// Greedy digits with |Σ a_i λ^i - a| <= λ.
DigitExpansion greedy_lambda_digits(double a);

// Bound on the residual |w - v| left after one round of the expansion.
int residual_bound();

// Word over Σ₃ evaluating exactly to E_13(n).
Word u1_word(const BigInt& n);

// Signed permutation δ and sign σ with δ E_13(1) δ⁻¹ = E_ij(σ). Indices 1-based.
std::pair<ExactMatrix, int> conjugator(int i, int j, int d);

// Word over Σ_d evaluating exactly to E_ij(n): conj · u1_word(σn) · conj⁻¹.
Word conjugated_u1_word(int i, int j, const BigInt& n, int d);

// Fixed shortest word over Σ_d for [[0,1],[-1,0]] placed on rows/columns s, t.
Word v_block_word(int s, int t, int d);

// Word over Σ_d evaluating to ±γ, of length O(log ||γ||). Throws for d < 3.
Word short_word(const ExactMatrix& g);

// Σ_d letters whose matrices are the Σ_k letters of w placed in the top-left corner.
Word embed_word(const Word& w, const GeneratorSet& from, const GeneratorSet& to);

// The standard generating sets, built once.
const GeneratorSet& sigma(int d);

}  // namespace hyperword
