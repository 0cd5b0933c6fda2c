#pragma once

// The tessellation of U² by images γT of the fundamental domain
// T = {|Re z| < 1/2, |z| > 1} under PSL(2,Z).

#include "hyperword/exact_matrix.hpp"
#include "hyperword/word.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace hyperword {

using Complex = std::complex<double>;

// Σ₂ = {u, v}: generator 0 is u = [[1,1],[0,1]], generator 1 is v = [[0,1],[-1,0]].
const GeneratorSet& sigma2();
ExactMatrix u_power(const BigInt& n);
ExactMatrix v_matrix();

// The base point p₀ = 2i.
inline constexpr Complex p0{0.0, 2.0};

Complex act_on(const ExactMatrix& g, Complex z);

struct Tile {
  PslElement label;  // the tile is label·T
  friend bool operator==(const Tile&, const Tile&) = default;
};

bool in_fundamental_domain(Complex z, bool closed);

struct Reduction {
  PslElement gamma;
  Complex z0;  // z == gamma·z0, z0 in the closed domain
};
Reduction reduce_to_T(Complex z);

// d_U(z, p0) < d_U(z, γ p0).
bool dirichlet_halfspace_contains(Complex z, const PslElement& g, Complex base = p0);

// Side crossings of a traced segment, run-length encoded. Steps of one kind
// are u, u⁻¹ or v; a run of u's has count k ≥ 1.
enum class Step { u, u_inv, v };
struct StepRun {
  Step step;
  BigInt count;
};

// Crossings of the segment from 2i to δ·2i, computed in exact rational
// arithmetic. Runs of translations are jumped over in O(log) time, so the
// result stays small even when the tile count is huge.
std::vector<StepRun> trace_steps(const ExactMatrix& delta);

// Tiles met by the segment [z, w]; double precision, vertex passages within
// Tolerances::vertex_passage are routed counterclockwise.
std::vector<Tile> geodesic_tile_sequence(Complex z, Complex w);
// Tiles met by [2i, δ·2i], exact.
std::vector<Tile> geodesic_tile_sequence(const ExactMatrix& delta);

std::vector<Tile> tiles_from_steps(const PslElement& start, const std::vector<StepRun>& steps);

// Throws std::invalid_argument when consecutive tiles are not adjacent.
Word word_from_tiles(const std::vector<Tile>& tiles);

struct RTerm {
  enum class Kind { V, U } kind;
  BigInt n = 0;  // U terms only, never zero

  static RTerm V() { return {Kind::V, 0}; }
  static RTerm U(const BigInt& n) { return {Kind::U, n}; }
  ExactMatrix matrix() const;
  friend bool operator==(const RTerm&, const RTerm&) = default;
};

// Merges adjacent u^{±1} letters into U(n); v v and U(n) U(-n) cancel (PSL).
std::vector<RTerm> r_form(const Word& w);
std::vector<RTerm> r_form(const std::vector<StepRun>& steps);
// r-form of the tile walk from 2i to δ·2i.
std::vector<RTerm> r_form_of(const ExactMatrix& delta);

ExactMatrix product(const std::vector<RTerm>& rform);

double f_sum(const std::vector<RTerm>& rform);
double alpha_length(const std::vector<RTerm>& rform, Complex base = p0);

// d_U(2i, δ·2i) from cosh d = (4a² + b² + 16c² + 4d²)/8; finite for any entries.
double dist_from_p0(const ExactMatrix& delta);

struct SvgRegion {
  double re_min = -2, re_max = 2, im_max = 2.5;
  double scale = 200;  // pixels per unit
};

// Tiles reachable by words of length <= depth in u^{±1}, v whose vertices
// reach into [re_min, re_max].
std::vector<Tile> tiles_in_region(double re_min, double re_max, int depth);

std::string svg_emit(const SvgRegion& region, const std::vector<Tile>* tiles = nullptr,
                     std::optional<std::pair<Complex, Complex>> geodesic = std::nullopt);

}  // namespace hyperword
