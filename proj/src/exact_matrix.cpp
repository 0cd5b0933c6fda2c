#include "hyperword/exact_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hyperword {

namespace {

void require_same_dim(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
}

// Multiply a by 2^-shift, keeping the sign, and convert.
double scaled_to_double(const BigInt& a, unsigned shift) {
  if (a == 0) return 0.0;
  BigInt m = boost::multiprecision::abs(a) >> shift;
  double v = m.convert_to<double>();
  return a < 0 ? -v : v;
}

unsigned bit_length(const BigInt& a) {
  if (a == 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(boost::multiprecision::abs(a))) + 1;
}

// Largest eigenvalue of the symmetric matrix b, returned as log.
double log_lambda_max(const std::vector<BigInt>& b, int d) {
  unsigned bits = 0;
  for (const auto& x : b) bits = std::max(bits, bit_length(x));
  if (bits == 0) return -std::numeric_limits<double>::infinity();
  unsigned shift = bits > 1000 ? bits - 1000 : 0;
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = scaled_to_double(b[r * d + c], shift);
  double lmax;
  if (d == 1) {
    lmax = m(0, 0);
  } else if (d == 2) {
    double p = m(0, 0), q = m(1, 1), r = m(0, 1);
    lmax = 0.5 * (p + q + std::hypot(p - q, 2.0 * r));
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    lmax = es.eigenvalues().maxCoeff();
  }
  return std::log(lmax) + shift * std::log(2.0);
}

}  // namespace

double log_abs(const BigInt& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  unsigned bits = bit_length(x);
  unsigned shift = bits > 900 ? bits - 900 : 0;
  return std::log(std::abs(scaled_to_double(x, shift))) + shift * std::log(2.0);
}

ExactMatrix::ExactMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
}

ExactMatrix::ExactMatrix(int dim, std::vector<BigInt> entries) : dim_(dim), a_(std::move(entries)) {
  if (dim < 1 || a_.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("entry count does not match dimension");
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : dim_(static_cast<int>(rows.size())) {
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_) throw std::invalid_argument("matrix must be square");
    for (long long x : row) a_.emplace_back(x);
  }
}

ExactMatrix ExactMatrix::identity(int dim) {
  ExactMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::elementary(int dim, int i, int j, const BigInt& t) {
  if (i < 1 || j < 1 || i > dim || j > dim || i == j)
    throw std::invalid_argument("elementary matrix needs 1 <= i != j <= dim");
  ExactMatrix m = identity(dim);
  m(i - 1, j - 1) = t;
  return m;
}

bool ExactMatrix::is_identity() const {
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

// Fraction-free Bareiss elimination.
BigInt ExactMatrix::determinant() const {
  std::vector<BigInt> m = a_;
  const int n = dim_;
  auto at = [&](int r, int c) -> BigInt& { return m[r * n + c]; };
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c) at(r, c) = (at(r, c) * at(k, k) - at(r, k) * at(k, c)) / prev;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix n = *this;
  for (auto& x : n.a_) x = -x;
  return n;
}

ExactMatrix mat_mul(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_dim(a, b);
  const int d = a.dim();
  ExactMatrix c(d);
  BigInt acc;
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) {
      const BigInt& ark = a(r, k);
      if (ark == 0) continue;
      for (int col = 0; col < d; ++col)
        if (b(k, col) != 0) c(r, col) += ark * b(k, col);
    }
  return c;
}

ExactMatrix mat_inv(const ExactMatrix& a) {
  const int d = a.dim();
  if (a.determinant() != 1) throw std::domain_error("mat_inv requires determinant 1");
  if (d == 1) return a;
  if (d == 2) return ExactMatrix(2, {a(1, 1), -a(0, 1), -a(1, 0), a(0, 0)});
  // Gauss-Jordan over the rationals, done fraction-free: reduce [a | I] with
  // Bareiss steps; since det = 1 the final pivot is 1 and the right block is
  // the exact inverse times det.
  const int w = 2 * d;
  std::vector<BigInt> m(static_cast<std::size_t>(d) * w);
  auto at = [&](int r, int c) -> BigInt& { return m[r * w + c]; };
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) at(r, c) = a(r, c);
    at(r, d + r) = 1;
  }
  BigInt prev = 1;
  for (int k = 0; k < d; ++k) {
    if (at(k, k) == 0) {
      int p = k + 1;
      while (p < d && at(p, k) == 0) ++p;
      for (int c = 0; c < w; ++c) std::swap(at(k, c), at(p, c));
      // A row swap flips the sign of later pivots; compensated below by
      // dividing by the final pivot rather than assuming it is +1.
    }
    for (int r = 0; r < d; ++r) {
      if (r == k) continue;
      for (int c = 0; c < w; ++c) {
        if (c == k) continue;
        at(r, c) = (at(r, c) * at(k, k) - at(r, k) * at(k, c)) / prev;
      }
      at(r, k) = 0;
    }
    prev = at(k, k);
  }
  // Every row now reads pivot * [I | a^-1] with pivot = ±det = ±1.
  ExactMatrix inv(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) inv(r, c) = at(r, d + c) / at(r, r);
  return inv;
}

double log_operator_norm(const ExactMatrix& a) {
  const int d = a.dim();
  std::vector<BigInt> b(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c) {
      BigInt s = 0;
      for (int k = 0; k < d; ++k) s += a(k, r) * a(k, c);
      b[r * d + c] = s;
      b[c * d + r] = s;
    }
  return 0.5 * log_lambda_max(b, d);
}

double operator_norm(const ExactMatrix& a) { return std::exp(log_operator_norm(a)); }

BigInt max_abs_entry(const ExactMatrix& a) {
  BigInt m = 0;
  for (const auto& x : a.entries()) m = std::max(m, BigInt(boost::multiprecision::abs(x)));
  return m;
}

std::string to_string(const ExactMatrix& a) {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < a.dim(); ++r) {
    os << (r ? ",[" : "[");
    for (int c = 0; c < a.dim(); ++c) os << (c ? "," : "") << a(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

PslElement::PslElement(const ExactMatrix& m) : rep_(m) {
  if (m.dim() % 2 != 0) return;
  for (const auto& x : m.entries()) {
    if (x == 0) continue;
    if (x < 0) rep_ = -m;
    break;
  }
}

PslElement psl_canonicalize(const ExactMatrix& a) {
  if (a.determinant() != 1) throw std::domain_error("psl_canonicalize requires determinant 1");
  return PslElement(a);
}

PslElement operator*(const PslElement& a, const PslElement& b) { return PslElement(a.rep() * b.rep()); }

PslElement inverse(const PslElement& a) { return PslElement(mat_inv(a.rep())); }

GeneratorSet::GeneratorSet(int dim, std::vector<Generator> gens) : dim_(dim), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (g.element.dim() != dim_) throw std::invalid_argument("generator dimension mismatch");
    inverses_.push_back(mat_inv(g.element.rep()));
  }
}

GeneratorSet GeneratorSet::sigma(int d) {
  if (d < 2) throw std::invalid_argument("sigma needs d >= 2");
  std::vector<Generator> gens;
  auto push_unique = [&](std::string name, const ExactMatrix& m) {
    PslElement e(m);
    for (const auto& g : gens)
      if (g.element == e) return;
    gens.push_back({std::move(name), e});
  };
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j)
      push_unique("E" + std::to_string(i) + std::to_string(j), ExactMatrix::elementary(d, i, j, 1));

  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  auto perm_name = [&](const std::vector<int>& p) {
    std::string s = "P";
    for (int x : p) s += std::to_string(x + 1);
    return s;
  };
  auto parity = [](const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    return inv % 2;
  };
  std::vector<std::vector<int>> odd;
  do {
    if (parity(perm) == 0) {
      if (std::is_sorted(perm.begin(), perm.end())) continue;
      ExactMatrix m(d);
      for (int c = 0; c < d; ++c) m(perm[c], c) = 1;
      push_unique(perm_name(perm), m);
    } else {
      odd.push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& p : odd) {
    // Sign patterns with an odd number of -1 entries give determinant +1.
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      if (std::popcount(mask) % 2 == 0) continue;
      ExactMatrix m(d);
      std::string name = perm_name(p) + ":";
      for (int c = 0; c < d; ++c) {
        bool neg = mask & (1u << c);
        m(p[c], c) = neg ? -1 : 1;
        name += neg ? '-' : '+';
      }
      push_unique(name, m);
    }
  }
  return GeneratorSet(d, std::move(gens));
}

const ExactMatrix& GeneratorSet::matrix(Letter l) const {
  return l.exp > 0 ? gens_.at(l.gen).element.rep() : inverses_.at(l.gen);
}

std::optional<Letter> GeneratorSet::find(const ExactMatrix& m) const {
  PslElement e(m);
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].element == e) return Letter{static_cast<int>(i), 1};
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (PslElement(inverses_[i]) == e) return Letter{static_cast<int>(i), -1};
  return std::nullopt;
}

std::optional<int> GeneratorSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

GeneratorSet GeneratorSet::with(const Generator& extra) const {
  auto gens = gens_;
  gens.push_back(extra);
  return GeneratorSet(dim_, std::move(gens));
}

}  // namespace hyperword
