#include "hyperword/words.hpp"

#include "hyperword/tessellation.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hyperword {

// ---------------------------------------------------------------- words

ExactMatrix evaluate(const Word& w, const GeneratorSet& gens) {
  ExactMatrix m = ExactMatrix::identity(gens.dim());
  for (const auto& l : w.letters) m = m * gens.matrix(l);
  return m;
}

Word inverse(const Word& w) {
  Word r;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back({it->gen, -it->exp});
  return r;
}

Word free_reduce(const Word& w) {
  Word r;
  for (const auto& l : w.letters) {
    if (!r.letters.empty() && r.letters.back().gen == l.gen && r.letters.back().exp == -l.exp)
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  return r;
}

std::string to_string(const Word& w, const GeneratorSet& gens) {
  std::string s;
  for (const auto& l : w.letters) {
    if (!s.empty()) s += ' ';
    s += gens[l.gen].name;
    if (l.exp < 0) s += "^-1";
  }
  return s;
}

const GeneratorSet& sigma(int d) {
  if (d == 2) return sigma2();
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GeneratorSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<GeneratorSet>(GeneratorSet::sigma(d));
  return *slot;
}

// ---------------------------------------------------------------- BFS

namespace {

constexpr int kMaxSmallDim = 4;
using SmallKey = std::array<long long, kMaxSmallDim * kMaxSmallDim>;

struct SmallKeyHash {
  std::size_t operator()(const SmallKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (long long x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

// Fixed-size integer matrix for searches over small balls.
struct Small {
  int d = 0;
  SmallKey a{};

  long long& at(int r, int c) { return a[r * d + c]; }
  long long at(int r, int c) const { return a[r * d + c]; }

  void canonicalize() {
    if (d % 2) return;
    for (int i = 0; i < d * d; ++i) {
      if (a[i] == 0) continue;
      if (a[i] < 0)
        for (int k = 0; k < d * d; ++k) a[k] = -a[k];
      return;
    }
  }
};

std::optional<Small> to_small(const ExactMatrix& m) {
  if (m.dim() > kMaxSmallDim) throw std::invalid_argument("word search supports d <= 4");
  Small s;
  s.d = m.dim();
  const BigInt lim = BigInt(1) << 62;
  for (int r = 0; r < s.d; ++r)
    for (int c = 0; c < s.d; ++c) {
      if (boost::multiprecision::abs(m(r, c)) >= lim) return std::nullopt;
      s.at(r, c) = m(r, c).convert_to<long long>();
    }
  return s;
}

ExactMatrix from_small(const Small& s) {
  ExactMatrix m(s.d);
  for (int r = 0; r < s.d; ++r)
    for (int c = 0; c < s.d; ++c) m(r, c) = s.at(r, c);
  return m;
}

Small mul(const Small& x, const Small& y) {
  Small z;
  z.d = x.d;
  for (int r = 0; r < x.d; ++r)
    for (int c = 0; c < x.d; ++c) {
      __int128 acc = 0;
      for (int k = 0; k < x.d; ++k) acc += static_cast<__int128>(x.at(r, k)) * y.at(k, c);
      if (acc > (static_cast<__int128>(1) << 62) || acc < -(static_cast<__int128>(1) << 62))
        throw std::overflow_error("word search entries overflowed");
      z.at(r, c) = static_cast<long long>(acc);
    }
  return z;
}

struct SearchLetter {
  Letter letter;
  Small m;
};

// Generators and inverses, one letter per distinct PSL element.
std::vector<SearchLetter> search_letters(const GeneratorSet& gens) {
  std::vector<SearchLetter> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int e : {1, -1}) {
      Letter l{static_cast<int>(i), e};
      Small m = *to_small(gens.matrix(l));
      m.canonicalize();
      bool dup = false;
      for (const auto& o : out) dup = dup || o.m.a == m.a;
      if (!dup) out.push_back({l, m});
    }
  return out;
}

struct Node {
  Small m;
  int parent;
  Letter letter;
  int depth;
};

// Breadth-first search from 1; stops once target is seen.
std::optional<std::size_t> bfs(const Small& target, const GeneratorSet& gens, int max_radius, std::size_t max_states,
                                std::vector<Node>& nodes) {
  auto letters = search_letters(gens);
  std::unordered_map<SmallKey, int, SmallKeyHash> seen;
  Small id = *to_small(ExactMatrix::identity(gens.dim()));
  nodes.push_back({id, -1, {}, 0});
  seen.emplace(id.a, 0);
  if (id.a == target.a) return 0;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= max_radius) break;
    for (const auto& l : letters) {
      Small next = mul(nodes[head].m, l.m);
      next.canonicalize();
      if (!seen.emplace(next.a, static_cast<int>(nodes.size())).second) continue;
      nodes.push_back({next, static_cast<int>(head), l.letter, nodes[head].depth + 1});
      if (next.a == target.a) return nodes.size() - 1;
      if (nodes.size() > max_states) throw std::length_error("word search exceeded its state budget");
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> bfs_word_length(const PslElement& g, const GeneratorSet& gens, int max_radius, std::size_t max_states) {
  auto target = to_small(g.rep());
  if (!target) return std::nullopt;  // entries too large for any ball we can search
  target->canonicalize();
  std::vector<Node> nodes;
  auto hit = bfs(*target, gens, max_radius, max_states, nodes);
  if (!hit) return std::nullopt;
  return nodes[*hit].depth;
}

std::optional<Word> bfs_shortest_word(const PslElement& g, const GeneratorSet& gens, int max_radius,
                                      std::size_t max_states) {
  auto target = to_small(g.rep());
  if (!target) return std::nullopt;
  target->canonicalize();
  std::vector<Node> nodes;
  auto hit = bfs(*target, gens, max_radius, max_states, nodes);
  if (!hit) return std::nullopt;
  Word w;
  for (int i = static_cast<int>(*hit); nodes[i].parent >= 0; i = nodes[i].parent) w.letters.push_back(nodes[i].letter);
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

std::size_t CayleyBall::KeyHash::operator()(const std::vector<long long>& k) const {
  std::size_t h = 1469598103934665603ull;
  for (long long x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

CayleyBall::CayleyBall(const GeneratorSet& gens, int radius, std::size_t max_states)
    : dim_(gens.dim()), radius_(radius) {
  Small none;
  none.d = dim_;
  none.a.fill(0);  // unreachable target: explore the whole ball
  std::vector<Node> nodes;
  bfs(none, gens, radius, max_states, nodes);
  elements_.reserve(nodes.size());
  for (const auto& n : nodes) {
    index_.emplace(std::vector<long long>(n.m.a.begin(), n.m.a.begin() + dim_ * dim_), static_cast<int>(elements_.size()));
    elements_.push_back(from_small(n.m));
    lengths_.push_back(n.depth);
  }
}

std::optional<std::vector<long long>> CayleyBall::key(const ExactMatrix& g) const {
  auto s = to_small(g);
  if (!s) return std::nullopt;
  s->canonicalize();
  return std::vector<long long>(s->a.begin(), s->a.begin() + dim_ * dim_);
}

std::optional<int> CayleyBall::distance(const ExactMatrix& g) const {
  auto k = key(g);
  if (!k) return std::nullopt;
  auto it = index_.find(*k);
  if (it == index_.end()) return std::nullopt;
  return lengths_[it->second];
}

std::optional<int> CayleyBall::distance_within_2r(const ExactMatrix& g) const {
  if (auto d = distance(g)) return d;
  auto gs = to_small(g);
  if (!gs) return std::nullopt;
  std::optional<int> best;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (best && lengths_[i] + radius_ >= *best) continue;
    Small x = *to_small(elements_[i]);
    Small y = mul(x, *gs);
    y.canonicalize();
    auto it = index_.find(std::vector<long long>(y.a.begin(), y.a.begin() + dim_ * dim_));
    if (it == index_.end()) continue;
    int total = lengths_[i] + lengths_[it->second];
    if (!best || total < *best) best = total;
  }
  return best;
}

// ---------------------------------------------------------------- column reduction

Bezout bounded_ext_gcd(const BigInt& y1, const BigInt& yi) {
  using boost::multiprecision::abs;
  if (y1 == 0) throw std::invalid_argument("bounded_ext_gcd needs y1 != 0");
  const BigInt s1 = y1 > 0 ? 1 : -1;
  if (yi == 0 || abs(y1) == abs(yi)) return {s1, 0, abs(y1)};
  // Extended Euclid on |y1|, |yi|.
  BigInt r0 = abs(y1), r1 = abs(yi), s0 = 1, s_1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s_1;
    s0 = s_1;
    s_1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  const BigInt a = r0;
  BigInt u = s0 * s1;
  BigInt v = t0 * (yi > 0 ? 1 : -1);
  // Shift along the solution line (u + m yi/a, v - m y1/a) so that |u| is minimal.
  const BigInt step_u = abs(yi) / a;
  BigInt m = u / step_u;
  u -= m * step_u;
  if (2 * abs(u) > step_u) u += u > 0 ? BigInt(-step_u) : step_u;
  v = (a - u * y1) / yi;
  if (u * y1 + v * yi != a) throw std::logic_error("bounded_ext_gcd: Bezout identity failed");
  if (abs(u) > std::max(BigInt(1), BigInt(abs(yi))) || abs(v) > std::max(BigInt(1), BigInt(abs(y1))))
    throw std::logic_error("bounded_ext_gcd: coefficient bound failed");
  return {u, v, a};
}

BigInt column_reduction_bound(const std::vector<BigInt>& x) {
  BigInt s = 0;
  for (const auto& xi : x) s += xi * xi;
  return 5 * s * s;
}

std::vector<ExactMatrix> reduce_unimodular_column(const std::vector<BigInt>& x) {
  const int d = static_cast<int>(x.size());
  if (d < 2) throw std::invalid_argument("reduce_unimodular_column needs d >= 2");
  BigInt g = 0;
  for (const auto& xi : x) g = boost::multiprecision::gcd(g, xi);
  if (g != 1) throw std::invalid_argument("column is not unimodular");

  std::vector<ExactMatrix> out;
  std::vector<BigInt> y = x;
  ExactMatrix g1 = ExactMatrix::identity(d);
  if (y[0] == 0) {
    int j = 1;
    while (y[j] == 0) ++j;
    g1 = ExactMatrix::elementary(d, 1, j + 1, 1);
    y[0] += y[j];
  }
  out.push_back(g1);
  for (int i = 1; i < d; ++i) {
    Bezout bz = bounded_ext_gcd(y[0], y[i]);
    BigInt b1 = y[0] / bz.a, bi = y[i] / bz.a;
    ExactMatrix gi = ExactMatrix::identity(d);
    gi(0, 0) = bz.u;
    gi(0, i) = bz.v;
    gi(i, 0) = -bi;
    gi(i, i) = b1;
    y[0] = bz.a;
    y[i] = 0;
    out.push_back(gi);
  }
  return out;
}

// ---------------------------------------------------------------- block factorization

ExactMatrix block_of(const ExactMatrix& m, int s, int t) {
  return ExactMatrix(2, {m(s - 1, s - 1), m(s - 1, t - 1), m(t - 1, s - 1), m(t - 1, t - 1)});
}

ExactMatrix embed_block(const ExactMatrix& b, int d, int s, int t) {
  ExactMatrix m = ExactMatrix::identity(d);
  m(s - 1, s - 1) = b(0, 0);
  m(s - 1, t - 1) = b(0, 1);
  m(t - 1, s - 1) = b(1, 0);
  m(t - 1, t - 1) = b(1, 1);
  return m;
}

namespace {

BlockFactor labelled(const ExactMatrix& m, int s, int t) {
  if (m.is_identity()) return {m, 0, 0};
  return {m, s, t};
}

ExactMatrix embed_lower_right(const ExactMatrix& m) {
  ExactMatrix e = ExactMatrix::identity(m.dim() + 1);
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) e(r + 1, c + 1) = m(r, c);
  return e;
}

BigInt pow_big(BigInt b, int e) {
  BigInt r = 1;
  while (e--) r *= b;
  return r;
}

BigInt entry_bound(int d, const BigInt& m) {
  if (d == 2) return m;
  BigInt p = 5 * pow_big(d * m * m, 2);
  BigInt r = 2 * pow_big(2 * p, d - 1) * m;
  return std::max({p, r, entry_bound(d - 1, r)});
}

}  // namespace

BigInt factor_entry_bound(const ExactMatrix& g) {
  return entry_bound(g.dim(), std::max(BigInt(1), max_abs_entry(g)));
}

std::vector<BlockFactor> factor_sl2_blocks(const ExactMatrix& g) {
  const int d = g.dim();
  if (g.determinant() != 1) throw std::domain_error("factor_sl2_blocks needs determinant 1");
  if (d < 2) throw std::invalid_argument("factor_sl2_blocks needs d >= 2");
  if (d == 2) {
    const ExactMatrix id = ExactMatrix::identity(2);
    return {labelled(g, 1, 2), labelled(id, 1, 2), labelled(id, 1, 2), labelled(id, 1, 2)};
  }
  std::vector<BigInt> col(d);
  for (int r = 0; r < d; ++r) col[r] = g(r, 0);
  auto gammas = reduce_unimodular_column(col);

  // Pair for each γ_i: γ_1 = E_1j(1) sits on (1, j).
  std::vector<int> pair(d);
  for (int i = 1; i < d; ++i) pair[i] = i + 1;
  pair[0] = 2;
  for (int j = 1; j < d; ++j)
    if (gammas[0](0, j) != 0) pair[0] = j + 1;

  ExactMatrix gp = g;
  for (const auto& gi : gammas) gp = gi * gp;
  std::vector<ExactMatrix> col_ops;  // γ'_2 ... γ'_d
  ExactMatrix gpp = gp;
  for (int j = 2; j <= d; ++j) {
    ExactMatrix e = ExactMatrix::elementary(d, 1, j, -gp(0, j - 1));
    col_ops.push_back(e);
    gpp = gpp * e;
  }

  ExactMatrix sub(d - 1);
  for (int r = 1; r < d; ++r)
    for (int c = 1; c < d; ++c) sub(r - 1, c - 1) = gpp(r, c);

  std::vector<BlockFactor> out;
  for (int i = 0; i < d; ++i) out.push_back(labelled(mat_inv(gammas[i]), 1, pair[i]));
  for (const auto& f : factor_sl2_blocks(sub)) {
    if (f.s == 0)
      out.push_back({ExactMatrix::identity(d), 0, 0});
    else
      out.push_back({embed_lower_right(f.matrix), f.s + 1, f.t + 1});
  }
  for (int j = d; j >= 2; --j) out.push_back(labelled(mat_inv(col_ops[j - 2]), 1, j));
  return out;
}

// ---------------------------------------------------------------- λ-digits

double lambda_value() { return (3.0 + std::sqrt(5.0)) / 2.0; }

namespace {

using Wide = boost::multiprecision::cpp_bin_float_100;

template <typename Real>
Real lambda_as() {
  using std::sqrt;
  return (Real(3) + sqrt(Real(5))) / 2;
}

template <typename Real>
DigitExpansion greedy_digits(const Real& a) {
  const Real lam = lambda_as<Real>();
  DigitExpansion e;
  if (a < lam) {  // includes 0 <= a < 1: a single digit 1 stays within λ
    e.digits = {1};
    return e;
  }
  std::vector<Real> pw{lam};  // pw[k-1] = λ^k
  while (pw.back() * lam <= a) pw.push_back(pw.back() * lam);
  e.digits.assign(pw.size(), 0);
  Real rem = a;
  int k = static_cast<int>(pw.size());
  while (k >= 1 && rem > lam) {
    while (pw[k - 1] > rem) --k;
    int digit = rem < 2 * pw[k - 1] ? 1 : 2;
    e.digits[k - 1] = digit;
    rem -= digit * pw[k - 1];
    --k;
  }
  return e;
}

}  // namespace

DigitExpansion greedy_lambda_digits(double a) {
  if (!(a >= 0) || !std::isfinite(a)) throw std::invalid_argument("greedy_lambda_digits needs finite a >= 0");
  return greedy_digits(a);
}

// ---------------------------------------------------------------- U1 words

namespace {

// Eigen-decomposition of y0 = (1,1) along the unit eigenvectors of A.
struct LambdaFrame {
  Eigen::Vector2d v1, v2;
  double alpha, beta;
  LambdaFrame() {
    Eigen::Matrix2d a;
    a << 2, 1, 1, 1;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
    v1 = es.eigenvectors().col(1);
    v2 = es.eigenvectors().col(0);
    if (v1(0) < 0) v1 = -v1;
    if (v2(0) < 0) v2 = -v2;
    alpha = v1.sum();
    beta = v2.sum();
  }
};

const LambdaFrame& frame() {
  static const LambdaFrame f;
  return f;
}

struct Vec2 {
  BigInt x, y;
};

// A^k y0 for k >= 0 (sign +1) or A^-k y0 (sign -1), with A = [[2,1],[1,1]].
Vec2 a_power_y0(int k, int sign) {
  Vec2 v{1, 1};
  for (int i = 0; i < k; ++i) {
    if (sign > 0)
      v = {2 * v.x + v.y, v.x + v.y};
    else
      v = {v.x - v.y, 2 * v.y - v.x};
  }
  return v;
}

struct U1Letters {
  Word a, a_inv, y0, y0_inv, e13, e23;
};

const U1Letters& u1_letters() {
  static const U1Letters l = [] {
    const GeneratorSet& s3 = sigma(3);
    U1Letters out;
    ExactMatrix a{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    out.a = *bfs_shortest_word(PslElement(a), s3, 8);
    out.a_inv = inverse(out.a);
    Letter e13 = *s3.find(ExactMatrix::elementary(3, 1, 3, 1));
    Letter e23 = *s3.find(ExactMatrix::elementary(3, 2, 3, 1));
    out.e13.letters = {e13};
    out.e23.letters = {e23};
    out.y0.letters = {e13, e23};
    out.y0_inv = inverse(out.y0);
    return out;
  }();
  return l;
}

void append_power(Word& w, const Word& base, const Word& base_inv, const BigInt& k) {
  const Word& b = k < 0 ? base_inv : base;
  for (BigInt i = 0; i < boost::multiprecision::abs(k); ++i) w.append(b);
}

// Word for v(Σ a_i A^{±i} y0) in Horner form, and the vector it realizes.
Word horner(const DigitExpansion& e, int side, Vec2& acc) {
  const U1Letters& L = u1_letters();
  const Word& step = side > 0 ? L.a : L.a_inv;
  const Word& back = side > 0 ? L.a_inv : L.a;
  Word w;
  for (std::size_t i = 0; i < e.digits.size(); ++i) {
    w.append(step);
    append_power(w, L.y0, L.y0_inv, BigInt(e.sign * e.digits[i]));
    Vec2 p = a_power_y0(static_cast<int>(i + 1), side);
    acc.x += e.sign * e.digits[i] * p.x;
    acc.y += e.sign * e.digits[i] * p.y;
  }
  for (std::size_t i = 0; i < e.digits.size(); ++i) w.append(back);
  return w;
}

}  // namespace

int residual_bound() {
  const auto& f = frame();
  const double lam = lambda_value();
  return static_cast<int>(std::ceil(std::abs(f.alpha) * lam + (std::abs(f.alpha) + std::abs(f.beta)) * lam / (lam - 1.0)));
}

Word u1_word(const BigInt& n) {
  using boost::multiprecision::abs;
  if (n == 0) return {};
  const U1Letters& L = u1_letters();
  const auto& f = frame();
  const int b1 = residual_bound();

  Word w;
  Vec2 rem{n, 0};
  // Floats only steer the digit choice; each round's residual is exact, and
  // a further round absorbs the rounding error for n beyond 100 digits.
  for (int round = 0; round < 16 && (abs(rem.x) > b1 || abs(rem.y) > b1); ++round) {
    // Coordinates along the eigenvectors (1, λ-2) and (1, μ-2), scaled so
    // that y0 has coordinates (1, 1); μ = 1/λ.
    const Wide lam = lambda_as<Wide>(), mu = 1 / lam;
    Wide rx(rem.x), ry(rem.y);
    Wide c1 = (rx + ry * (lam - 2)) / (lam - 1);
    Wide c2 = (rx + ry * (mu - 2)) / (mu - 1);
    DigitExpansion e1 = greedy_digits<Wide>(abs(c1));
    DigitExpansion e2 = greedy_digits<Wide>(abs(c2));
    e1.sign = c1 < 0 ? -1 : 1;
    e2.sign = c2 < 0 ? -1 : 1;
    Vec2 got{0, 0};
    w.append(horner(e1, 1, got));
    w.append(horner(e2, -1, got));
    rem.x -= got.x;
    rem.y -= got.y;
  }
  append_power(w, L.e13, inverse(L.e13), rem.x);
  append_power(w, L.e23, inverse(L.e23), rem.y);
  w = free_reduce(w);
  if (abs(n) <= w.length()) {
    Word direct;
    append_power(direct, L.e13, inverse(L.e13), n);
    return direct;
  }
  return w;
}

Word embed_word(const Word& w, const GeneratorSet& from, const GeneratorSet& to) {
  if (from.dim() == to.dim()) return w;
  std::map<std::pair<int, int>, Letter> memo;
  Word out;
  for (const auto& l : w.letters) {
    auto key = std::make_pair(l.gen, l.exp);
    auto it = memo.find(key);
    if (it == memo.end()) {
      const ExactMatrix& m = from.matrix(l);
      ExactMatrix e = ExactMatrix::identity(to.dim());
      for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) e(r, c) = m(r, c);
      auto found = to.find(e);
      if (!found) throw std::logic_error("embedded letter is not a generator");
      it = memo.emplace(key, *found).first;
    }
    out.letters.push_back(it->second);
  }
  return out;
}

std::pair<ExactMatrix, int> conjugator(int i, int j, int d) {
  if (d < 3 || i < 1 || j < 1 || i > d || j > d || i == j) throw std::invalid_argument("conjugator: bad indices");
  ExactMatrix delta(d);
  if (d == 3) {
    if (i == 1 && j == 3) delta = ExactMatrix::identity(3);
    else if (i == 1 && j == 2) delta = ExactMatrix{{1, 0, 0}, {0, 0, 1}, {0, -1, 0}};
    else if (i == 2 && j == 1) delta = ExactMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    else if (i == 2 && j == 3) delta = ExactMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
    else if (i == 3 && j == 1) delta = ExactMatrix{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}};
    else delta = ExactMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};  // (3, 2)
  } else if (i < d && j < d) {
    delta = ExactMatrix::identity(d);
    ExactMatrix inner = conjugator(i, j, d - 1).first;
    for (int r = 0; r < d - 1; ++r)
      for (int c = 0; c < d - 1; ++c) delta(r, c) = inner(r, c);
  } else {
    // Move index d onto d-1 (or d-2 for the pairs {d-1, d}) with a signed
    // swap of determinant 1, then conjugate in the smaller corner.
    ExactMatrix q = ExactMatrix::identity(d);
    int si = i, sj = j;
    if (std::min(i, j) <= d - 2) {
      q(d - 2, d - 2) = 0;
      q(d - 1, d - 1) = 0;
      q(d - 1, d - 2) = 1;   // e_{d-1} -> e_d
      q(d - 2, d - 1) = -1;  // e_d -> -e_{d-1}
      (i == d ? si : sj) = d - 1;
    } else {
      q(d - 3, d - 3) = 0;
      q(d - 1, d - 1) = 0;
      q(d - 1, d - 3) = 1;   // e_{d-2} -> e_d
      q(d - 3, d - 1) = 1;   // e_d -> e_{d-2}
      q(d - 2, d - 2) = -1;  // e_{d-1} -> -e_{d-1}
      (i == d ? si : sj) = d - 2;
    }
    ExactMatrix inner = ExactMatrix::identity(d);
    ExactMatrix sub = conjugator(si, sj, d - 1).first;
    for (int r = 0; r < d - 1; ++r)
      for (int c = 0; c < d - 1; ++c) inner(r, c) = sub(r, c);
    delta = q * inner;
  }
  ExactMatrix image = delta * ExactMatrix::elementary(d, 1, 3, 1) * mat_inv(delta);
  if (image == ExactMatrix::elementary(d, i, j, 1)) return {delta, 1};
  if (image == ExactMatrix::elementary(d, i, j, -1)) return {delta, -1};
  throw std::logic_error("conjugator does not map E13 to E_ij");
}

namespace {

const Word& cached_word(const ExactMatrix& m, int d) {
  static std::mutex mu;
  static std::map<std::vector<BigInt>, Word> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = PslElement(m).rep().entries();
  key.push_back(d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto w = bfs_shortest_word(PslElement(m), sigma(d), 6);
  if (!w) throw std::logic_error("no short word for a fixed matrix");
  return cache.emplace(key, *w).first->second;
}

}  // namespace

Word conjugated_u1_word(int i, int j, const BigInt& n, int d) {
  auto [delta, sign] = conjugator(i, j, d);
  const Word& c = cached_word(delta, d);
  Word w = c;
  w.append(embed_word(u1_word(sign * n), sigma(3), sigma(d)));
  w.append(inverse(c));
  return w;
}

Word v_block_word(int s, int t, int d) { return cached_word(embed_block(v_matrix(), d, s, t), d); }

Word short_word(const ExactMatrix& g) {
  const int d = g.dim();
  if (d < 3) throw std::invalid_argument("short_word needs d >= 3");
  if (g.determinant() != 1) throw std::domain_error("short_word needs determinant 1");
  Word w;
  if (PslElement(g).is_identity()) return w;
  for (const auto& f : factor_sl2_blocks(g)) {
    if (f.s == 0) continue;
    ExactMatrix b = block_of(f.matrix, f.s, f.t);
    auto rform = r_form_of(b);
    for (const auto& t : rform) {
      if (t.kind == RTerm::Kind::V)
        w.append(v_block_word(f.s, f.t, d));
      else
        w.append(conjugated_u1_word(f.s, f.t, t.n, d));
    }
    if (product(rform) != b) {  // the walk fixes b only up to sign; v² = -I on the block
      w.append(v_block_word(f.s, f.t, d));
      w.append(v_block_word(f.s, f.t, d));
    }
  }
  w = free_reduce(w);
  if (PslElement(evaluate(w, sigma(d))) != PslElement(g)) throw std::logic_error("short_word does not evaluate to its target");
  return w;
}

}  // namespace hyperword
