#include "hyperword/tessellation.hpp"

#include "hyperword/config.hpp"
#include "hyperword/models.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperword {

namespace {

using Rational = boost::multiprecision::cpp_rational;

template <class Q>
Q conv(const BigInt& b);
template <>
Rational conv<Rational>(const BigInt& b) {
  return Rational(b);
}
template <>
double conv<double>(const BigInt& b) {
  return b.convert_to<double>();
}

// The two-argument cpp_rational constructor rejects negative denominators.
double ratio_to_double(const BigInt& n, const BigInt& d) {
  return (d < 0 ? Rational(-n, -d) : Rational(n, d)).convert_to<double>();
}

template <class Q>
Q qabs(const Q& q) {
  return q < 0 ? Q(-q) : q;
}

template <class Q>
struct Pt {
  Q x, y;
};

template <class Q>
Pt<Q> mobius(const ExactMatrix& m, const Pt<Q>& p) {
  Q a = conv<Q>(m(0, 0)), b = conv<Q>(m(0, 1)), c = conv<Q>(m(1, 0)), d = conv<Q>(m(1, 1));
  Q cx = c * p.x + d;
  Q cy = c * p.y;
  Q den = cx * cx + cy * cy;
  Q re = (a * c * (p.x * p.x + p.y * p.y) + (a * d + b * c) * p.x + b * d) / den;
  return {re, Q(p.y / den)};
}

ExactMatrix inv2(const ExactMatrix& m) { return ExactMatrix(2, {m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)}); }

enum class Hit { R, L, B, VR, VL };

template <class Q>
struct Crossing {
  Q t;
  Hit hit;
};

void push_run(std::vector<StepRun>& steps, Step s, const BigInt& k) {
  if (!steps.empty() && steps.back().step == s && s != Step::v) {
    steps.back().count += k;
    return;
  }
  steps.push_back({s, k});
}

// Walks the segment P0 -> W0 through the tessellation. Everything is done in
// the frame of the current tile θT, where the tile is T itself; the segment
// endpoints are pulled back by θ⁻¹ at every step.
template <class Q>
class Tracer {
 public:
  Tracer(Pt<Q> start, Pt<Q> end, ExactMatrix theta, Q tol)
      : p0_(std::move(start)), w0_(std::move(end)), theta_(std::move(theta)), tol_(std::move(tol)) {}

  std::vector<StepRun> run() {
    std::vector<StepRun> steps;
    for (int guard = 0; guard < 1000000; ++guard) {
      localize();
      if (target_inside()) return steps;
      auto cs = crossings();
      if (cs.empty()) throw std::logic_error("tile tracing lost the segment");
      const Crossing<Q>* exit = &cs[0];
      for (const auto& c : cs)
        if (key(c.t) > key(exit->t)) exit = &c;
      switch (exit->hit) {
        case Hit::R: {
          BigInt k = translations(1);
          push_run(steps, Step::u, k);
          theta_ = theta_ * u_power(k);
          break;
        }
        case Hit::L: {
          BigInt k = translations(-1);
          push_run(steps, Step::u_inv, k);
          theta_ = theta_ * u_power(-k);
          break;
        }
        case Hit::B:
          push_run(steps, Step::v, 1);
          theta_ = theta_ * v_matrix();
          break;
        case Hit::VR:
        case Hit::VL:
          if (rotate(exit->hit, steps)) return steps;
          break;
      }
    }
    throw std::runtime_error("tile tracing exceeded its iteration guard");
  }

 private:
  void localize() {
    ExactMatrix ti = inv2(theta_);
    p_ = mobius(ti, p0_);
    w_ = mobius(ti, w0_);
    Q scale = 1;
    if constexpr (std::is_same_v<Q, double>)
      scale = std::max({1.0, std::abs(p_.x), std::abs(w_.x), p_.y, w_.y}) * Tolerances::vertical_geodesic;
    else
      scale = 0;
    vertical_ = qabs(Q(w_.x - p_.x)) <= scale;
    if (vertical_) {
      x0_ = (p_.x + w_.x) / 2;
      dir_ = w_.y > p_.y ? 1 : -1;
    } else {
      a_ = (w_.x * w_.x + w_.y * w_.y - p_.x * p_.x - p_.y * p_.y) / (2 * (w_.x - p_.x));
      r2_ = (p_.x - a_) * (p_.x - a_) + p_.y * p_.y;
      dir_ = w_.x > p_.x ? 1 : -1;
    }
  }

  bool target_inside() const {
    Q half = Q(1) / 2;
    return qabs(w_.x) <= half + tol_ && w_.x * w_.x + w_.y * w_.y >= 1 - tol_;
  }

  Q y2_at(const Q& x) const { return r2_ - (x - a_) * (x - a_); }
  Q key(const Q& t) const { return dir_ > 0 ? t : Q(-t); }
  bool near(const Q& a, const Q& b) const { return qabs(Q(a - b)) <= tol_; }

  std::vector<Crossing<Q>> crossings() const {
    std::vector<Crossing<Q>> cs;
    const Q half = Q(1) / 2;
    const Q three_q = Q(3) / 4;
    auto add = [&](Q t, Hit h) {
      if (h == Hit::VR || h == Hit::VL)
        for (const auto& c : cs)
          if (c.hit == h) return;
      cs.push_back({std::move(t), h});
    };
    if (vertical_) {
      if (qabs(x0_) <= half + tol_) {
        Hit h = near(x0_, half) ? Hit::VR : near(x0_, Q(-half)) ? Hit::VL : Hit::B;
        add(Q(1 - x0_ * x0_), h);
      }
      return cs;
    }
    for (int s : {1, -1}) {
      Q x = s * half;
      Q y2 = y2_at(x);
      if (y2 >= three_q - tol_) add(x, near(y2, three_q) ? (s > 0 ? Hit::VR : Hit::VL) : (s > 0 ? Hit::R : Hit::L));
    }
    if (qabs(a_) > tol_) {
      Q xb = (1 + a_ * a_ - r2_) / (2 * a_);
      if (qabs(xb) <= half + tol_ && xb * xb < 1) {
        if (near(xb, half))
          add(half, Hit::VR);
        else if (near(xb, Q(-half)))
          add(Q(-half), Hit::VL);
        else
          add(xb, Hit::B);
      }
    }
    return cs;
  }

  // Number of consecutive crossings of the lines Re z = s(1/2 + j), j = 0, 1, ...
  BigInt translations(int s) const {
    const Q half = Q(1) / 2;
    const Q three_q = Q(3) / 4;
    auto cond = [&](const BigInt& j) {
      Q x = s * (half + conv<Q>(j));
      return y2_at(x) > three_q + tol_ && s * w_.x > s * x;
    };
    BigInt lo = 0, hi = 1;
    while (cond(hi)) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      BigInt mid = (lo + hi) / 2;
      if (cond(mid))
        lo = mid;
      else
        hi = mid;
    }
    return lo + 1;
  }

  // Counterclockwise round the vertex until the segment continues into the
  // tile's interior. Returns true when the target tile was reached.
  bool rotate(Hit at, std::vector<StepRun>& steps) {
    const Q half = Q(1) / 2;
    for (int i = 0; i < 6; ++i) {
      if (at == Hit::VR) {
        push_run(steps, Step::v, 1);
        theta_ = theta_ * v_matrix();
        at = Hit::VL;
      } else {
        push_run(steps, Step::u_inv, 1);
        theta_ = theta_ * u_power(-1);
        at = Hit::VR;
      }
      localize();
      if (target_inside()) return true;
      Q tv = vertical_ ? Q(Q(3) / 4) : (at == Hit::VR ? half : Q(-half));
      for (const auto& c : crossings())
        if (key(c.t) > key(tv) + tol_) return false;
    }
    throw std::logic_error("no outgoing tile around a vertex");
  }

  Pt<Q> p0_, w0_;
  ExactMatrix theta_;
  Q tol_;
  Pt<Q> p_, w_;
  bool vertical_ = false;
  Q a_ = 0, r2_ = 0, x0_ = 0;
  int dir_ = 1;
};

Complex point(const Pt<double>& p) { return {p.x, p.y}; }

}  // namespace

const GeneratorSet& sigma2() {
  static const GeneratorSet s(2, {{"u", PslElement(ExactMatrix{{1, 1}, {0, 1}})},
                                  {"v", PslElement(ExactMatrix{{0, 1}, {-1, 0}})}});
  return s;
}

ExactMatrix u_power(const BigInt& n) { return ExactMatrix(2, {1, n, 0, 1}); }
ExactMatrix v_matrix() { return ExactMatrix{{0, 1}, {-1, 0}}; }

Complex act_on(const ExactMatrix& g, Complex z) {
  return point(mobius<double>(g, Pt<double>{z.real(), z.imag()}));
}

bool in_fundamental_domain(Complex z, bool closed) {
  if (closed) return std::abs(z.real()) <= 0.5 + Tolerances::boundary && std::norm(z) >= 1.0 - Tolerances::boundary;
  return std::abs(z.real()) < 0.5 && std::norm(z) > 1.0;
}

Reduction reduce_to_T(Complex z) {
  if (!(z.imag() > 0)) throw std::domain_error("reduce_to_T needs Im z > 0");
  ExactMatrix g = ExactMatrix::identity(2);
  for (int guard = 0; guard < 10000; ++guard) {
    double n = std::round(z.real());
    if (n != 0) {
      z -= n;
      g = g * u_power(BigInt(static_cast<long long>(n)));
    }
    if (std::norm(z) < 1.0 - Tolerances::boundary) {
      z = -1.0 / z;
      g = g * v_matrix();
    } else {
      return {PslElement(g), z};
    }
  }
  throw std::runtime_error("reduce_to_T did not converge");
}

bool dirichlet_halfspace_contains(Complex z, const PslElement& g, Complex base) {
  if (g.is_identity()) throw std::invalid_argument("Dirichlet half-space needs a non-identity element");
  return dist_U(z, base) < dist_U(z, act_on(g.rep(), base));
}

std::vector<StepRun> trace_steps(const ExactMatrix& delta) {
  if (delta.dim() != 2 || delta.determinant() != 1) throw std::invalid_argument("trace_steps needs an element of SL(2,Z)");
  Pt<Rational> start{Rational(0), Rational(2)};
  Pt<Rational> end = mobius(delta, start);
  return Tracer<Rational>(start, end, ExactMatrix::identity(2), Rational(0)).run();
}

std::vector<Tile> tiles_from_steps(const PslElement& start, const std::vector<StepRun>& steps) {
  BigInt total = 1;
  for (const auto& s : steps) total += s.count;
  if (total > 10000000) throw std::length_error("tile sequence too long to materialize");
  std::vector<Tile> tiles{{start}};
  ExactMatrix g = start.rep();
  for (const auto& s : steps) {
    ExactMatrix m = s.step == Step::u ? u_power(1) : s.step == Step::u_inv ? u_power(-1) : v_matrix();
    for (BigInt k = 0; k < s.count; ++k) {
      g = g * m;
      tiles.push_back({PslElement(g)});
    }
  }
  return tiles;
}

std::vector<Tile> geodesic_tile_sequence(Complex z, Complex w) {
  if (!(z.imag() > 0) || !(w.imag() > 0)) throw std::domain_error("geodesic_tile_sequence needs points of U²");
  if (z == w) throw std::invalid_argument("geodesic_tile_sequence needs distinct points");
  Reduction r = reduce_to_T(z);
  Tracer<double> t({z.real(), z.imag()}, {w.real(), w.imag()}, r.gamma.rep(), Tolerances::vertex_passage);
  return tiles_from_steps(r.gamma, t.run());
}

std::vector<Tile> geodesic_tile_sequence(const ExactMatrix& delta) {
  return tiles_from_steps(PslElement(ExactMatrix::identity(2)), trace_steps(delta));
}

Word word_from_tiles(const std::vector<Tile>& tiles) {
  const PslElement u(u_power(1)), ui(u_power(-1)), v(v_matrix());
  Word w;
  for (std::size_t k = 1; k < tiles.size(); ++k) {
    PslElement step = inverse(tiles[k - 1].label) * tiles[k].label;
    if (step == u)
      w.letters.push_back({0, 1});
    else if (step == ui)
      w.letters.push_back({0, -1});
    else if (step == v)
      w.letters.push_back({1, 1});
    else
      throw std::invalid_argument("consecutive tiles are not adjacent");
  }
  return w;
}

ExactMatrix RTerm::matrix() const { return kind == Kind::V ? v_matrix() : u_power(n); }

namespace {

void push_term(std::vector<RTerm>& out, const RTerm& t) {
  if (t.kind == RTerm::Kind::U) {
    if (t.n == 0) return;
    if (!out.empty() && out.back().kind == RTerm::Kind::U) {
      out.back().n += t.n;
      if (out.back().n == 0) out.pop_back();
      return;
    }
  } else if (!out.empty() && out.back().kind == RTerm::Kind::V) {
    out.pop_back();  // v² = -I
    return;
  }
  out.push_back(t);
}

}  // namespace

std::vector<RTerm> r_form(const Word& w) {
  std::vector<RTerm> out;
  for (const auto& l : w.letters) {
    if (l.gen == 0)
      push_term(out, RTerm::U(l.exp));
    else if (l.gen == 1)
      push_term(out, RTerm::V());
    else
      throw std::invalid_argument("r_form expects a word in u and v");
  }
  return out;
}

std::vector<RTerm> r_form(const std::vector<StepRun>& steps) {
  std::vector<RTerm> out;
  for (const auto& s : steps) {
    if (s.step == Step::v) {
      for (BigInt k = 0; k < s.count; ++k) push_term(out, RTerm::V());
    } else {
      push_term(out, RTerm::U(s.step == Step::u ? s.count : BigInt(-s.count)));
    }
  }
  return out;
}

std::vector<RTerm> r_form_of(const ExactMatrix& delta) { return r_form(trace_steps(delta)); }

ExactMatrix product(const std::vector<RTerm>& rform) {
  ExactMatrix m = ExactMatrix::identity(2);
  for (const auto& t : rform) m = m * t.matrix();
  return m;
}

double f_sum(const std::vector<RTerm>& rform) {
  double s = 0;
  for (const auto& t : rform) s += t.kind == RTerm::Kind::V ? 1.0 : std::log1p(boost::multiprecision::abs(t.n).convert_to<double>());
  return s;
}

double alpha_length(const std::vector<RTerm>& rform, Complex base) {
  double s = 0;
  for (const auto& t : rform) s += dist_U(base, act_on(t.matrix(), base));
  return s;
}

double dist_from_p0(const ExactMatrix& delta) {
  if (delta.dim() != 2) throw std::invalid_argument("dist_from_p0 needs a 2x2 matrix");
  const auto& a = delta(0, 0);
  const auto& b = delta(0, 1);
  const auto& c = delta(1, 0);
  const auto& d = delta(1, 1);
  BigInt n = 4 * a * a + b * b + 16 * c * c + 4 * d * d;
  // cosh dist = n / 8.
  if (boost::multiprecision::msb(n) < 900) return detail::acosh1p((n - 8).convert_to<double>() / 8.0);
  return log_abs(n) - std::log(4.0);
}

std::vector<Tile> tiles_in_region(double re_min, double re_max, int depth) {
  const ExactMatrix moves[3] = {u_power(1), u_power(-1), v_matrix()};
  const Complex rho{0.5, std::sqrt(3.0) / 2}, rho2{-0.5, std::sqrt(3.0) / 2};
  std::vector<Tile> out;
  std::set<std::vector<BigInt>> seen;
  std::deque<std::pair<ExactMatrix, int>> queue{{ExactMatrix::identity(2), 0}};
  seen.insert(PslElement(queue.front().first).rep().entries());
  while (!queue.empty()) {
    auto [g, k] = queue.front();
    queue.pop_front();
    double lo = std::min(act_on(g, rho).real(), act_on(g, rho2).real());
    double hi = std::max(act_on(g, rho).real(), act_on(g, rho2).real());
    if (g(1, 0) != 0) {
      double cusp = ratio_to_double(g(0, 0), g(1, 0));
      lo = std::min(lo, cusp);
      hi = std::max(hi, cusp);
    }
    if (hi >= re_min && lo <= re_max) out.push_back({PslElement(g)});
    if (k == depth) continue;
    for (const auto& m : moves) {
      ExactMatrix h = g * m;
      if (seen.insert(PslElement(h).rep().entries()).second) queue.push_back({h, k + 1});
    }
  }
  return out;
}

namespace {

struct SvgCanvas {
  const SvgRegion& reg;
  double X(double x) const { return (x - reg.re_min) * reg.scale; }
  double Y(double y) const { return (reg.im_max - y) * reg.scale; }
};

// Boundary point of a tile side: finite complex or the cusp at infinity.
struct Vertex {
  bool infinite;
  Complex z;
};

Vertex image(const ExactMatrix& g, Vertex v) {
  if (v.infinite) {
    if (g(1, 0) == 0) return {true, {}};
    return {false, {ratio_to_double(g(0, 0), g(1, 0)), 0.0}};
  }
  return {false, act_on(g, v.z)};
}

// Side between two vertices on the geodesic through them.
void emit_side(std::ostream& os, const SvgCanvas& cv, Vertex p, Vertex q, const char* cls) {
  if (p.infinite) std::swap(p, q);
  if (q.infinite || std::abs(p.z.real() - q.z.real()) < 1e-12) {
    double top = q.infinite ? cv.reg.im_max : q.z.imag();
    os << "<line class=\"" << cls << "\" x1=\"" << cv.X(p.z.real()) << "\" y1=\"" << cv.Y(p.z.imag()) << "\" x2=\""
       << cv.X(p.z.real()) << "\" y2=\"" << cv.Y(top) << "\"/>\n";
    return;
  }
  if (p.z.real() > q.z.real()) std::swap(p, q);
  double a = (std::norm(q.z) - std::norm(p.z)) / (2 * (q.z.real() - p.z.real()));
  double r = std::abs(p.z - a);
  os << "<path class=\"" << cls << "\" d=\"M " << cv.X(p.z.real()) << ' ' << cv.Y(p.z.imag()) << " A " << r * cv.reg.scale
     << ' ' << r * cv.reg.scale << " 0 0 1 " << cv.X(q.z.real()) << ' ' << cv.Y(q.z.imag()) << "\"/>\n";
}

}  // namespace

std::string svg_emit(const SvgRegion& region, const std::vector<Tile>* tiles,
                     std::optional<std::pair<Complex, Complex>> geodesic) {
  if (!(region.re_max > region.re_min) || !(region.im_max > 0) || !(region.scale > 0))
    throw std::invalid_argument("svg_emit: empty region");
  SvgCanvas cv{region};
  std::ostringstream os;
  os.precision(10);
  const double w = (region.re_max - region.re_min) * region.scale;
  const double h = region.im_max * region.scale;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' '
     << h << "\">\n";
  os << "<style>.side{fill:none;stroke:#333;stroke-width:1}.domain{fill:none;stroke:#c00;stroke-width:2}"
        ".axis{stroke:#000;stroke-width:1}.geodesic{fill:none;stroke:#06c;stroke-width:2}</style>\n";
  os << "<line class=\"axis\" x1=\"0\" y1=\"" << cv.Y(0) << "\" x2=\"" << w << "\" y2=\"" << cv.Y(0) << "\"/>\n";
  const Vertex rho{false, {0.5, std::sqrt(3.0) / 2}}, rho2{false, {-0.5, std::sqrt(3.0) / 2}}, cusp{true, {}};
  auto emit_tile = [&](const ExactMatrix& g, const char* cls) {
    Vertex a = image(g, rho), b = image(g, rho2), c = image(g, cusp);
    emit_side(os, cv, a, b, cls);
    emit_side(os, cv, b, c, cls);
    emit_side(os, cv, c, a, cls);
  };
  os << "<g id=\"tiles\">\n";
  if (tiles)
    for (const auto& t : *tiles) emit_tile(t.label.rep(), "side");
  os << "</g>\n";
  emit_tile(ExactMatrix::identity(2), "domain");
  if (geodesic) {
    auto [z, zw] = *geodesic;
    auto L = geodesic_through(z, zw);
    os << "<path class=\"geodesic\" d=\"M " << cv.X(z.real()) << ' ' << cv.Y(z.imag());
    if (L.kind == GeodesicKind::vertical) {
      os << " L " << cv.X(zw.real()) << ' ' << cv.Y(zw.imag());
    } else {
      int sweep = zw.real() > z.real() ? 1 : 0;
      os << " A " << L.r * region.scale << ' ' << L.r * region.scale << " 0 0 " << sweep << ' ' << cv.X(zw.real()) << ' '
         << cv.Y(zw.imag());
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hyperword
