#pragma once

// Models of hyperbolic n-space. Hyperboloid coordinates put time first:
// x∘y = -x0*y0 + x1*y1 + ... + xn*yn.

#include "hyperword/config.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

namespace hyperword {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

// acosh(1 + delta) without cancellation for small delta.
template <typename Scalar>
Scalar acosh1p(Scalar delta) {
  using std::log1p;
  using std::sqrt;
  if (delta < Scalar(0)) delta = Scalar(0);
  return log1p(delta + sqrt(delta * (delta + Scalar(2))));
}

}  // namespace detail

template <typename Scalar>
Scalar lorentz_inner(const Vec<Scalar>& x, const Vec<Scalar>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("lorentz_inner: length mismatch");
  return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

template <typename Scalar>
class HyperboloidPoint {
 public:
  explicit HyperboloidPoint(Vec<Scalar> coords) : c_(std::move(coords)) {
    using std::abs;
    if (c_.size() < 2) throw std::invalid_argument("hyperboloid point needs n+1 >= 2 coordinates");
    Scalar q = lorentz_inner(c_, c_);
    Scalar scale = Scalar(1) + c_.squaredNorm();
    if (!(c_(0) > 0) || abs(q + Scalar(1)) > Scalar(Tolerances::hyperboloid_norm) * scale)
      throw std::domain_error("point is not on the upper sheet of the hyperboloid");
  }
  static HyperboloidPoint apex(int n) {
    Vec<Scalar> v = Vec<Scalar>::Zero(n + 1);
    v(0) = 1;
    return HyperboloidPoint(v);
  }
  const Vec<Scalar>& coords() const { return c_; }
  int dim() const { return static_cast<int>(c_.size()) - 1; }

 private:
  Vec<Scalar> c_;
};

// Open unit ball; used both for the projective disc D^n and the conformal ball B^n.
template <typename Scalar>
class UnitBallPoint {
 public:
  explicit UnitBallPoint(Vec<Scalar> coords) : c_(std::move(coords)) {
    if (c_.size() < 1 || !(c_.squaredNorm() < Scalar(1))) throw std::domain_error("point is not in the open unit ball");
  }
  const Vec<Scalar>& coords() const { return c_; }
  int dim() const { return static_cast<int>(c_.size()); }

 private:
  Vec<Scalar> c_;
};

template <typename Scalar>
struct DiscPoint : UnitBallPoint<Scalar> {
  using UnitBallPoint<Scalar>::UnitBallPoint;
};
template <typename Scalar>
struct BallPoint : UnitBallPoint<Scalar> {
  using UnitBallPoint<Scalar>::UnitBallPoint;
};

template <typename Scalar>
class HalfSpacePoint {
 public:
  explicit HalfSpacePoint(Vec<Scalar> coords) : c_(std::move(coords)) {
    if (c_.size() < 1 || !(c_(c_.size() - 1) > 0)) throw std::domain_error("point is not in the upper half-space");
  }
  static HalfSpacePoint from_complex(std::complex<Scalar> z) {
    Vec<Scalar> v(2);
    v << z.real(), z.imag();
    return HalfSpacePoint(v);
  }
  const Vec<Scalar>& coords() const { return c_; }
  int dim() const { return static_cast<int>(c_.size()); }

 private:
  Vec<Scalar> c_;
};

template <typename Scalar>
Scalar dist_H(const HyperboloidPoint<Scalar>& x, const HyperboloidPoint<Scalar>& y) {
  Scalar c = -lorentz_inner(x.coords(), y.coords());
  Scalar scale = Scalar(1) + x.coords().squaredNorm() + y.coords().squaredNorm();
  if (c < Scalar(1) - Scalar(Tolerances::acosh_slack) * scale) throw std::domain_error("dist_H: -x∘y < 1");
  return detail::acosh1p(c - Scalar(1));
}

// Projective (Klein) disc distance from its closed form, independent of μ.
template <typename Scalar>
Scalar dist_D(const DiscPoint<Scalar>& x, const DiscPoint<Scalar>& y) {
  using std::sqrt;
  const auto& a = x.coords();
  const auto& b = y.coords();
  Scalar na = Scalar(1) - a.squaredNorm();
  Scalar nb = Scalar(1) - b.squaredNorm();
  // cosh d - 1 = ((1 - a·b) - sqrt(na nb)) / sqrt(na nb); numerator rewritten
  // as ((1 - a·b)^2 - na nb) / ((1 - a·b) + sqrt(na nb)) to avoid cancellation.
  Scalar p = Scalar(1) - a.dot(b);
  Scalar s = sqrt(na * nb);
  Scalar num = (a - b).squaredNorm() + a.dot(b) * a.dot(b) - a.squaredNorm() * b.squaredNorm();
  return detail::acosh1p(num / ((p + s) * s));
}

template <typename Scalar>
Scalar dist_B(const BallPoint<Scalar>& x, const BallPoint<Scalar>& y) {
  const auto& a = x.coords();
  const auto& b = y.coords();
  Scalar delta = Scalar(2) * (a - b).squaredNorm() / ((Scalar(1) - a.squaredNorm()) * (Scalar(1) - b.squaredNorm()));
  return detail::acosh1p(delta);
}

template <typename Scalar>
Scalar dist_U(const HalfSpacePoint<Scalar>& x, const HalfSpacePoint<Scalar>& y) {
  const auto& a = x.coords();
  const auto& b = y.coords();
  const auto n = a.size() - 1;
  return detail::acosh1p((a - b).squaredNorm() / (Scalar(2) * a(n) * b(n)));
}

template <typename Scalar>
Scalar dist_U(std::complex<Scalar> z, std::complex<Scalar> w) {
  return detail::acosh1p(std::norm(z - w) / (Scalar(2) * z.imag() * w.imag()));
}

template <typename Scalar>
HyperboloidPoint<Scalar> gnomonic(const DiscPoint<Scalar>& x) {
  using std::sqrt;
  const auto& c = x.coords();
  Vec<Scalar> h(c.size() + 1);
  h(0) = Scalar(1);
  h.tail(c.size()) = c;
  return HyperboloidPoint<Scalar>(h / sqrt(Scalar(1) - c.squaredNorm()));
}

template <typename Scalar>
DiscPoint<Scalar> gnomonic_inverse(const HyperboloidPoint<Scalar>& h) {
  const auto& c = h.coords();
  return DiscPoint<Scalar>(Vec<Scalar>(c.tail(c.size() - 1) / c(0)));
}

template <typename Scalar>
HyperboloidPoint<Scalar> stereographic(const BallPoint<Scalar>& x) {
  const auto& c = x.coords();
  Scalar n2 = c.squaredNorm();
  Vec<Scalar> h(c.size() + 1);
  h(0) = Scalar(1) + n2;
  h.tail(c.size()) = Scalar(2) * c;
  return HyperboloidPoint<Scalar>(h / (Scalar(1) - n2));
}

template <typename Scalar>
BallPoint<Scalar> stereographic_inverse(const HyperboloidPoint<Scalar>& h) {
  const auto& c = h.coords();
  return BallPoint<Scalar>(Vec<Scalar>(c.tail(c.size() - 1) / (c(0) + Scalar(1))));
}

// A point of E^n or the point at infinity.
template <typename Scalar>
class ExtendedPoint {
 public:
  static ExtendedPoint infinity() { return ExtendedPoint(); }
  ExtendedPoint(Vec<Scalar> v) : v_(std::move(v)) {}
  bool is_infinity() const { return !v_.has_value(); }
  const Vec<Scalar>& finite() const {
    if (!v_) throw std::logic_error("point at infinity has no coordinates");
    return *v_;
  }

 private:
  ExtendedPoint() = default;
  std::optional<Vec<Scalar>> v_;
};

template <typename Scalar>
Vec<Scalar> reflect_plane(const Vec<Scalar>& u, Scalar t, const Vec<Scalar>& x) {
  using std::abs;
  if (abs(u.norm() - Scalar(1)) > Scalar(Tolerances::unit_vector)) throw std::invalid_argument("plane normal must be a unit vector");
  return x + Scalar(2) * (t - u.dot(x)) * u;
}

template <typename Scalar>
ExtendedPoint<Scalar> reflect_sphere(const Vec<Scalar>& a, Scalar r, const ExtendedPoint<Scalar>& x) {
  if (!(r > 0)) throw std::invalid_argument("sphere radius must be positive");
  if (x.is_infinity()) return ExtendedPoint<Scalar>(a);
  Vec<Scalar> d = x.finite() - a;
  Scalar n2 = d.squaredNorm();
  if (n2 == Scalar(0)) return ExtendedPoint<Scalar>::infinity();
  return ExtendedPoint<Scalar>(Vec<Scalar>(a + (r * r / n2) * d));
}

template <typename Scalar>
Vec<Scalar> reflect_sphere(const Vec<Scalar>& a, Scalar r, const Vec<Scalar>& x) {
  auto y = reflect_sphere(a, r, ExtendedPoint<Scalar>(x));
  if (y.is_infinity()) throw std::domain_error("reflect_sphere: centre maps to infinity");
  return y.finite();
}

// η = σρ: ρ flips the last coordinate, σ reflects in S(e_n, √2).
template <typename Scalar>
BallPoint<Scalar> eta(const HalfSpacePoint<Scalar>& x) {
  Vec<Scalar> y = x.coords();
  const auto n = y.size();
  y(n - 1) = -y(n - 1);
  Vec<Scalar> en = Vec<Scalar>::Unit(n, n - 1);
  return BallPoint<Scalar>(reflect_sphere<Scalar>(en, std::sqrt(Scalar(2)), y));
}

template <typename Scalar>
HalfSpacePoint<Scalar> eta_inverse(const BallPoint<Scalar>& b) {
  const auto n = b.coords().size();
  Vec<Scalar> en = Vec<Scalar>::Unit(n, n - 1);
  Vec<Scalar> y = reflect_sphere<Scalar>(en, std::sqrt(Scalar(2)), b.coords());
  y(n - 1) = -y(n - 1);
  return HalfSpacePoint<Scalar>(y);
}

enum class Orientation { preserving, reversing };

// z ↦ (az+b)/(cz+d), or the same map precomposed with z ↦ -conj(z).
template <typename Scalar>
struct LftMap {
  Eigen::Matrix<Scalar, 2, 2> mat = Eigen::Matrix<Scalar, 2, 2>::Identity();
  Orientation orientation = Orientation::preserving;

  LftMap() = default;
  explicit LftMap(const Eigen::Matrix<Scalar, 2, 2>& m, Orientation o = Orientation::preserving) : mat(m), orientation(o) {
    using std::abs;
    if (abs(m.determinant() - Scalar(1)) > Scalar(Tolerances::det_one) * std::max(Scalar(1), m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff())) throw std::domain_error("LftMap needs determinant 1");
  }
};

template <typename Scalar>
std::complex<Scalar> lft_apply(const LftMap<Scalar>& g, std::complex<Scalar> z) {
  if (!(z.imag() > 0)) throw std::domain_error("lft_apply needs Im z > 0");
  if (g.orientation == Orientation::reversing) z = -std::conj(z);
  const auto& m = g.mat;
  std::complex<Scalar> den = m(1, 0) * z + m(1, 1);
  std::complex<Scalar> w = (m(0, 0) * z + m(0, 1)) / den;
  // The imaginary part in closed form keeps its sign exact.
  return {w.real(), z.imag() / std::norm(den)};
}

template <typename Scalar>
struct KakSl2 {
  Eigen::Matrix<Scalar, 2, 2> k1, a, k2;
  Scalar s;
};

// g = k1 * diag(s, 1/s) * k2 with k1, k2 rotations and s = ||g||.
template <typename Scalar>
KakSl2<Scalar> kak_sl2(const Eigen::Matrix<Scalar, 2, 2>& g) {
  using std::abs;
  using M2 = Eigen::Matrix<Scalar, 2, 2>;
  if (abs(g.determinant() - Scalar(1)) > Scalar(Tolerances::det_one) * std::max(Scalar(1), g.cwiseAbs().maxCoeff() * g.cwiseAbs().maxCoeff())) throw std::domain_error("kak_sl2 needs determinant 1");
  Eigen::JacobiSVD<M2> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  M2 u = svd.matrixU();
  M2 v = svd.matrixV();
  if (u.determinant() < 0) {
    u.col(1) *= Scalar(-1);
    v.col(1) *= Scalar(-1);
  }
  M2 a = M2::Zero();
  a(0, 0) = svd.singularValues()(0);
  a(1, 1) = svd.singularValues()(1);
  return {u, a, v.transpose(), a(0, 0)};
}

enum class GeodesicKind { vertical, semicircle };

// Vertical line Re z = a, or the semicircle |z - a| = r.
template <typename Scalar>
struct GeodesicU2 {
  GeodesicKind kind;
  Scalar a;
  Scalar r = 0;
};

template <typename Scalar>
GeodesicU2<Scalar> geodesic_through(std::complex<Scalar> z, std::complex<Scalar> w) {
  using std::abs;
  using std::max;
  if (z == w) throw std::invalid_argument("geodesic_through needs distinct points");
  Scalar scale = max({Scalar(1), abs(z), abs(w)});
  if (abs(z.real() - w.real()) < Scalar(Tolerances::vertical_geodesic) * scale)
    return {GeodesicKind::vertical, (z.real() + w.real()) / Scalar(2), Scalar(0)};
  Scalar a = (std::norm(w) - std::norm(z)) / (Scalar(2) * (w.real() - z.real()));
  return {GeodesicKind::semicircle, a, abs(z - a)};
}

template <typename Scalar>
bool on_geodesic(const GeodesicU2<Scalar>& L, std::complex<Scalar> z, Scalar tol) {
  using std::abs;
  if (L.kind == GeodesicKind::vertical) return abs(z.real() - L.a) <= tol;
  return abs(abs(z - L.a) - L.r) <= tol * std::max(Scalar(1), L.r);
}

// Minimizer of d_U(p, ·) over L. For a semicircle the angle solves
// cos φ = 2(x-a)r / ((x-a)^2 + y^2 + r^2) with p = x + iy.
template <typename Scalar>
std::complex<Scalar> closest_point_on_geodesic(std::complex<Scalar> p, const GeodesicU2<Scalar>& L) {
  using std::sqrt;
  Scalar m = p.real() - L.a;
  Scalar y = p.imag();
  if (L.kind == GeodesicKind::vertical) return {L.a, sqrt(m * m + y * y)};
  Scalar cphi = Scalar(2) * m * L.r / (m * m + y * y + L.r * L.r);
  Scalar sphi = sqrt(std::max(Scalar(0), Scalar(1) - cphi * cphi));
  return {L.a + L.r * cphi, L.r * sphi};
}

// Lorentzian cross product in R^3: J (x × y), J = diag(-1, 1, 1).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> lorentz_cross(const Eigen::Matrix<Scalar, 3, 1>& x, const Eigen::Matrix<Scalar, 3, 1>& y) {
  Eigen::Matrix<Scalar, 3, 1> c = x.cross(y);
  c(0) = -c(0);
  return c;
}

template <typename Scalar>
struct TriangleData {
  Scalar a, b, c;              // sides opposite x, y, z
  Scalar alpha, beta, gamma;   // angles at x, y, z
};

namespace detail {

// Unit tangent at x of the geodesic from x towards y.
template <typename Scalar>
Vec<Scalar> unit_tangent(const Vec<Scalar>& x, const Vec<Scalar>& y) {
  using std::sqrt;
  Vec<Scalar> t = y + lorentz_inner(x, y) * x;
  return t / sqrt(lorentz_inner(t, t));
}

template <typename Scalar>
Scalar angle_at(const Vec<Scalar>& x, const Vec<Scalar>& y, const Vec<Scalar>& z) {
  using std::acos;
  using std::clamp;
  Scalar c = lorentz_inner(unit_tangent(x, y), unit_tangent(x, z));
  return acos(clamp(c, Scalar(-1), Scalar(1)));
}

}  // namespace detail

// Angles are measured between the outgoing tangents at each vertex, which is
// the same as the angle between the reversed incoming side and the outgoing one.
template <typename Scalar>
TriangleData<Scalar> triangle_data(const HyperboloidPoint<Scalar>& x, const HyperboloidPoint<Scalar>& y,
                                   const HyperboloidPoint<Scalar>& z) {
  using std::abs;
  const auto& X = x.coords();
  const auto& Y = y.coords();
  const auto& Z = z.coords();
  if (X.size() != 3 || Y.size() != 3 || Z.size() != 3) throw std::invalid_argument("triangle_data works in H^2");
  Eigen::Matrix<Scalar, 3, 3> m;
  m << X, Y, Z;
  if (abs(m.determinant()) < Scalar(1e-12) * X.norm() * Y.norm() * Z.norm())
    throw std::domain_error("triangle_data: vertices are collinear");
  TriangleData<Scalar> t;
  t.a = dist_H(y, z);
  t.b = dist_H(x, z);
  t.c = dist_H(x, y);
  t.alpha = detail::angle_at<Scalar>(X, Y, Z);
  t.beta = detail::angle_at<Scalar>(Y, Z, X);
  t.gamma = detail::angle_at<Scalar>(Z, X, Y);
  return t;
}

}  // namespace hyperword
