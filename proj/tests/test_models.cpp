#include "doctest.h"
#include "oracles.hpp"

#include "hyperword/json_io.hpp"
#include "hyperword/models.hpp"

#include <random>

using namespace hyperword;
using C = std::complex<double>;
using V = Vec<double>;

namespace {

V vec(std::initializer_list<double> xs) {
  V v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double normal() { return std::normal_distribution<double>()(rng); }

  HyperboloidPoint<double> hyperboloid(int n, double spread = 2.0) {
    V x(n + 1);
    for (int i = 1; i <= n; ++i) x(i) = spread * normal();
    x(0) = std::sqrt(1 + x.tail(n).squaredNorm());
    return HyperboloidPoint<double>(x);
  }
  V in_ball(int n, double rmax = 0.95) {
    V x(n);
    for (int i = 0; i < n; ++i) x(i) = normal();
    return x.normalized() * rmax * std::sqrt(uni(0, 1));
  }
  C upper(double xr = 3, double ylo = 0.05, double yhi = 4) { return {uni(-xr, xr), uni(ylo, yhi)}; }
  V half_space(int n) {
    V x(n);
    for (int i = 0; i + 1 < n; ++i) x(i) = uni(-3, 3);
    x(n - 1) = uni(0.05, 4);
    return x;
  }
};

Eigen::Matrix2d rotation(double t) {
  Eigen::Matrix2d r;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

Eigen::Matrix2d random_sl2(Sampler& s) {
  double a = std::exp(s.uni(-2, 2));
  Eigen::Matrix2d d = Eigen::Vector2d(a, 1 / a).asDiagonal();
  return rotation(s.uni(0, 7)) * d * rotation(s.uni(0, 7));
}

}  // namespace

TEST_CASE("lorentz_inner") {
  CHECK(lorentz_inner(vec({1, 0, 0}), vec({1, 0, 0})) == -1);
  CHECK(lorentz_inner(vec({0, 1, 0}), vec({0, 1, 0})) == 1);
  double t = 0.7;
  CHECK(lorentz_inner(vec({std::cosh(t), std::sinh(t), 0}), vec({1, 0, 0})) == doctest::Approx(-std::cosh(t)));
  CHECK_THROWS(lorentz_inner(vec({1, 0}), vec({1, 0, 0})));
}

TEST_CASE("point validation") {
  CHECK_THROWS_AS(HyperboloidPoint<double>(vec({1, 1, 0})), std::domain_error);
  CHECK_THROWS_AS(HyperboloidPoint<double>(vec({-1, 0, 0})), std::domain_error);
  CHECK_THROWS_AS(DiscPoint<double>(vec({0.6, 0.8})), std::domain_error);
  CHECK_THROWS_AS(HalfSpacePoint<double>(vec({0.0, 0.0})), std::domain_error);
  CHECK_NOTHROW(HyperboloidPoint<double>::apex(3));
}

TEST_CASE("dist_H") {
  auto o = HyperboloidPoint<double>::apex(2);
  CHECK(dist_H(o, o) == 0);
  HyperboloidPoint<double> p(vec({std::cosh(1.0), std::sinh(1.0), 0}));
  CHECK(dist_H(o, p) == doctest::Approx(1.0).epsilon(1e-14));
  Sampler s(1);
  for (int i = 0; i < 1000; ++i) {
    auto x = s.hyperboloid(2), y = s.hyperboloid(2), z = s.hyperboloid(2);
    CHECK(dist_H(x, z) <= dist_H(x, y) + dist_H(y, z) + 1e-9);
    CHECK(dist_H(x, y) == doctest::Approx(dist_H(y, x)));
  }
}

TEST_CASE("dist_B and dist_U examples") {
  BallPoint<double> o(vec({0, 0})), p(vec({std::tanh(0.5), 0}));
  CHECK(dist_B(o, o) == 0);
  CHECK(dist_B(o, p) == doctest::Approx(1.0).epsilon(1e-14));
  for (double a : {0.1, 1.0, 3.0})
    for (double b : {a, 2 * a, 50 * a}) CHECK(std::abs(dist_U(C(0, a), C(0, b)) - std::log(b / a)) < 1e-12);
  CHECK(std::abs(dist_U(C(0, 2), C(0, 0.5)) - std::log(4.0)) < 1e-12);
  for (double n : {1.0, 7.0, 1000.0}) CHECK(dist_U(C(0, 2), C(n, 2)) == doctest::Approx(std::acosh(1 + n * n / 8)));
  Sampler s(2);
  for (int i = 0; i < 200; ++i) {
    C z = s.upper(), w = s.upper();
    CHECK(dist_U(z, w) == doctest::Approx(oracle::half_plane_distance(z, w)).epsilon(1e-12));
    CHECK(dist_U(HalfSpacePoint<double>::from_complex(z), HalfSpacePoint<double>::from_complex(w)) ==
          doctest::Approx(dist_U(z, w)).epsilon(1e-12));
  }
}

TEST_CASE("dist_D") {
  DiscPoint<double> o(vec({0, 0})), p(vec({std::tanh(1.0), 0})), q(vec({0, -std::tanh(2.0)}));
  CHECK(dist_D(o, o) == 0);
  CHECK(dist_D(o, p) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dist_D(o, q) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gnomonic projection") {
  CHECK((gnomonic(DiscPoint<double>(vec({0, 0}))).coords() - vec({1, 0, 0})).norm() == 0);
  Sampler s(3);
  for (int n : {2, 3})
    for (int i = 0; i < 1000; ++i) {
      V x = s.in_ball(n);
      CHECK((gnomonic_inverse(gnomonic(DiscPoint<double>(x))).coords() - x).norm() < 1e-10);
      V y = s.in_ball(n);
      double dd = dist_D(DiscPoint<double>(x), DiscPoint<double>(y));
      CHECK(std::abs(dd - dist_H(gnomonic(DiscPoint<double>(x)), gnomonic(DiscPoint<double>(y)))) < 1e-9);
    }
  // A chord through 0 lands in the plane spanned by the time axis and its direction.
  V v = vec({0.6, 0.8});
  for (double t : {-0.9, -0.3, 0.2, 0.7}) {
    V h = gnomonic(DiscPoint<double>(V(t * v))).coords();
    Eigen::Matrix3d m;
    m << vec({1, 0, 0}), vec({0, v(0), v(1)}), h;
    CHECK(std::abs(m.determinant()) < 1e-12);
  }
}

TEST_CASE("stereographic projection") {
  CHECK((stereographic(BallPoint<double>(vec({0, 0}))).coords() - vec({1, 0, 0})).norm() == 0);
  CHECK(stereographic(BallPoint<double>(vec({0.5, 0}))).coords()(0) == doctest::Approx(5.0 / 3.0));
  Sampler s(4);
  for (int n : {2, 3})
    for (int i = 0; i < 1000; ++i) {
      V x = s.in_ball(n), y = s.in_ball(n);
      CHECK((stereographic_inverse(stereographic(BallPoint<double>(x))).coords() - x).norm() < 1e-10);
      double db = dist_B(BallPoint<double>(x), BallPoint<double>(y));
      CHECK(std::abs(db - dist_H(stereographic(BallPoint<double>(x)), stereographic(BallPoint<double>(y)))) < 1e-9);
    }
}

TEST_CASE("eta") {
  CHECK(eta(HalfSpacePoint<double>(vec({0, 1}))).coords().norm() < 1e-15);
  auto i1 = eta(HalfSpacePoint<double>(vec({0, 1}))), i2 = eta(HalfSpacePoint<double>(vec({0, 2})));
  CHECK(dist_B(i1, i2) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  Sampler s(5);
  for (int n : {2, 3})
    for (int i = 0; i < 1000; ++i) {
      V x = s.half_space(n), y = s.half_space(n);
      HalfSpacePoint<double> px(x), py(y);
      CHECK((eta_inverse(eta(px)).coords() - x).norm() < 1e-10 * (1 + x.norm()));
      CHECK(std::abs(dist_U(px, py) - dist_B(eta(px), eta(py))) < 1e-9);
    }
}

TEST_CASE("convert_point round trips through every model") {
  Sampler s(6);
  const Model models[] = {Model::H, Model::D, Model::B, Model::U};
  for (int i = 0; i < 200; ++i) {
    V u = s.half_space(2);
    for (Model m : models) {
      V x = convert_point(Model::U, m, u);
      CHECK((convert_point(m, Model::U, x) - u).norm() < 1e-9 * (1 + u.squaredNorm()));
    }
  }
  V b = convert_point(Model::U, Model::B, vec({0, 2}));
  CHECK(b(0) == doctest::Approx(0).epsilon(1e-15));
  CHECK(b(1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("reflect_plane") {
  V u = vec({1, 0});
  CHECK((reflect_plane(u, 0.0, vec({3, 4})) - vec({-3, 4})).norm() == 0);
  CHECK_THROWS(reflect_plane(vec({1, 1}), 0.0, vec({3, 4})));
  Sampler s(7);
  for (int i = 0; i < 200; ++i) {
    V n = vec({s.normal(), s.normal(), s.normal()}).normalized();
    double t = s.uni(-2, 2);
    V x = vec({s.normal(), s.normal(), s.normal()}), y = vec({s.normal(), s.normal(), s.normal()});
    CHECK((reflect_plane(n, t, reflect_plane(n, t, x)) - x).norm() < 1e-12);
    V on = x + (t - n.dot(x)) * n;
    CHECK((reflect_plane(n, t, on) - on).norm() < 1e-12);
    CHECK(std::abs((reflect_plane(n, t, x) - reflect_plane(n, t, y)).norm() - (x - y).norm()) < 1e-12);
  }
}

TEST_CASE("reflect_sphere") {
  V a = vec({0, 0});
  CHECK((reflect_sphere(a, 1.0, vec({2, 0})) - vec({0.5, 0})).norm() == 0);
  CHECK((reflect_sphere(a, 1.0, vec({0.6, 0.8})) - vec({0.6, 0.8})).norm() < 1e-15);
  CHECK(reflect_sphere(a, 1.0, ExtendedPoint<double>(a)).is_infinity());
  CHECK((reflect_sphere(a, 1.0, ExtendedPoint<double>::infinity()).finite() - a).norm() == 0);
  CHECK_THROWS_AS(reflect_sphere(a, 1.0, a), std::domain_error);
  Sampler s(8);
  for (int i = 0; i < 1000; ++i) {
    V c = vec({s.normal(), s.normal()});
    double r = s.uni(0.2, 3);
    V x = vec({s.normal(), s.normal()}), y = vec({s.normal(), s.normal()});
    V sx = reflect_sphere(c, r, x), sy = reflect_sphere(c, r, y);
    CHECK((reflect_sphere(c, r, sx) - x).norm() < 1e-9 * (1 + x.norm()));
    double expect = r * r * (x - y).norm() / ((x - c).norm() * (y - c).norm());
    CHECK(std::abs((sx - sy).norm() - expect) < 1e-10 * std::max(1.0, expect));
  }
}

TEST_CASE("reflections preserving the ball are d_B isometries") {
  Sampler s(9);
  for (int i = 0; i < 300; ++i) {
    V x = s.in_ball(2, 0.9), y = s.in_ball(2, 0.9);
    double before = dist_B(BallPoint<double>(x), BallPoint<double>(y));
    for (int k = 0; k < 3; ++k) {
      if (s.uni(0, 1) < 0.5) {
        V n = vec({s.normal(), s.normal()}).normalized();
        x = reflect_plane(n, 0.0, x);
        y = reflect_plane(n, 0.0, y);
      } else {
        V c = vec({s.normal(), s.normal()}).normalized() * s.uni(1.2, 4);
        double r = std::sqrt(c.squaredNorm() - 1);  // orthogonal to the unit circle
        x = reflect_sphere(c, r, x);
        y = reflect_sphere(c, r, y);
      }
    }
    CHECK(std::abs(dist_B(BallPoint<double>(x), BallPoint<double>(y)) - before) < 1e-9 * std::max(1.0, before));
  }
}

TEST_CASE("lft_apply") {
  Sampler s(10);
  C z(0.3, 1.7);
  CHECK(lft_apply(LftMap<double>(), z) == z);
  Eigen::Matrix2d v;
  v << 0, 1, -1, 0;
  C w = lft_apply(LftMap<double>(v), C(0, 2));
  CHECK(std::abs(w - C(0, 0.5)) < 1e-15);
  CHECK(std::abs(lft_apply(LftMap<double>(v), lft_apply(LftMap<double>(v), z)) - z) < 1e-14);
  for (int i = 0; i < 1000; ++i) {
    LftMap<double> g(random_sl2(s), s.uni(0, 1) < 0.5 ? Orientation::preserving : Orientation::reversing);
    C a = s.upper(), b = s.upper();
    C ga = lft_apply(g, a);
    CHECK(ga.imag() > 0);
    CHECK(std::abs(dist_U(ga, lft_apply(g, b)) - dist_U(a, b)) < 1e-9 * std::max(1.0, dist_U(a, b)));
  }
  Eigen::Matrix2d bad;
  bad << 2, 0, 0, 1;
  CHECK_THROWS_AS(LftMap<double>{bad}, std::domain_error);
}

TEST_CASE("kak_sl2") {
  Eigen::Matrix2d d = Eigen::Vector2d(3.0, 1.0 / 3.0).asDiagonal();
  CHECK(kak_sl2(d).s == doctest::Approx(3.0).epsilon(1e-15));
  Eigen::Matrix2d u;
  u << 1, 1, 0, 1;
  CHECK(kak_sl2(u).s == doctest::Approx(std::sqrt((3 + std::sqrt(5.0)) / 2)).epsilon(1e-14));
  Sampler s(11);
  for (int i = 0; i < 1000; ++i) {
    Eigen::Matrix2d g = random_sl2(s);
    auto k = kak_sl2(g);
    CHECK((k.k1 * k.a * k.k2 - g).norm() < 1e-9);
    CHECK(k.k1.determinant() == doctest::Approx(1.0));
    CHECK(k.k2.determinant() == doctest::Approx(1.0));
    CHECK((k.k1 * k.k1.transpose() - Eigen::Matrix2d::Identity()).norm() < 1e-12);
    CHECK(k.s >= 1.0);
    CHECK(k.a(1, 1) == doctest::Approx(1 / k.s));
  }
}

TEST_CASE("geodesic_through") {
  auto L = geodesic_through(C(0, 1), C(0, 2));
  CHECK(L.kind == GeodesicKind::vertical);
  CHECK(L.a == 0);
  auto M = geodesic_through(C(0, 1), C(1, 1));
  CHECK(M.kind == GeodesicKind::semicircle);
  CHECK(M.a == doctest::Approx(0.5));
  CHECK(M.r == doctest::Approx(std::sqrt(5.0) / 2));
  for (double n : {1.0, 5.0, 40.0}) {
    auto N = geodesic_through(C(0, 2), C(n, 2));
    CHECK(N.a == doctest::Approx(n / 2));
    CHECK(N.r == doctest::Approx(std::sqrt(n * n / 4 + 4)));
  }
  CHECK_THROWS(geodesic_through(C(0, 1), C(0, 1)));
  Sampler s(12);
  for (int i = 0; i < 500; ++i) {
    C z = s.upper(), w = s.upper();
    auto G = geodesic_through(z, w);
    CHECK(on_geodesic(G, z, 1e-10));
    CHECK(on_geodesic(G, w, 1e-10));
  }
}

TEST_CASE("closest_point_on_geodesic") {
  auto L = geodesic_through(C(1, 1), C(1, 3));
  CHECK(std::abs(closest_point_on_geodesic(C(1, 2), L) - C(1, 2)) < 1e-15);
  for (double a : {-3.0, 0.5, 2.0}) {
    auto V0 = geodesic_through(C(a, 1), C(a, 5));
    CHECK(std::abs(closest_point_on_geodesic(C(0, 2), V0) - C(a, std::sqrt(a * a + 4))) < 1e-12);
  }
  auto S = geodesic_through(C(-3, 0.0001), C(3, 0.0001));
  C q = closest_point_on_geodesic(C(0, 2), S);
  CHECK(std::abs(q.real()) < 1e-12);
  CHECK(q.imag() == doctest::Approx(S.r));

  Sampler s(13);
  for (int i = 0; i < 500; ++i) {
    C p = s.upper(), z = s.upper(), w = s.upper();
    auto G = geodesic_through(z, w);
    C best = closest_point_on_geodesic(p, G);
    CHECK(on_geodesic(G, best, 1e-9));
    double d0 = dist_U(p, best);
    // Neighbours along the geodesic are no closer.
    for (double h : {1e-3, -1e-3, 0.1, -0.1}) {
      C nb;
      if (G.kind == GeodesicKind::vertical) {
        nb = C(G.a, best.imag() * std::exp(h));
      } else {
        double phi = std::arg(best - G.a) + h;
        if (phi <= 0 || phi >= M_PI) continue;
        nb = G.a + std::polar(G.r, phi);
      }
      CHECK(dist_U(p, nb) >= d0 - 1e-12);
    }
  }
}

TEST_CASE("Lorentzian cross product identities") {
  Sampler s(14);
  auto lin = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2); };
  for (int i = 0; i < 500; ++i) {
    Eigen::Vector3d w(s.normal(), s.normal(), s.normal()), x(s.normal(), s.normal(), s.normal()),
        y(s.normal(), s.normal(), s.normal()), z(s.normal(), s.normal(), s.normal());
    auto xy = lorentz_cross(x, y);
    CHECK(std::abs(lin(x, xy)) < 1e-10);
    CHECK(std::abs(lin(y, xy)) < 1e-10);
    CHECK((xy + lorentz_cross(y, x)).norm() < 1e-10);
    Eigen::Matrix3d m;
    m << x.transpose(), y.transpose(), z.transpose();
    CHECK(std::abs(lin(xy, z) - m.determinant()) < 1e-10);
    CHECK(std::abs(lin(x, lorentz_cross(y, z)) - lin(xy, z)) < 1e-10);
    CHECK((lorentz_cross(x, lorentz_cross(y, z)) - (lin(x, y) * z - lin(z, x) * y)).norm() < 1e-10);
    double det2 = lin(x, w) * lin(y, z) - lin(x, z) * lin(y, w);
    CHECK(std::abs(lin(xy, lorentz_cross(z, w)) - det2) < 1e-10);
  }
}

TEST_CASE("triangle trigonometry") {
  Sampler s(15);
  int checked = 0;
  while (checked < 500) {
    auto x = s.hyperboloid(2, 1.5), y = s.hyperboloid(2, 1.5), z = s.hyperboloid(2, 1.5);
    TriangleData<double> t;
    try {
      t = triangle_data(x, y, z);
    } catch (const std::domain_error&) {
      continue;
    }
    if (std::min({t.alpha, t.beta, t.gamma}) < 1e-3 || std::min({t.a, t.b, t.c}) < 1e-3) continue;
    ++checked;
    CHECK(t.alpha + t.beta + t.gamma < M_PI);
    double ka = std::sinh(t.a) / std::sin(t.alpha);
    CHECK(std::abs(std::sinh(t.b) / std::sin(t.beta) - ka) < 1e-8 * std::max(1.0, ka));
    CHECK(std::abs(std::sinh(t.c) / std::sin(t.gamma) - ka) < 1e-8 * std::max(1.0, ka));
    double cos_rule = (std::cosh(t.a) * std::cosh(t.b) - std::cosh(t.c)) / (std::sinh(t.a) * std::sinh(t.b));
    CHECK(std::abs(std::cos(t.gamma) - cos_rule) < 1e-8);
    double second = (std::cos(t.alpha) * std::cos(t.beta) + std::cos(t.gamma)) / (std::sin(t.alpha) * std::sin(t.beta));
    CHECK(std::abs(std::cosh(t.c) - second) < 1e-8 * std::cosh(t.c));
  }
  auto o = HyperboloidPoint<double>::apex(2);
  HyperboloidPoint<double> p(vec({std::cosh(1.0), std::sinh(1.0), 0})), q(vec({std::cosh(2.0), std::sinh(2.0), 0}));
  CHECK_THROWS_AS(triangle_data(o, p, q), std::domain_error);
}

TEST_CASE("a vertex at infinity: side length from the angle") {
  // Right angle at i between the imaginary axis and the unit circle; the
  // vertex e^{iθ} joins ∞ along Re z = cos θ.
  for (double theta : {0.2, 0.7, 1.1, 1.5}) {
    C v = std::polar(1.0, theta);
    auto circle = geodesic_through(C(0, 1), v);
    REQUIRE(circle.kind == GeodesicKind::semicircle);
    C radial = v - circle.a;
    C tangent(-radial.imag(), radial.real());  // counterclockwise, towards i
    double alpha = std::acos(std::clamp(tangent.imag() / std::abs(tangent), -1.0, 1.0));
    double c = dist_U(C(0, 1), v);
    CHECK(std::abs(c - std::acosh(1 / std::sin(alpha))) < 1e-8);
  }
}
