#include "doctest.h"
#include "oracles.hpp"

#include "hyperword/experiments.hpp"
#include "hyperword/models.hpp"
#include "hyperword/spd.hpp"
#include "hyperword/tessellation.hpp"
#include "hyperword/words.hpp"

#include <random>

using namespace hyperword;
using M = Mat<double>;

namespace {

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double normal() { return std::normal_distribution<double>()(rng); }

  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  M rotation(int n) {
    M g(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g(r, c) = normal();
    Eigen::HouseholderQR<M> qr(g);
    M q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1;
    return q;
  }
  // K1 A K2 with log singular values in [-2, 2], so conditioning stays moderate.
  M sl(int n) {
    Eigen::VectorXd logs(n);
    for (int i = 0; i < n; ++i) logs(i) = uni(-2, 2);
    logs.array() -= logs.mean();
    return rotation(n) * M(logs.array().exp().matrix().asDiagonal()) * rotation(n);
  }
  SpdPoint<double> spd(int n) { return act(sl(n), SpdPoint<double>::identity(n)); }
};

M diag2(double a, double b) {
  M m = M::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("SpdPoint validation") {
  CHECK_THROWS_AS(SpdPoint<double>(diag2(2, 1)), std::domain_error);
  CHECK_THROWS_AS(SpdPoint<double>(diag2(-1, -1)), std::domain_error);
  M ns(2, 2);
  ns << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(SpdPoint<double>{ns}, std::domain_error);
  CHECK_NOTHROW(SpdPoint<double>(diag2(4, 0.25)));
}

TEST_CASE("dist_P examples and metric axioms") {
  auto id = SpdPoint<double>::identity(2);
  CHECK(dist_P(id, id) == 0);
  for (double s : {1.1, 2.0, 10.0})
    CHECK(std::abs(dist_P(id, SpdPoint<double>(diag2(s * s, 1 / (s * s)))) - 4 * std::log(s)) < 1e-10);
  Sampler g(1);
  for (int n : {2, 3, 4})
    for (int i = 0; i < 1000 / 3; ++i) {
      auto a = g.spd(n), b = g.spd(n), c = g.spd(n);
      double ab = dist_P(a, b);
      CHECK(ab >= 0);
      CHECK(ab == doctest::Approx(dist_P(b, a)).epsilon(1e-9));
      CHECK(dist_P(a, c) <= ab + dist_P(b, c) + 1e-9);
      CHECK(dist_P(a, a) < 1e-9);
    }
  CHECK_THROWS(dist_P(id, SpdPoint<double>::identity(3)));
}

TEST_CASE("act") {
  Sampler g(2);
  auto s = g.spd(3);
  CHECK((act(M(M::Identity(3, 3)), s).matrix() - s.matrix()).norm() < 1e-14);
  CHECK((act(diag2(3, 1.0 / 3), SpdPoint<double>::identity(2)).matrix() - diag2(9, 1.0 / 9)).norm() < 1e-14);
  for (int i = 0; i < 1000; ++i) {
    int n = 2 + i % 3;
    M m = g.sl(n), m2 = g.sl(n);
    auto s1 = g.spd(n), s2 = g.spd(n);
    double d = dist_P(s1, s2);
    CHECK(std::abs(dist_P(act(m, s1), act(m, s2)) - d) < 1e-9 * std::max(1.0, d));
    M lhs = act(M(m * m2), s1).matrix(), rhs = act(m, act(m2, s1)).matrix();
    CHECK((lhs - rhs).norm() < 1e-10 * std::max(1.0, lhs.norm()));
  }
  CHECK_THROWS_AS(act(diag2(2, 1), SpdPoint<double>::identity(2)), std::domain_error);
}

TEST_CASE("kak_sln") {
  M d = M::Zero(3, 3);
  d.diagonal() << 0.5, 4, 0.5;
  auto k0 = kak_sln(d);
  CHECK((k0.k1 * k0.a * k0.k2 - d).norm() < 1e-12);
  CHECK(k0.a(0, 0) == doctest::Approx(4));
  Sampler g(3);
  for (int i = 0; i < 500; ++i) {
    int n = 2 + i % 4;
    M m = g.sl(n);
    auto k = kak_sln(m);
    CHECK((k.k1 * k.a * k.k2 - m).norm() < 1e-9);
    CHECK(k.k1.determinant() == doctest::Approx(1.0));
    CHECK(k.k2.determinant() == doctest::Approx(1.0));
    CHECK(k.a.diagonal().prod() == doctest::Approx(1.0));
    CHECK(k.a.diagonal().minCoeff() > 0);
    CHECK(std::abs(real_operator_norm<double>(m) - k.a.diagonal().maxCoeff()) < 1e-9);
  }
}

TEST_CASE("sqrt_witness") {
  auto id = SpdPoint<double>::identity(3);
  CHECK((act(sqrt_witness(id), id).matrix() - id.matrix()).norm() < 1e-12);
  M w = sqrt_witness(SpdPoint<double>(diag2(4, 0.25)));
  CHECK(w.determinant() == doctest::Approx(1.0));
  CHECK(real_operator_norm<double>(w) == doctest::Approx(2.0));
  Sampler g(4);
  for (int i = 0; i < 300; ++i) {
    auto s = g.spd(2 + i % 3);
    M root = sqrt_witness(s);
    CHECK(root.determinant() == doctest::Approx(1.0));
    CHECK((act(root, SpdPoint<double>::identity(s.dim())).matrix() - s.matrix()).norm() < 1e-9 * s.matrix().norm());
  }
}

TEST_CASE("the half-plane and P(2)") {
  using C = std::complex<double>;
  CHECK((phi_u2_to_p2(C(0, 1)).matrix() - M(M::Identity(2, 2))).norm() < 1e-15);
  CHECK((phi_u2_to_p2(C(0, 9)).matrix() - diag2(9, 1.0 / 9)).norm() < 1e-14);
  // d_U(i, 4i) = log 4 and d_P(φi, φ4i) = d_P(I, diag(4, 1/4)) = 4 log 2: d_P is twice d_U.
  double du = dist_U(C(0, 1), C(0, 4));
  double dp = dist_P(phi_u2_to_p2(C(0, 1)), phi_u2_to_p2(C(0, 4)));
  CHECK(du == doctest::Approx(std::log(4.0)));
  CHECK(dp == doctest::Approx(4 * std::log(2.0)));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-3, 3), im(0.05, 4);
  for (int i = 0; i < 1000; ++i) {
    C z(re(rng), im(rng)), w(re(rng), im(rng));
    auto pz = phi_u2_to_p2(z);
    CHECK(std::abs(phi_p2_to_u2(pz) - z) < 1e-12 * (1 + std::abs(z)));
    CHECK(std::abs(dist_P(pz, phi_u2_to_p2(w)) - 2 * dist_U(z, w)) < 1e-9);
  }
}

TEST_CASE("dist_P(I, g∘I) = 2 log(||g|| ||g⁻¹||)") {
  Sampler g(6);
  for (int i = 0; i < 300; ++i) {
    int n = 2 + i % 3;
    M m = g.sl(n);
    double expect = 2 * std::log(real_operator_norm<double>(m) * real_operator_norm<double>(M(m.inverse())));
    auto id = SpdPoint<double>::identity(n);
    CHECK(std::abs(dist_P(id, act(m, id)) - expect) < 1e-9);
  }
}

TEST_CASE("default base") {
  M s2(2, 2);
  s2 << 1 + 1.0 / 64, 1.0 / 8, 1.0 / 8, 1;
  CHECK((default_base(2).matrix() - s2).norm() < 1e-15);
  for (int n = 2; n <= 5; ++n) {
    CHECK(default_base(n).matrix().determinant() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK((to_real(default_base_times_64(n)) / 64.0 - default_base(n).matrix()).norm() < 1e-14);
  }
  CHECK(fixes_default_base(ExactMatrix::identity(3)));
  CHECK(fixes_default_base(-ExactMatrix::identity(2)));
  CHECK_FALSE(fixes_default_base(u_power(1)));
}

TEST_CASE("default base has trivial stabiliser on a ball") {
  // Exact check of every element of word length <= r.
  for (auto [d, r] : {std::pair{2, 6}, std::pair{3, 4}}) {
    CayleyBall ball(sigma(d), r);
    int fixers = 0;
    for (const auto& g : ball.elements()) fixers += fixes_default_base(g) && !PslElement(g).is_identity();
    CHECK(fixers == 0);
  }
}

TEST_CASE("geometric_distance") {
  std::mt19937_64 rng(7);
  const PslElement one(ExactMatrix::identity(3));
  for (int i = 0; i < 300; ++i) {
    ExactMatrix a = random_product(sigma(3), 12, rng), b = random_product(sigma(3), 12, rng);
    PslElement pa(a), pb(b);
    double d = geometric_distance(pa, pb);
    CHECK(geometric_distance(pa, pa) < 1e-12);
    CHECK(std::abs(d - geometric_distance(one, PslElement(mat_inv(a) * b))) < 1e-10 * std::max(1.0, d));
    auto base = default_base(3);
    double direct = dist_P(act(to_real(a), base), act(to_real(b), base));
    CHECK(std::abs(d - direct) < 1e-8 * std::max(1.0, d));
    if (!(pa == pb)) CHECK(d > 0);
  }
  // d_R(1, uⁿ) / log n stays bounded.
  const PslElement one2(ExactMatrix::identity(2));
  for (double n = 2; n <= 1e6; n *= 3) {
    double q = geometric_distance(one2, PslElement(u_power(static_cast<long long>(n)))) / std::log(n);
    CHECK(q > 0.5);
    CHECK(q < 8);
  }
}

TEST_CASE("changing the base point") {
  std::mt19937_64 rng(8);
  Sampler g(9);
  auto p = default_base(3);
  auto q = g.spd(3);
  double dpq = dist_P(p, q);
  const PslElement one(ExactMatrix::identity(3));
  for (int i = 0; i < 500; ++i) {
    PslElement h(random_product(sigma(3), 10, rng));
    CHECK(geometric_distance(one, h, p) <= 2 * dpq + geometric_distance(one, h, q) + 1e-9);
  }
}
