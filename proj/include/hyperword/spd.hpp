#pragma once

// The space P(n) of symmetric positive-definite matrices of determinant 1,
// acted on by SL(n,R) through M∘S = M S Mᵀ.

#include "hyperword/config.hpp"
#include "hyperword/exact_matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hyperword {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

// Rounding in an n×n determinant grows like max|m_ij|^n.
template <typename Derived>
typename Derived::Scalar det_scale(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  using std::pow;
  return pow(std::max(S(1), m.cwiseAbs().maxCoeff()), S(m.rows()));
}

}  // namespace detail

template <typename Scalar>
class SpdPoint {
 public:
  explicit SpdPoint(Mat<Scalar> m) : m_(std::move(m)) {
    using std::abs;
    if (m_.rows() != m_.cols() || m_.rows() < 1) throw std::invalid_argument("SpdPoint needs a square matrix");
    Scalar scale = std::max(Scalar(1), m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > Scalar(Tolerances::spd_symmetry) * scale)
      throw std::domain_error("SpdPoint must be symmetric");
    m_ = (m_ + m_.transpose()) / Scalar(2);
    Eigen::LDLT<Mat<Scalar>> ldlt(m_);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || !(ldlt.vectorD().minCoeff() > Scalar(0)))
      throw std::domain_error("SpdPoint must be positive definite");
    if (abs(m_.determinant() - Scalar(1)) > Scalar(Tolerances::spd_det) * detail::det_scale(m_))
      throw std::domain_error("SpdPoint must have determinant 1");
  }
  static SpdPoint identity(int n) { return SpdPoint(Mat<Scalar>::Identity(n, n)); }

  const Mat<Scalar>& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Mat<Scalar> m_;
};

template <typename Scalar, typename Derived>
Scalar real_operator_norm(const Eigen::MatrixBase<Derived>& m) {
  Eigen::JacobiSVD<Mat<Scalar>> svd(m.template cast<Scalar>());
  return svd.singularValues()(0);
}

// d_P(S1, S2) = log||S1⁻¹S2|| + log||S2⁻¹S1||, where ||S1⁻¹S2|| is read as
// ||S1^{-1/2} S2 S1^{-1/2}||, the largest eigenvalue of S1⁻¹S2. This agrees with
// the operator norm when S1 = I and is invariant under M∘S = M S Mᵀ, which the
// plain operator norm of S1⁻¹S2 is not.
template <typename Scalar>
Scalar dist_P(const SpdPoint<Scalar>& s1, const SpdPoint<Scalar>& s2) {
  using std::log;
  if (s1.dim() != s2.dim()) throw std::invalid_argument("dist_P: dimension mismatch");
  Eigen::LLT<Mat<Scalar>> l1(s1.matrix());
  const auto& lower = l1.matrixL();
  Mat<Scalar> c = lower.solve(Mat<Scalar>(lower.solve(s2.matrix()).transpose()));
  c = (c + c.transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(c, Eigen::EigenvaluesOnly);
  Scalar d = log(es.eigenvalues().maxCoeff()) - log(es.eigenvalues().minCoeff());
  return d < Scalar(0) ? Scalar(0) : d;
}

template <typename Scalar>
SpdPoint<Scalar> act(const Mat<Scalar>& m, const SpdPoint<Scalar>& s) {
  using std::abs;
  if (m.rows() != s.dim() || m.cols() != s.dim()) throw std::invalid_argument("act: dimension mismatch");
  if (abs(m.determinant() - Scalar(1)) > Scalar(Tolerances::det_one) * detail::det_scale(m))
    throw std::domain_error("act needs determinant 1");
  return SpdPoint<Scalar>(m * s.matrix() * m.transpose());
}

template <typename Scalar>
struct KakSln {
  Mat<Scalar> k1, a, k2;
};

// M = K1 A K2 with K1, K2 special orthogonal and A positive diagonal, entries descending.
template <typename Scalar>
KakSln<Scalar> kak_sln(const Mat<Scalar>& m) {
  using std::abs;
  if (m.rows() != m.cols()) throw std::invalid_argument("kak_sln needs a square matrix");
  if (abs(m.determinant() - Scalar(1)) > Scalar(Tolerances::det_one) * detail::det_scale(m))
    throw std::domain_error("kak_sln needs determinant 1");
  Eigen::JacobiSVD<Mat<Scalar>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat<Scalar> u = svd.matrixU();
  Mat<Scalar> v = svd.matrixV();
  const auto n = m.rows();
  // det U and det V agree because det M > 0; flipping the last column of both
  // leaves U Σ Vᵀ unchanged.
  if (u.determinant() < 0) {
    u.col(n - 1) *= Scalar(-1);
    v.col(n - 1) *= Scalar(-1);
  }
  return {u, Mat<Scalar>(svd.singularValues().asDiagonal()), v.transpose()};
}

// M with M∘I = S, built from the eigendecomposition S = K D² Kᵀ as M = K D.
template <typename Scalar>
Mat<Scalar> sqrt_witness(const SpdPoint<Scalar>& s) {
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(s.matrix());
  Mat<Scalar> k = es.eigenvectors();
  if (k.determinant() < 0) k.col(0) *= Scalar(-1);
  return k * es.eigenvalues().cwiseSqrt().asDiagonal();
}

// φ(g i) = g∘I with g = [[√y, x/√y], [0, 1/√y]] for z = x + iy.
template <typename Scalar>
SpdPoint<Scalar> phi_u2_to_p2(std::complex<Scalar> z) {
  Scalar x = z.real(), y = z.imag();
  if (!(y > 0)) throw std::domain_error("phi_u2_to_p2 needs Im z > 0");
  Mat<Scalar> s(2, 2);
  s << y + x * x / y, x / y, x / y, Scalar(1) / y;
  return SpdPoint<Scalar>(s);
}

template <typename Scalar>
std::complex<Scalar> phi_p2_to_u2(const SpdPoint<Scalar>& s) {
  if (s.dim() != 2) throw std::invalid_argument("phi_p2_to_u2 needs a 2x2 point");
  const auto& m = s.matrix();
  return {m(0, 1) / m(1, 1), Scalar(1) / m(1, 1)};
}

// Lᵀ L with L unit lower-triangular, strictly lower entries ε, 2ε, 3ε, ... in
// row-major order and ε = 1/8. For n = 2 this is [[1+ε², ε], [ε, 1]].
SpdPoint<double> default_base(int n);
// The same matrix scaled by 64 so that every entry is an integer.
ExactMatrix default_base_times_64(int n);

// Exact test of γ S₀ γᵀ == S₀ for the default base.
bool fixes_default_base(const ExactMatrix& g);

// d_R(g1, g2) = d_P(g1∘S, g2∘S) = d_P(S, h∘S) with h = g1⁻¹g2. Writing
// S = Rᵀ R, this is 2 log||R⁻ᵀ h Rᵀ|| + 2 log||R⁻ᵀ h⁻¹ Rᵀ||.
double geometric_distance(const PslElement& g1, const PslElement& g2, const SpdPoint<double>& base);
// The default base, evaluated with exact integer matrices so that any entry size works.
double geometric_distance(const PslElement& g1, const PslElement& g2);

Mat<double> to_real(const ExactMatrix& m);

}  // namespace hyperword
