#include "hyperword/spd.hpp"

namespace hyperword {

namespace {

Mat<double> unit_lower(int n) {
  Mat<double> l = Mat<double>::Identity(n, n);
  int k = 1;
  for (int r = 1; r < n; ++r)
    for (int c = 0; c < r; ++c) l(r, c) = k++ / 8.0;
  return l;
}

// 8^{n-1} L⁻¹ and 8 L for the unit lower-triangular factor L of the default base.
std::pair<ExactMatrix, ExactMatrix> scaled_base_factors(int n) {
  ExactMatrix l8 = ExactMatrix::identity(n);
  int k = 1;
  for (int r = 0; r < n; ++r) l8(r, r) = 8;
  for (int r = 1; r < n; ++r)
    for (int c = 0; c < r; ++c) l8(r, c) = k++;
  // Forward substitution on 8L X = 8^n I gives X = 8^{n-1} L⁻¹.
  BigInt top = 1;
  for (int i = 0; i < n; ++i) top *= 8;
  ExactMatrix x(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      BigInt acc = r == c ? top : BigInt(0);
      for (int j = 0; j < r; ++j) acc -= l8(r, j) * x(j, c);
      if (acc % 8 != 0) throw std::logic_error("scaled_base_factors: inverse is not integral");
      x(r, c) = acc / 8;
    }
  return {x, l8};
}

}  // namespace

SpdPoint<double> default_base(int n) {
  Mat<double> l = unit_lower(n);
  return SpdPoint<double>(l.transpose() * l);
}

ExactMatrix default_base_times_64(int n) {
  ExactMatrix l8 = ExactMatrix::identity(n);  // 8 L
  int k = 1;
  for (int r = 0; r < n; ++r) l8(r, r) = 8;
  for (int r = 1; r < n; ++r)
    for (int c = 0; c < r; ++c) l8(r, c) = k++;
  return l8.transpose() * l8;
}

bool fixes_default_base(const ExactMatrix& g) {
  ExactMatrix s = default_base_times_64(g.dim());
  return g * s * g.transpose() == s;
}

Mat<double> to_real(const ExactMatrix& m) {
  Mat<double> r(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r(i, j) = m(i, j).convert_to<double>();
  return r;
}

double geometric_distance(const PslElement& g1, const PslElement& g2, const SpdPoint<double>& base) {
  if (g1.dim() != g2.dim() || g1.dim() != base.dim()) throw std::invalid_argument("geometric_distance: dimension mismatch");
  ExactMatrix h = mat_inv(g1.rep()) * g2.rep();
  if (PslElement(h).is_identity()) return 0.0;
  // S = L Lᵀ, so R = Lᵀ and R⁻ᵀ h Rᵀ = L⁻¹ h L.
  Eigen::LLT<Mat<double>> llt(base.matrix());
  Mat<double> l = llt.matrixL();
  auto conj_norm = [&](const ExactMatrix& m) {
    Mat<double> x = llt.matrixL().solve(Mat<double>(to_real(m) * l));
    return std::log(real_operator_norm<double>(x));
  };
  double d = 2 * conj_norm(h) + 2 * conj_norm(mat_inv(h));
  return d < 0 ? 0.0 : d;
}

double geometric_distance(const PslElement& g1, const PslElement& g2) {
  const int n = g1.dim();
  if (g2.dim() != n) throw std::invalid_argument("geometric_distance: dimension mismatch");
  ExactMatrix h = mat_inv(g1.rep()) * g2.rep();
  if (PslElement(h).is_identity()) return 0.0;
  // S₀ = Lᵀ L, so R = L. With P = 8^{n-1} L⁻¹ and Q = 8 L, both integral,
  // R⁻ᵀ h Rᵀ = Pᵀ h Qᵀ / 8ⁿ.
  auto [p, q] = scaled_base_factors(n);
  ExactMatrix pt = p.transpose(), qt = q.transpose();
  const double shift = n * std::log(8.0);
  double d = 2 * (log_operator_norm(pt * h * qt) - shift) + 2 * (log_operator_norm(pt * mat_inv(h) * qt) - shift);
  return d < 0 ? 0.0 : d;
}

}  // namespace hyperword
