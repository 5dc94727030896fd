#include "psr/standard_form.hpp"

#include <cmath>
#include <sstream>

namespace psr {

FrameTransform::FrameTransform(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionMismatch("frame transform must be square");
  Eigen::FullPivLU<Matrix> lu(m_);
  if (!lu.isInvertible()) throw SingularTransform("frame transform is singular");
  inv_ = lu.inverse();
  const double res = (m_ * inv_ - Matrix::Identity(m_.rows(), m_.cols())).norm();
  if (res > 1e-12 * std::max(1.0, m_.norm() * inv_.norm()))
    throw SingularTransform("frame transform inverse residual too large");
}

CubicForm assemble_standard(const StandardFormPoly& sf) {
  const int n = sf.n;
  CubicForm h(n + 1);
  h.coeff(0, 0, 0) = 1.0;
  for (int i = 1; i <= n; ++i) h.coeff(0, i, i) = -1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const double c = sf.p3.coeff(i, j, k);
        if (c != 0.0) h.coeff(i + 1, j + 1, k + 1) = c;
      }
  return h;
}

StandardFormPoly extract_standard(const CubicForm& h, double tol) {
  const int N = h.dim();
  if (N < 2) throw DimensionMismatch("ambient cubic needs at least two variables");
  const int n = N - 1;
  double worst = 0.0;
  std::string worst_name;
  auto offend = [&](double got, double want, int i, int j, int k) {
    const double off = std::abs(got - want);
    if (off > worst) {
      worst = off;
      std::ostringstream os;
      os << "coefficient (" << i << "," << j << "," << k << ") = " << got << ", expected " << want;
      worst_name = os.str();
    }
  };
  offend(h.coeff(0, 0, 0), 1.0, 0, 0, 0);
  for (int i = 1; i <= n; ++i) offend(h.coeff(0, 0, i), 0.0, 0, 0, i);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) offend(h.coeff(0, i, j), i == j ? -1.0 : 0.0, 0, i, j);
  if (worst > tol)
    throw NotStandardForm("cubic is not in standard form: " + worst_name, worst);

  StandardFormPoly sf(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) sf.p3.coeff(i - 1, j - 1, k - 1) = h.coeff(i, j, k);
  return sf;
}

CubicForm pullback(const CubicForm& h, const FrameTransform& T) {
  if (T.dim() != h.dim()) throw DimensionMismatch("transform dimension does not match form");
  return h.pullback(T.matrix());
}

}  // namespace psr
