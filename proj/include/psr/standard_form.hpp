#pragma once

#include "psr/cubic_form.hpp"

namespace psr {

/// Invertible ambient linear map with cached inverse.
class FrameTransform {
 public:
  explicit FrameTransform(Matrix m);

  const Matrix& matrix() const { return m_; }
  const Matrix& inverse() const { return inv_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Matrix m_;
  Matrix inv_;
};

/// Ambient cubic written as x^3 - x<y,y> + P3(y): kept as the manifold
/// dimension n together with the cubic P3 in the y-variables.
struct StandardFormPoly {
  int n;
  CubicForm p3;

  explicit StandardFormPoly(int n_) : n(n_), p3(n_) {}
  StandardFormPoly(int n_, CubicForm p) : n(n_), p3(std::move(p)) {
    if (p3.dim() != n) throw DimensionMismatch("P3 dimension does not match n");
  }
};

/// Assemble the full ambient cubic in (x, y_1..y_n).
CubicForm assemble_standard(const StandardFormPoly& sf);

/// Inverse of assemble_standard; throws NotStandardForm (reporting the worst
/// offending coefficient) unless the x-coefficients have the required shape
/// within `tol`.
StandardFormPoly extract_standard(const CubicForm& h, double tol = 1e-9);

/// Pull a cubic back along a frame transform: result(p) == h(T p).
CubicForm pullback(const CubicForm& h, const FrameTransform& T);

inline constexpr double kP3Bound = 0.38490017945975052;  // 2/(3*sqrt(3))

}  // namespace psr
