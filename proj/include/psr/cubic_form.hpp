#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "psr/errors.hpp"

namespace psr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Cubic homogeneous polynomial in `dim` variables, stored per monomial.
///
/// Coefficients are indexed by nondecreasing triples (i,j,k), 0 <= i <= j <= k < dim,
/// and are monomial coefficients (not symmetrized tensor entries): the value of the
/// polynomial is sum coeff(i,j,k) * p_i p_j p_k over nondecreasing triples. The
/// associated symmetric trilinear form divides each coefficient by the number of
/// distinct permutations of its index triple.
class CubicForm {
 public:
  explicit CubicForm(int dim);

  static std::size_t monomial_count(int dim);

  int dim() const { return dim_; }

  /// Monomial coefficient access; indices are sorted internally.
  double coeff(int i, int j, int k) const;
  double& coeff(int i, int j, int k);

  const std::vector<double>& raw() const { return c_; }
  std::vector<double>& raw() { return c_; }

  /// Flat index of the sorted triple (i,j,k) in the coefficient vector.
  std::size_t index(int i, int j, int k) const;
  /// Inverse of index(): the nondecreasing triple at a flat position.
  std::array<int, 3> triple(std::size_t idx) const;

  /// Number of distinct permutations of the triple (1, 3, or 6).
  static int multiplicity(int i, int j, int k);

  double evaluate(const Vector& p) const;
  /// Fully symmetric trilinear form with polarize(p,p,p) == evaluate(p).
  double polarize(const Vector& p, const Vector& q, const Vector& r) const;
  Vector gradient(const Vector& p) const;
  Matrix hessian(const Vector& p) const;

  /// Composition with a linear map: result(y) == (*this)(T y).
  CubicForm pullback(const Matrix& T) const;

  double max_abs_coeff() const;

  CubicForm& operator+=(const CubicForm& o);
  CubicForm& operator-=(const CubicForm& o);
  CubicForm& operator*=(double s);
  friend CubicForm operator-(CubicForm a, const CubicForm& b) { return a -= b; }
  friend CubicForm operator*(double s, CubicForm a) { return a *= s; }

 private:
  void check_dim(const Vector& p) const;

  int dim_;
  std::vector<double> c_;
};

}  // namespace psr
