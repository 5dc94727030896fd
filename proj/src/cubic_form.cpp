#include "psr/cubic_form.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace psr {

namespace {

// Number of nondecreasing pairs / triples drawn from m symbols.
inline std::size_t pairs_of(std::size_t m) { return m * (m + 1) / 2; }
inline std::size_t triples_of(std::size_t m) { return m * (m + 1) * (m + 2) / 6; }

inline void sort3(int& i, int& j, int& k) {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
}

}  // namespace

CubicForm::CubicForm(int dim) : dim_(dim), c_(monomial_count(dim), 0.0) {
  if (dim < 1) throw DimensionMismatch("CubicForm dimension must be positive");
}

std::size_t CubicForm::monomial_count(int dim) { return triples_of(static_cast<std::size_t>(dim)); }

std::size_t CubicForm::index(int i, int j, int k) const {
  sort3(i, j, k);
  const std::size_t n = static_cast<std::size_t>(dim_);
  // Triples starting below i, then pairs (j,k) with j in [i, .. ) ordered the same way.
  const std::size_t base = triples_of(n) - triples_of(n - static_cast<std::size_t>(i));
  const std::size_t mid =
      pairs_of(n - static_cast<std::size_t>(i)) - pairs_of(n - static_cast<std::size_t>(j));
  return base + mid + static_cast<std::size_t>(k - j);
}

std::array<int, 3> CubicForm::triple(std::size_t idx) const {
  const std::size_t n = static_cast<std::size_t>(dim_);
  int i = 0;
  std::size_t base = 0;
  // Linear scan; dimensions stay small here.
  for (i = 0; i < dim_; ++i) {
    const std::size_t block = pairs_of(n - static_cast<std::size_t>(i));
    if (idx < base + block) break;
    base += block;
  }
  std::size_t rem = idx - base;
  int j = i;
  for (; j < dim_; ++j) {
    const std::size_t row = static_cast<std::size_t>(dim_ - j);
    if (rem < row) break;
    rem -= row;
  }
  const int k = j + static_cast<int>(rem);
  return {i, j, k};
}

int CubicForm::multiplicity(int i, int j, int k) {
  if (i == j && j == k) return 1;
  if (i == j || j == k || i == k) return 3;
  return 6;
}

double CubicForm::coeff(int i, int j, int k) const { return c_[index(i, j, k)]; }
double& CubicForm::coeff(int i, int j, int k) { return c_[index(i, j, k)]; }

void CubicForm::check_dim(const Vector& p) const {
  if (p.size() != dim_) throw DimensionMismatch("point dimension does not match form dimension");
}

double CubicForm::evaluate(const Vector& p) const {
  check_dim(p);
  double acc = 0.0;
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    if (c_[idx] == 0.0) continue;
    const auto [i, j, k] = triple(idx);
    acc += c_[idx] * p[i] * p[j] * p[k];
  }
  return acc;
}

double CubicForm::polarize(const Vector& p, const Vector& q, const Vector& r) const {
  check_dim(p);
  check_dim(q);
  check_dim(r);
  double acc = 0.0;
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    const double c = c_[idx];
    if (c == 0.0) continue;
    const auto [i, j, k] = triple(idx);
    double sym;
    if (i == j && j == k) {
      sym = p[i] * q[i] * r[i];
    } else if (i == j) {
      sym = (p[i] * q[i] * r[k] + p[i] * q[k] * r[i] + p[k] * q[i] * r[i]) / 3.0;
    } else if (j == k) {
      sym = (p[i] * q[j] * r[j] + p[j] * q[i] * r[j] + p[j] * q[j] * r[i]) / 3.0;
    } else {
      sym = (p[i] * q[j] * r[k] + p[i] * q[k] * r[j] + p[j] * q[i] * r[k] + p[j] * q[k] * r[i] +
             p[k] * q[i] * r[j] + p[k] * q[j] * r[i]) /
            6.0;
    }
    acc += c * sym;
  }
  return acc;
}

Vector CubicForm::gradient(const Vector& p) const {
  check_dim(p);
  Vector g = Vector::Zero(dim_);
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    const double c = c_[idx];
    if (c == 0.0) continue;
    const auto [i, j, k] = triple(idx);
    g[i] += c * p[j] * p[k];
    g[j] += c * p[i] * p[k];
    g[k] += c * p[i] * p[j];
  }
  return g;
}

Matrix CubicForm::hessian(const Vector& p) const {
  check_dim(p);
  Matrix h = Matrix::Zero(dim_, dim_);
  // Each ordered pair of positions in the monomial contributes the third factor.
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    const double c = c_[idx];
    if (c == 0.0) continue;
    const auto [i, j, k] = triple(idx);
    h(i, j) += c * p[k];
    h(j, i) += c * p[k];
    h(i, k) += c * p[j];
    h(k, i) += c * p[j];
    h(j, k) += c * p[i];
    h(k, j) += c * p[i];
  }
  return h;
}

CubicForm CubicForm::pullback(const Matrix& T) const {
  if (T.rows() != dim_ || T.cols() != dim_)
    throw DimensionMismatch("pullback matrix dimension does not match form dimension");
  CubicForm out(dim_);
  // Expand this(T y): each monomial c * x_i x_j x_k becomes c * L_i(y) L_j(y) L_k(y)
  // with L_a the a-th row of T.
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    const double c = c_[idx];
    if (c == 0.0) continue;
    const auto [i, j, k] = triple(idx);
    for (int a = 0; a < dim_; ++a) {
      const double ta = T(i, a);
      if (ta == 0.0) continue;
      for (int b = 0; b < dim_; ++b) {
        const double tb = T(j, b);
        if (tb == 0.0) continue;
        for (int d = 0; d < dim_; ++d) {
          const double td = T(k, d);
          if (td == 0.0) continue;
          out.c_[out.index(a, b, d)] += c * ta * tb * td;
        }
      }
    }
  }
  return out;
}

double CubicForm::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

CubicForm& CubicForm::operator+=(const CubicForm& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("form dimensions differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CubicForm& CubicForm::operator-=(const CubicForm& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("form dimensions differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CubicForm& CubicForm::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

}  // namespace psr
