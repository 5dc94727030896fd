#include "psr/examples.hpp"

#include <cmath>
#include <random>

#include "psr/rng.hpp"

namespace psr {
namespace examples {

namespace {
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

StandardFormPoly dim1(double a) {
  StandardFormPoly sf(1);
  sf.p3.coeff(0, 0, 0) = a;
  return sf;
}

StandardFormPoly dim1_homogeneous() { return dim1(-2.0 / (3.0 * kSqrt3)); }

StandardFormPoly motivating() {
  StandardFormPoly sf(2);
  sf.p3.coeff(0, 0, 0) = 2.0 / (3.0 * kSqrt3);
  return sf;
}

StandardFormPoly ker01(int n) {
  if (n < 2) throw DimensionMismatch("ker01 needs n >= 2");
  StandardFormPoly sf(n);
  const int v = n - 2;  // v_{n-1}
  const int w = n - 1;
  sf.p3.coeff(v, v, v) = -2.0 / (3.0 * kSqrt3);
  sf.p3.coeff(v, w, w) = 2.0 / kSqrt3;
  return sf;
}

CubicForm ker01_reduced(double c) {
  CubicForm p3(2);
  p3.coeff(0, 0, 0) = -2.0 / (3.0 * kSqrt3) * c * c * c;
  p3.coeff(0, 1, 1) = 2.0 / kSqrt3 * c;
  return p3;
}

StandardFormPoly sqrt2_family(double b, int n, int m) {
  if (n < 3 || m < 1 || m > n - 2) throw DimensionMismatch("sqrt2_family needs n >= 3, 1 <= m <= n-2");
  StandardFormPoly sf(n);
  const int ulast = n - 2;  // last u-coordinate carries the distinguished direction
  const int w = n - 1;
  for (int i = 0; i < m; ++i) {
    sf.p3.coeff(i, i, ulast) += -2.0 * b;
    sf.p3.coeff(i, i, w) += 1.0 / kSqrt2;
  }
  sf.p3.coeff(ulast, w, w) += b;
  sf.p3.coeff(w, w, w) += 1.0 / (2.0 * kSqrt2);
  return sf;
}

StandardFormPoly kerm1(int n, int m) {
  if (n < 3 || m < 1 || m > n - 2) throw DimensionMismatch("kerm1 needs n >= 3, 1 <= m <= n-2");
  StandardFormPoly sf(n);
  const int ulast = n - 2;
  const int w = n - 1;
  for (int i = 0; i < m; ++i) {
    sf.p3.coeff(i, i, ulast) += -1.0 / kSqrt3;
    sf.p3.coeff(i, i, w) += 1.0;
  }
  sf.p3.coeff(ulast, ulast, ulast) += -2.0 / (3.0 * kSqrt3);
  sf.p3.coeff(ulast, w, w) += 2.0 / kSqrt3;
  return sf;
}

CubicForm kerm1_reduced(double c) {
  CubicForm p3(3);  // variables (s, u, w)
  p3.coeff(0, 0, 1) = -c / kSqrt3;
  p3.coeff(1, 1, 1) = -2.0 / (3.0 * kSqrt3) * c * c * c;
  p3.coeff(0, 0, 2) = 1.0;
  p3.coeff(1, 2, 2) = 2.0 / kSqrt3 * c;
  return p3;
}

StandardFormPoly catalog(int n, int m, const std::vector<Matrix>& F) {
  return canonical_polynomial(LimitForm{n, m, F});
}

StandardFormPoly random_catalog(int n, int m, std::uint64_t seed, double spectral_margin) {
  if (n < 1 || m < 0 || m > n - 1) throw DimensionMismatch("invalid (n, m)");
  const int nu = n - 1 - m;
  std::mt19937_64 rng(seed);
  std::vector<Matrix> F;
  F.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    Matrix A(nu, nu);
    for (int r = 0; r < nu; ++r)
      for (int c = r; c < nu; ++c) {
        std::normal_distribution<double> g(0.0, 1.0);
        A(r, c) = A(c, r) = g(rng);
      }
    F.push_back(A);
  }
  if (m > 0 && nu > 0) {
    const FValidation val = validate_F(F, seed ^ 0x5851f42d4c957f2dull);
    const double radius = val.max_abs_eigenvalue_over_unit_c;
    if (radius > 0.0) {
      const double scale = (1.0 - spectral_margin) / radius;
      for (Matrix& Fi : F) Fi *= scale;
    }
  }
  return canonical_polynomial(LimitForm{n, m, F});
}

StandardFormPoly generic_limit(int n) {
  return StandardFormPoly(n, catalog_p3(n, 0, {}));
}

}  // namespace examples
}  // namespace psr
