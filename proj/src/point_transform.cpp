#include "psr/point_transform.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace psr {

namespace {

// Orthogonal map sending e0 to p/|p|, as a Householder reflection.
Matrix chart_rotation(const Vector& p) {
  const int N = static_cast<int>(p.size());
  Vector u = p / p.norm();
  Matrix Q = Matrix::Identity(N, N);
  Vector e0 = Vector::Zero(N);
  e0[0] = 1.0;
  Vector w = u - e0;
  const double wn2 = w.squaredNorm();
  if (wn2 < 1e-24) return Q;
  Q -= (2.0 / wn2) * (w * w.transpose());
  return Q;  // Q e0 = u, Q symmetric involutive
}

Matrix tangent_frame_unchecked(const CubicForm& h, const Vector& p) {
  const int N = h.dim();
  const int n = N - 1;
  const Vector g = h.gradient(p);
  Matrix tau = Matrix::Zero(N, n);
  for (int i = 0; i < n; ++i) {
    tau(0, i) = -g[i + 1] / g[0];
    tau(i + 1, i) = 1.0;
  }
  return tau;
}

Matrix symmetric_inverse_sqrt(const Matrix& G, double* condition) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(G);
  const Vector& lam = eig.eigenvalues();
  const double lmax = lam[lam.size() - 1];
  const double lmin = lam[0];
  if (lmin <= 1e-10) throw NotHyperbolic("frame bilinear form is not positive definite");
  if (condition) *condition = lmax / lmin;
  Vector inv_sqrt = lam.array().rsqrt();
  return eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
}

// Orthogonal Procrustes: the orthogonal Q minimizing |A Q - B|_F.
Matrix procrustes(const Matrix& A, const Matrix& B) {
  Eigen::JacobiSVD<Matrix> svd(A.transpose() * B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// Near the horizon the eigenvalue spread of G makes one pass of E = G^{-1/2}
// accurate only to eps * cond; two correction sweeps restore E^T G E = 1 to
// working precision (the correction matrix is near the identity, so its
// inverse square root is well conditioned).
Matrix polish_frame(Matrix E, const Matrix& G) {
  for (int pass = 0; pass < 2; ++pass) {
    Matrix S = E.transpose() * G * E;
    S = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
    const Vector inv_sqrt = eig.eigenvalues().array().rsqrt();
    E = E * (eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose());
  }
  return E;
}

}  // namespace

// h(p) = 1 is checked relative to the size of the monomial sums: for points
// far out in the cone the evaluation cancels to 1 from terms of order |p|^3.
static double level_set_tolerance(const CubicForm& h, const Vector& p) {
  const double pmax = p.lpNorm<Eigen::Infinity>();
  return 1e-9 * std::max(1.0, h.max_abs_coeff() * pmax * pmax * pmax);
}

Matrix tangent_frame(const CubicForm& h, const Vector& p) {
  if (p.size() != h.dim()) throw DimensionMismatch("point dimension does not match form");
  if (std::abs(h.evaluate(p) - 1.0) > level_set_tolerance(h, p))
    throw Error("tangent_frame requires h(p) = 1");
  const Vector g = h.gradient(p);
  if (std::abs(g[0]) <= 1e-12 * g.norm())
    throw Error("chart direction degenerates at p: d_x h vanishes; rotate coordinates first");
  return tangent_frame_unchecked(h, p);
}

Matrix frame_bilinear_form(const CubicForm& h, const Vector& p) {
  const Matrix tau = tangent_frame(h, p);
  const Matrix hess = h.hessian(p);
  Matrix G = -0.5 * (tau.transpose() * hess * tau);
  G = 0.5 * (G + G.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(G);
  if (eig.eigenvalues()[0] <= 1e-10)
    throw NotHyperbolic("frame bilinear form is not positive definite at p");
  return G;
}

StandardFormAtPoint standard_form_at(const CubicForm& h, const Vector& p,
                                     const GaugePolicy& gauge) {
  const int N = h.dim();
  const int n = N - 1;
  if (p.size() != N) throw DimensionMismatch("point dimension does not match form");
  if (std::abs(h.evaluate(p) - 1.0) > level_set_tolerance(h, p))
    throw Error("standard_form_at requires h(p) = 1");

  // Work in rotated ambient coordinates when d_x h|_p degenerates. Rotating the
  // base point onto the first axis keeps the chart derivative at 3/|p|.
  Vector g = h.gradient(p);
  Matrix Q;  // identity unless rotated
  const CubicForm* hp = &h;
  CubicForm rotated(h.dim());
  Vector pp = p;
  const bool rotate = std::abs(g[0]) <= 1e-8 * g.norm();
  if (rotate) {
    Q = chart_rotation(p);
    rotated = h.pullback(Q);  // rotated(y) = h(Q y), base point Q^T p = |p| e0
    hp = &rotated;
    pp = Q.transpose() * p;
  }

  const Matrix tau = tangent_frame_unchecked(*hp, pp);
  const Matrix hess = hp->hessian(pp);
  Matrix G = -0.5 * (tau.transpose() * hess * tau);
  G = 0.5 * (G + G.transpose());

  double condition = 1.0;
  Matrix E;
  if (gauge.kind == GaugePolicy::Kind::Fixed) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(G);
    const Vector& lam = eig.eigenvalues();
    if (lam[0] <= 1e-10) throw NotHyperbolic("frame bilinear form is not positive definite at p");
    condition = lam[lam.size() - 1] / lam[0];
    // Descending eigenvalues, signs pinned by the first nonzero component.
    // Exact ties fall back to coordinate order (largest component first), so
    // the identity form at the base point gets the identity frame.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    auto axis_of = [&](int idx) {
      int best = 0;
      for (int r = 1; r < n; ++r)
        if (std::abs(eig.eigenvectors()(r, idx)) > std::abs(eig.eigenvectors()(best, idx)))
          best = r;
      return best;
    };
    const double tie = 1e-9 * lam[lam.size() - 1];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (std::abs(lam[a] - lam[b]) > tie) return lam[a] > lam[b];
      return axis_of(a) < axis_of(b);
    });
    E = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const int src = order[static_cast<std::size_t>(i)];
      Vector v = eig.eigenvectors().col(src);
      for (int r = 0; r < n; ++r) {
        if (std::abs(v[r]) > 1e-12) {
          if (v[r] < 0.0) v = -v;
          break;
        }
      }
      E.col(i) = v / std::sqrt(lam[src]);
    }
  } else {
    const Matrix root = symmetric_inverse_sqrt(G, &condition);
    if (gauge.previous_frame.rows() != n || gauge.previous_frame.cols() != n)
      throw DimensionMismatch("continuous gauge needs an n x n previous frame");
    const Matrix O = procrustes(root, gauge.previous_frame);
    E = root * O;
  }
  E = polish_frame(E, G);

  Matrix A = Matrix::Zero(N, N);
  A.col(0) = pp;
  A.block(0, 1, N, n) = tau * E;
  if (rotate) A = Q * A;

  FrameTransform T(A);
  const CubicForm pulled = h.pullback(T.matrix());
  // The x-block is exact by construction (h(p) = 1, tangent columns, E
  // normalized against the frame form); what the generic pullback leaves
  // there is cancellation noise that grows with the frame conditioning.
  // Verify it at a condition-scaled tolerance, then read off the cubic part.
  const double shape_tol = std::max(1e-9, 5e-14 * condition);
  double worst = std::abs(pulled.coeff(0, 0, 0) - 1.0);
  for (int i = 1; i <= n; ++i) worst = std::max(worst, std::abs(pulled.coeff(0, 0, i)));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      worst = std::max(worst, std::abs(pulled.coeff(0, i, j) - (i == j ? -1.0 : 0.0)));
  if (worst > shape_tol)
    throw NotStandardForm("point transform did not reach standard form", worst);
  StandardFormPoly sf(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) sf.p3.coeff(i - 1, j - 1, k - 1) = pulled.coeff(i, j, k);
  return StandardFormAtPoint{std::move(T), std::move(sf), p, E, condition};
}

}  // namespace psr
