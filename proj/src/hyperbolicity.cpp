#include "psr/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>

namespace psr {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - 1e-12) return true;
    if (a[i] > b[i] + 1e-12) return false;
  }
  return false;
}

// Newton refinement of the stationarity system dP3 - 2*nu*p = 0, |p| = 1.
bool newton_on_sphere(const CubicForm& p3, Vector& p, int max_iters = 40) {
  const int n = p3.dim();
  double nu = 1.5 * p3.evaluate(p);
  const double scale = std::max(1.0, p3.max_abs_coeff());
  for (int it = 0; it < max_iters; ++it) {
    const Vector g = p3.gradient(p);
    Eigen::VectorXd F(n + 1);
    F.head(n) = g - 2.0 * nu * p;
    F[n] = 0.5 * (p.squaredNorm() - 1.0);
    if (F.norm() <= 1e-14 * scale) return true;
    Matrix J = Matrix::Zero(n + 1, n + 1);
    J.topLeftCorner(n, n) = p3.hessian(p) - 2.0 * nu * Matrix::Identity(n, n);
    J.topRightCorner(n, 1) = -2.0 * p;
    J.bottomLeftCorner(1, n) = p.transpose();
    Eigen::FullPivLU<Matrix> lu(J);
    if (!lu.isInvertible()) return false;
    const Eigen::VectorXd step = lu.solve(F);
    if (!step.allFinite()) return false;
    double damp = 1.0;
    if (step.norm() > 0.5) damp = 0.5 / step.norm();
    p -= damp * step.head(n);
    nu -= damp * step[n];
    if (step.norm() * damp < 1e-16) break;
  }
  const Vector g = p3.gradient(p);
  Eigen::VectorXd F(n + 1);
  F.head(n) = g - 2.0 * nu * p;
  F[n] = 0.5 * (p.squaredNorm() - 1.0);
  return F.norm() <= 1e-11 * scale;
}

}  // namespace

const char* to_string(Closedness c) {
  switch (c) {
    case Closedness::ClosedRegular: return "CLOSED_REGULAR";
    case Closedness::ClosedSingularAtInfinity: return "CLOSED_SINGULAR_AT_INFINITY";
    case Closedness::NotClosed: return "NOT_CLOSED";
  }
  return "UNKNOWN";
}

SphereMaxResult sphere_max(const CubicForm& p3, std::uint64_t seed) {
  const int n = p3.dim();
  SphereMaxResult res;
  const double scale = p3.max_abs_coeff();
  if (scale < 1e-15) {
    // Identically (numerically) zero cubic: the max is 0 everywhere.
    Vector e = Vector::Zero(n);
    e[0] = 1.0;
    res.max_value = 0.0;
    res.argmax_points.push_back(e);
    res.starts_used = 0;
    return res;
  }

  if (n == 1) {
    const double a = p3.coeff(0, 0, 0);
    Vector p(1);
    p[0] = a >= 0.0 ? 1.0 : -1.0;
    res.max_value = std::abs(a);
    res.argmax_points.push_back(p);
    res.critical_points.push_back({p, std::abs(a), 0.0});
    res.starts_used = 2;
    return res;
  }

  const int starts = std::max(64 * n, 96);
  const auto dirs = sphere_directions(n, starts, seed);
  res.starts_used = starts;

  std::vector<CriticalPoint> found;
  for (const Vector& d : dirs) {
    Vector p = d;
    // Projected ascent to get into a basin.
    double step = 0.25;
    double val = p3.evaluate(p);
    for (int it = 0; it < 60; ++it) {
      const Vector g = p3.gradient(p);
      Vector tang = g - g.dot(p) * p;
      const double tn = tang.norm();
      if (tn < 1e-13 * std::max(1.0, scale)) break;
      Vector cand = p + step * tang / tn;
      cand.normalize();
      const double cv = p3.evaluate(cand);
      if (cv > val) {
        p = cand;
        val = cv;
        step = std::min(0.5, step * 1.3);
      } else {
        step *= 0.5;
        if (step < 1e-6) break;
      }
    }
    if (!newton_on_sphere(p3, p)) continue;
    const double nrm = p.norm();
    if (nrm < 0.5) continue;
    p /= nrm;
    const double value = p3.evaluate(p);
    const double residual = (p3.gradient(p) - 3.0 * value * p).norm();
    if (residual > 1e-8 * std::max(1.0, scale)) continue;
    found.push_back({p, value, residual});
  }

  // Deduplicate and order deterministically.
  std::sort(found.begin(), found.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return lex_less(a.point, b.point); });
  for (const auto& cp : found) {
    bool dup = false;
    for (const auto& kept : res.critical_points)
      if ((kept.point - cp.point).norm() < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) res.critical_points.push_back(cp);
  }

  double best = 0.0;  // value at any sphere point is >= max(P3, -P3) >= ... start from evaluations
  for (const auto& cp : res.critical_points) best = std::max(best, cp.value);
  // Antipodes of minima are maxima of the odd function; cover them too.
  for (const auto& cp : res.critical_points) best = std::max(best, -cp.value);
  res.max_value = best;
  for (const auto& cp : res.critical_points) {
    if (cp.value >= best - 1e-9 * std::max(1.0, std::abs(best)))
      res.argmax_points.push_back(cp.point);
    else if (-cp.value >= best - 1e-9 * std::max(1.0, std::abs(best)))
      res.argmax_points.push_back(-cp.point);
  }
  std::sort(res.argmax_points.begin(), res.argmax_points.end(), lex_less);
  res.argmax_points.erase(
      std::unique(res.argmax_points.begin(), res.argmax_points.end(),
                  [](const Vector& a, const Vector& b) { return (a - b).norm() < 1e-6; }),
      res.argmax_points.end());
  return res;
}

ClosednessVerdict closedness(const StandardFormPoly& sf, double sing_tol, std::uint64_t seed) {
  const SphereMaxResult sm = sphere_max(sf.p3, seed);
  ClosednessVerdict v;
  v.max_value = sm.max_value;
  v.margin = sm.max_value - kP3Bound;
  v.argmax = sm.argmax_points;
  if (std::abs(v.margin) <= sing_tol)
    v.status = Closedness::ClosedSingularAtInfinity;
  else if (v.margin < 0.0)
    v.status = Closedness::ClosedRegular;
  else
    v.status = Closedness::NotClosed;
  return v;
}

Signature hessian_signature(const CubicForm& h, const Vector& p) {
  if (h.evaluate(p) <= 0.0) throw Error("hessian_signature requires h(p) > 0");
  const Matrix neg_hess = -h.hessian(p);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(neg_hess);
  const double thresh = 1e-9 * std::max(neg_hess.norm(), 1e-300);
  Signature s;
  for (int i = 0; i < neg_hess.rows(); ++i) {
    const double l = eig.eigenvalues()[i];
    if (l > thresh)
      ++s.n_pos;
    else if (l < -thresh)
      ++s.n_neg;
    else
      ++s.n_zero;
  }
  return s;
}

bool is_hyperbolic(const CubicForm& h, const Vector& p) {
  if (h.evaluate(p) <= 0.0) return false;
  const Signature s = hessian_signature(h, p);
  return s.n_neg == 1 && s.n_zero == 0;
}

std::vector<std::pair<Vector, double>> critical_points_with_norms(const CubicForm& p3,
                                                                  double level,
                                                                  std::uint64_t seed) {
  if (level <= 0.0) throw Error("critical point level must be positive");
  const int n = p3.dim();
  const double mult = 3.0 * level;
  const double scale = std::max(1.0, p3.max_abs_coeff());

  std::vector<Vector> sols;
  const auto dirs = sphere_directions(n, std::max(32 * n, 64), seed);
  // Radii reach far out: solution norms scale like inverse powers of small
  // family parameters (norms in the hundreds occur in the worked families).
  const double radii[] = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0};
  for (const Vector& d : dirs) {
    for (double r : radii) {
      Vector p = r * d;
      bool ok = false;
      for (int it = 0; it < 80; ++it) {
        const Vector F = p3.gradient(p) - mult * p;
        const double fscale = scale * std::max(1.0, p.squaredNorm());
        if (F.norm() <= 1e-12 * fscale) {
          ok = true;
          break;
        }
        Matrix J = p3.hessian(p) - mult * Matrix::Identity(n, n);
        Eigen::FullPivLU<Matrix> lu(J);
        if (!lu.isInvertible()) break;
        Vector step = lu.solve(F);
        if (!step.allFinite()) break;
        if (step.norm() > 2.0 * (1.0 + p.norm())) step *= 2.0 * (1.0 + p.norm()) / step.norm();
        p -= step;
        if (p.norm() > 1e6) break;
      }
      if (!ok) continue;
      // A few undamped extra steps sharpen the root so deduplication at 1e-6
      // collapses rediscoveries from different starts.
      for (int it = 0; it < 4; ++it) {
        Matrix J = p3.hessian(p) - mult * Matrix::Identity(n, n);
        Eigen::FullPivLU<Matrix> lu(J);
        if (!lu.isInvertible()) break;
        const Vector step = lu.solve(p3.gradient(p) - mult * p);
        if (!step.allFinite() || step.norm() > 1.0) break;
        p -= step;
      }
      if (p.norm() < 1e-4) continue;  // the origin is always a trivial solution
      sols.push_back(p);
    }
  }
  std::sort(sols.begin(), sols.end(), lex_less);
  std::vector<std::pair<Vector, double>> out;
  for (const auto& p : sols) {
    bool dup = false;
    for (const auto& kept : out)
      if ((kept.first - p).norm() < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) out.emplace_back(p, p.norm());
  }
  return out;
}

}  // namespace psr
