#include "psr/metric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "psr/evolution.hpp"
#include "psr/rng.hpp"

namespace psr {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pointwise chart data of F(y) = 1 - <y,y> + P3(y).
double chart_value(const StandardFormPoly& sf, const Vector& y) {
  return 1.0 - y.squaredNorm() + sf.p3.evaluate(y);
}

Matrix metric_at(const StandardFormPoly& sf, const Vector& y, double F) {
  const Vector dF = -2.0 * y + sf.p3.gradient(y);
  const Matrix d2F = -2.0 * Matrix::Identity(sf.n, sf.n) + sf.p3.hessian(y);
  return -d2F / (3.0 * F) + (2.0 / 9.0) * (dF * dF.transpose()) / (F * F);
}

// sup over the grid of the g_ref-relative spectral norm of (g - g_ref).
double grid_discrepancy(const StandardFormPoly& a, const StandardFormPoly& ref,
                        const std::vector<Vector>& grid) {
  double worst = 0.0;
  for (const Vector& y : grid) {
    const double Fa = chart_value(a, y);
    const double Fr = chart_value(ref, y);
    if (Fa <= 0.0 || Fr <= 0.0) throw OutsideDomain("grid point leaves the chart domain");
    const Matrix ga = metric_at(a, y, Fa);
    const Matrix gr = metric_at(ref, y, Fr);
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(ga - gr, gr);
    const auto& ev = eig.eigenvalues();
    worst = std::max(worst, std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1])));
  }
  return worst;
}

}  // namespace

double dom_boundary_radius(const StandardFormPoly& sf, const Vector& q) {
  if (q.size() != sf.n) throw DimensionMismatch("direction dimension does not match n");
  if (std::abs(q.norm() - 1.0) > 1e-9) throw Error("boundary radius needs a unit direction");
  double a = sf.p3.evaluate(q);
  // Singular-at-infinity inputs produced numerically (e.g. extracted limits)
  // can overshoot the bound by extraction noise; treat that as the grazing
  // double-root case instead of refusing the ray.
  if (std::abs(a) > kP3Bound && std::abs(a) <= kP3Bound + 1e-6)
    a = a > 0.0 ? kP3Bound : -kP3Bound;
  const RayCubic ray(a);
  return ray.horizon();
}

void dom_boundary_emit(const StandardFormPoly& sf, int resolution, std::ostream& out,
                       std::uint64_t seed) {
  if (resolution < 1) throw Error("resolution must be positive");
  char buf[64];
  if (sf.n == 2) {
    out << "theta,radius\n";
    for (int i = 0; i < resolution; ++i) {
      const double th = 2.0 * kPi * i / resolution;
      Vector q(2);
      q << std::cos(th), std::sin(th);
      const double r = dom_boundary_radius(sf, q);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", th, r);
      out << buf;
    }
    return;
  }
  for (int i = 0; i < sf.n; ++i) out << "d" << (i + 1) << ",";
  out << "radius\n";
  for (const Vector& q : sphere_directions(sf.n, resolution, seed)) {
    for (int i = 0; i < sf.n; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,", q[i]);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", dom_boundary_radius(sf, q));
    out << buf;
  }
}

MetricSample centro_affine_metric(const StandardFormPoly& sf, const Vector& y) {
  if (y.size() != sf.n) throw DimensionMismatch("point dimension does not match n");
  const double F = chart_value(sf, y);
  if (F <= 0.0) throw OutsideDomain("point is outside the chart domain");
  const double r = y.norm();
  if (r > 1e-12) {
    // Inside means strictly before the first boundary crossing along the ray.
    const double bd = dom_boundary_radius(sf, y / r);
    if (r >= bd) throw OutsideDomain("point is outside the chart domain");
  }
  return MetricSample{y, metric_at(sf, y, F)};
}

ConvergenceReport metric_convergence_check(const StandardFormPoly& sf, const Vector& v,
                                           double U_radius, double eps, int grid_per_axis,
                                           std::uint64_t seed) {
  if (eps <= 0.0 || U_radius <= 0.0) throw Error("radius and eps must be positive");
  const int n = sf.n;
  if (U_radius >= std::sqrt(3.0) / 2.0)
    throw Error("ball must stay inside the chart domain of the limit");

  LimitExtraction lim = extract_limit(sf, v, seed);
  const StandardFormPoly limit_sf(n, lim.limit_p3);

  // Tensor grid on the cube inscribed in the ball.
  const double half = U_radius / std::sqrt(static_cast<double>(n));
  std::vector<Vector> grid;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  const int K = grid_per_axis;
  while (true) {
    Vector y(n);
    for (int i = 0; i < n; ++i)
      y[i] = K == 1 ? 0.0 : -half + 2.0 * half * idx[static_cast<std::size_t>(i)] / (K - 1);
    grid.push_back(y);
    int c = 0;
    while (c < n && ++idx[static_cast<std::size_t>(c)] == K) idx[static_cast<std::size_t>(c++)] = 0;
    if (c == n) break;
  }

  ConvergenceReport rep;
  for (const auto& s : lim.trace.samples)
    rep.discrepancy_curve.emplace_back(s.t, grid_discrepancy(s.sf, limit_sf, grid));

  double achieved = std::numeric_limits<double>::quiet_NaN();
  for (auto it = rep.discrepancy_curve.rbegin(); it != rep.discrepancy_curve.rend(); ++it) {
    if (it->second < eps)
      achieved = it->first;
    else
      break;
  }
  if (!std::isfinite(achieved)) {
    std::ostringstream os;
    os << "metric discrepancy never dropped below eps; curve:";
    for (const auto& [t, d] : rep.discrepancy_curve) os << " (" << t << ", " << d << ")";
    throw NotConverged(os.str());
  }
  rep.achieved_t = achieved;
  return rep;
}

}  // namespace psr
