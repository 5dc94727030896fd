#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "psr/rng.hpp"
#include "psr/standard_form.hpp"

namespace psr {

/// Distance from the origin to the boundary of the central-chart domain along
/// the unit direction q: the smallest positive root of 1 - s^2 + s^3 P3(q).
/// For closed inputs it lies in [sqrt(3)/2, sqrt(3)].
double dom_boundary_radius(const StandardFormPoly& sf, const Vector& q);

/// CSV boundary sampling: for n = 2 rows are "theta,radius" over uniform
/// angles; otherwise "d_1,..,d_n,radius" over deterministic unit directions.
void dom_boundary_emit(const StandardFormPoly& sf, int resolution, std::ostream& out,
                       std::uint64_t seed = 0);

struct MetricSample {
  Vector base_y;
  Matrix g;
};

/// Centro-affine fundamental form in the central chart at y:
/// g = -d2F/(3F) + 2 dF dF^T / (9 F^2) with F(y) = h(1, y).
/// Throws OutsideDomain unless y lies strictly inside the chart domain.
MetricSample centro_affine_metric(const StandardFormPoly& sf, const Vector& y);

struct ConvergenceReport {
  double achieved_t = 0.0;
  std::vector<std::pair<double, double>> discrepancy_curve;  // (t, sup-norm discrepancy)
};

/// Convergence of the evolved metric to the limit metric on a fixed ball in
/// the shared central chart: returns the smallest sampled t from which the
/// pointwise g-relative discrepancy stays below eps. Throws NotConverged when
/// even the last sample misses eps.
ConvergenceReport metric_convergence_check(const StandardFormPoly& sf, const Vector& v,
                                           double U_radius, double eps,
                                           int grid_per_axis = 9,
                                           std::uint64_t seed = kDefaultSeed);

}  // namespace psr
