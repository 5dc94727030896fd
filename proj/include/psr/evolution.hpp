#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "psr/point_transform.hpp"
#include "psr/rng.hpp"

namespace psr {

/// Value of a standard-form cubic along the ray through the last coordinate:
/// beta(r) = 1 - r^2 + a r^3, where a is the cubic coefficient in the ray
/// direction. Closed inputs have |a| <= 2/(3*sqrt(3)); then the smallest
/// positive zero R lies in [sqrt(3)/2, sqrt(3)] and a = (R^2-1)/R^3.
class RayCubic {
 public:
  explicit RayCubic(double a);

  double a() const { return a_; }
  double operator()(double r) const { return 1.0 - r * r + a_ * r * r * r; }

  /// All real zeros, ascending. Throws NoClosedHorizon if |a| exceeds the
  /// closedness bound (then the ray never leaves the level set's cone).
  std::vector<double> roots() const;
  /// Smallest positive zero.
  double horizon() const;
  /// Largest negative zero (the horizon in the opposite ray direction).
  double negative_horizon() const;

  static double coefficient_for_horizon(double R) { return (R * R - 1.0) / (R * R * R); }

 private:
  double a_;
};

/// Rotate the y-coordinates so the last axis maps to v; returns the rotated
/// polynomial P3 \circ O and the orthogonal map O (O e_n = v, Householder).
std::pair<StandardFormPoly, Matrix> reorient(const StandardFormPoly& sf, const Vector& v);

struct EvolutionSample {
  double t;
  StandardFormPoly sf;
  Matrix transform;   // ambient map A(t) for the reoriented polynomial
  double condition;   // eigenvalue ratio of the frame form at t
};

struct EvolutionTrace {
  Vector direction;
  Matrix reorientation;  // O with O e_n = direction
  double horizon = 0.0;           // smallest positive zero of beta
  double negative_horizon = 0.0;  // largest negative zero
  std::vector<EvolutionSample> samples;  // ascending in t
};

/// Standard form of the input along the central ray curve
/// gamma(t) = beta(t)^(-1/3) (1, 0, ..., 0, t) in the reoriented coordinates,
/// with the frame gauge chained continuously from the identity at t = 0.
/// Schedule entries may be negative (motion in the -v direction) but must stay
/// strictly inside (negative_horizon, horizon).
EvolutionTrace evolve(const StandardFormPoly& sf, const Vector& v,
                      const std::vector<double>& t_schedule);

struct LimitExtraction {
  CubicForm limit_p3;
  double error_estimate = 0.0;
  int samples_used = 0;
  std::vector<double> per_coefficient_estimates;
  EvolutionTrace trace;  // the geometric sample ladder used by the fit
};

/// Limit of P3|_t as t -> horizon, by polynomial extrapolation in
/// sigma = sqrt(R - t) over samples t_k = R - sigma0^2 4^(-k), k = 0..6,
/// sigma0 = 0.3 R. The error estimate is the spread between the degree-4 and
/// degree-5 fits at sigma = 0; above 1e-4 the extraction is rejected.
LimitExtraction extract_limit(const StandardFormPoly& sf, const Vector& v,
                              std::uint64_t seed = kDefaultSeed);

/// Closed-form cubic coefficient of the evolved one-dimensional polynomial at
/// ray parameter r, for initial cubic coefficient a.
double curve_coefficient_1d(double a, double r);

/// Closed-form coefficients of the surface (n = 2) polynomial pulled back
/// along the ray with the isotropic frame ansatz E = beta^(1/6) (3 - r^2) 1,
/// before the final normalization: the quadratic slice -x(lambda v^2 +
/// chi v w + mu w^2) and the cubic part theta_* . Input cubic is
/// P3 = c v^3 + q v^2 w + b v w^2 + a w^3.
struct RayPullbackCoeffs {
  double lambda, chi, mu;
  double theta_v3, theta_v2w, theta_vw2, theta_w3;
};
RayPullbackCoeffs surface_ray_coefficients(double a, double b, double c, double q, double r);

/// The explicit ambient matrix realizing the same pullback, for cross-checks
/// through the generic pullback path.
Matrix surface_ray_matrix(double a, double b, double c, double q, double r);

/// Parameter ties that make the v-part of the quadratic slice vanish at the
/// horizon, and the limiting mixed-term ratio chi^2/(lambda mu) there.
double surface_q_for_vanishing_slice(double b, double R);
double surface_c_for_vanishing_slice(double b, double R);
double surface_mixed_ratio_limit(double b, double R);

/// The same ratio limit recovered numerically: chi^2/(lambda mu) sampled on
/// the geometric sigma ladder and extrapolated to sigma = 0. The ratio is a
/// rational function of the ray parameter, hence even in sigma, so the fit
/// uses even powers only.
double surface_mixed_ratio_extrapolated(double b, double R);

/// Rotation certificate for the two-parameter surface family (b, R) with the
/// slice-vanishing ties above: rotating by M(f), f = (3 - R^2)/(b R^3), kills
/// the v w^2 (and v^3) terms; the remaining critical points of the rotated
/// cubic at the closedness bound decide singularity at infinity.
struct RotationCertificate {
  Matrix rotation;          // the 2x2 M(f)
  CubicForm rotated;        // P3 \circ M(f)
  double v2w_coeff;         // closed form
  double w3_coeff;          // closed form
  Eigen::Vector2d pair_point;  // (+v, w) member of the norm-one pair
  double pair_norm;
  Eigen::Vector2d axis_point;  // the v = 0 critical point
  double axis_norm;
  double b_bound;           // largest b keeping the axis point outside the unit ball
};
RotationCertificate surface_rotation_certificate(double b, double R);

double surface_b_bound(double R);

}  // namespace psr
