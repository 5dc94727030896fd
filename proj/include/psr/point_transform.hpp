#pragma once

#include <optional>

#include "psr/standard_form.hpp"

namespace psr {

/// Columns span ker dh_p: column i is (-(d_{y_i}h / d_x h)|_p, e_i).
/// Requires h(p) = 1 within 1e-9 and d_x h|_p != 0.
Matrix tangent_frame(const CubicForm& h, const Vector& p);

/// Matrix of -(1/2) d2h_p restricted to the tangent frame; positive definite
/// at hyperbolic points. Throws NotHyperbolic when an eigenvalue drops below
/// the positivity threshold.
Matrix frame_bilinear_form(const CubicForm& h, const Vector& p);

/// Gauge fixing for the frame factor E with E^T G E = 1: Fixed sorts
/// eigenvalues descending and pins eigenvector signs; Continuous picks the
/// orthogonal factor closest to a caller-supplied previous frame.
struct GaugePolicy {
  enum class Kind { Fixed, Continuous };
  Kind kind = Kind::Fixed;
  Matrix previous_frame;  // n x n, used by Continuous

  static GaugePolicy fixed() { return {Kind::Fixed, Matrix()}; }
  static GaugePolicy continuous(Matrix prev) { return {Kind::Continuous, std::move(prev)}; }
};

struct StandardFormAtPoint {
  FrameTransform transform;  // maps standard coordinates to the original ones
  StandardFormPoly sf;
  Vector base_point;
  Matrix frame;              // the E factor actually used
  double condition = 1.0;    // eigenvalue ratio of the frame form
};

/// The point-moving change of coordinates: an invertible ambient map A with
/// first column p such that h(A (x,y)) = x^3 - x<y,y> + P3(y). Requires p
/// hyperbolic with h(p) = 1. Coordinates are pre-rotated internally when the
/// chart direction degenerates (d_x h|_p ~ 0).
StandardFormAtPoint standard_form_at(const CubicForm& h, const Vector& p,
                                     const GaugePolicy& gauge = GaugePolicy::fixed());

}  // namespace psr
