#pragma once

#include <cstdint>
#include <vector>

#include "psr/rng.hpp"
#include "psr/standard_form.hpp"

namespace psr {

struct CriticalPoint {
  Vector point;     // unit direction
  double value;     // P3 at the point
  double residual;  // ||dP3 - 3 P3(p) p||
};

struct SphereMaxResult {
  double max_value = 0.0;
  std::vector<Vector> argmax_points;
  std::vector<CriticalPoint> critical_points;
  int starts_used = 0;
};

/// Maximum of a cubic over the unit sphere by multi-start projected ascent
/// refined with Newton iterations on the first-order condition
/// dP3|_p = 3 P3(p) p, ||p|| = 1. Deterministic for a fixed seed.
SphereMaxResult sphere_max(const CubicForm& p3, std::uint64_t seed = kDefaultSeed);

enum class Closedness { ClosedRegular, ClosedSingularAtInfinity, NotClosed };

const char* to_string(Closedness c);

struct ClosednessVerdict {
  Closedness status;
  double max_value;
  double margin;  // max_value - 2/(3*sqrt(3))
  std::vector<Vector> argmax;
};

/// Closedness of the connected standard-form component: closed iff the sphere
/// max of P3 stays below the bound; at the bound (within sing_tol) the
/// hypersurface is closed but singular at infinity.
ClosednessVerdict closedness(const StandardFormPoly& sf, double sing_tol = 1e-6,
                             std::uint64_t seed = kDefaultSeed);

struct Signature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Inertia of the negative Hessian -d2h at p. Requires h(p) > 0. The point is
/// hyperbolic iff the result is (N-1, 1, 0) in N ambient variables.
Signature hessian_signature(const CubicForm& h, const Vector& p);

bool is_hyperbolic(const CubicForm& h, const Vector& p);

/// All nonzero real solutions of dP3|_p = 3*level*p, found by multi-start
/// Newton over directions and radii, deduplicated, with Euclidean norms.
std::vector<std::pair<Vector, double>> critical_points_with_norms(
    const CubicForm& p3, double level, std::uint64_t seed = kDefaultSeed);

}  // namespace psr
