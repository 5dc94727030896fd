#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psr/catalog.hpp"
#include "psr/standard_form.hpp"

namespace psr {
namespace examples {

/// Curve family x^3 - x y^2 + a y^3; a = -2/(3 sqrt 3) is the homogeneous one.
StandardFormPoly dim1(double a);
StandardFormPoly dim1_homogeneous();

/// The singular-at-infinity surface x^3 - x(y^2 + z^2) + 2/(3 sqrt 3) y^3.
StandardFormPoly motivating();

/// Family with a one-dimensional boundary-form kernel: in variables
/// (v_1..v_{n-1}, w), P3 = -2/(3 sqrt 3) v_{n-1}^3 + 2/sqrt(3) v_{n-1} w^2.
StandardFormPoly ker01(int n = 3);
/// Its plane restriction with cross-section parameter c in (0, 1]:
/// P3 = -2/(3 sqrt 3) c^3 v^3 + 2/sqrt(3) c v w^2.
CubicForm ker01_reduced(double c);

/// Three-block family with horizon sqrt(2), closed iff |b| <= sqrt(10)/12:
/// P3 = -2b <s,s> u_last + (1/sqrt 2)<s,s> w + b u_last w^2 + 1/(2 sqrt 2) w^3.
StandardFormPoly sqrt2_family(double b, int n = 3, int m = 1);

/// Family whose boundary-form kernel exceeds the slice count by one:
/// P3 = -(1/sqrt 3)<s,s> u_last - 2/(3 sqrt 3) u_last^3 + <s,s> w
///      + 2/sqrt(3) u_last w^2.
StandardFormPoly kerm1(int n = 3, int m = 1);
/// Its three-variable restriction with parameter c in [0, 1]:
/// P3 = -(1/sqrt 3) c s^2 u - 2/(3 sqrt 3) c^3 u^3 + s^2 w + 2/sqrt(3) c u w^2.
CubicForm kerm1_reduced(double c);

/// Catalog form for (n, m, F).
StandardFormPoly catalog(int n, int m, const std::vector<Matrix>& F);

/// Random valid catalog form: F matrices drawn with unit-combination spectra
/// strictly inside [-1, 1].
StandardFormPoly random_catalog(int n, int m, std::uint64_t seed, double spectral_margin = 0.15);

/// The generic limit x^3 - x(<s,s> + w^2) - (1/sqrt 3)<s,s> w - 2/(3 sqrt 3) w^3
/// (the m = 0 catalog form).
StandardFormPoly generic_limit(int n);

}  // namespace examples
}  // namespace psr
