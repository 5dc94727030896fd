#pragma once

#include <cstdint>
#include <vector>

#include "psr/rng.hpp"
#include "psr/standard_form.hpp"

namespace psr {

/// Catalog of limit polynomials. In variables (s_1..s_m, u_1..u_{n-1-m}, w),
///
///   P3 = sum_i s_i <u, F_i u> + ((2/sqrt3)<s,s> - (1/sqrt3)<u,u>) w
///        - 2/(3 sqrt3) w^3,
///
/// with every unit combination sum c_i F_i having spectrum in [-1, 1]. The
/// named variants are the low-dimensional cases of that single shape:
/// n = 1 (only w), n = 2 with m = 0 (hyperbolic plane) or m = 1 (flat plane).
struct LimitForm {
  enum class Variant { Dim1, Dim2A, Dim2B, DimGe3 };

  int n = 1;
  int m = 0;
  std::vector<Matrix> F;  // m symmetric (n-1-m) x (n-1-m) matrices

  Variant variant() const {
    if (n == 1) return Variant::Dim1;
    if (n == 2) return m == 0 ? Variant::Dim2A : Variant::Dim2B;
    return Variant::DimGe3;
  }
};

const char* to_string(LimitForm::Variant v);

struct FValidation {
  double max_abs_eigenvalue_over_unit_c = 0.0;
  Vector witness_c;
};

/// Supremum over ||c|| = 1 of the spectral radius of sum c_i F_i, by grid
/// sampling plus local refinement from the best grid candidates.
FValidation validate_F(const std::vector<Matrix>& F, std::uint64_t seed = kDefaultSeed);

/// The catalog cubic P3 for the given parameters; checks dimensions and the
/// F eigenvalue bound.
StandardFormPoly canonical_polynomial(const LimitForm& form);

/// Assembly without the eigenvalue-bound check (classification residuals need
/// to be computable for slightly out-of-bound extractions too).
CubicForm catalog_p3(int n, int m, const std::vector<Matrix>& F);

struct ClassificationResult {
  LimitForm form;
  Matrix aligning_map;  // orthogonal n x n: P3(aligning_map y) matches the catalog shape
  double residual = 0.0;
};

/// Match a cubic against the catalog: locate the distinguished w-axis among
/// the sphere minima at level -2/(3 sqrt3), split the slice spectrum into the
/// s- and u-blocks, and read off m and the F matrices. Candidate axes are
/// tried in lexicographic order; the first structurally consistent one wins.
ClassificationResult classify(const CubicForm& limit_p3, double class_tol = 1e-4,
                              std::uint64_t seed = kDefaultSeed);

/// Solvable symmetry group of the m = 0 catalog geometry, acting on ambient
/// coordinates (x, s_1..s_{n-1}, w). Group law:
/// (l1,v1)*(l2,v2) = (l1 l2, v1 + l1^{3/2} v2).
Matrix group_action_matrix(double lambda, const Vector& v);
Vector group_action(double lambda, const Vector& v, const Vector& p);
std::pair<double, Vector> group_multiply(double l1, const Vector& v1, double l2,
                                         const Vector& v2);

/// Dimension of the kernel of the first variation of P3 (with the rotational
/// gauge rate set to zero); lower-bounds the dimension of the continuous
/// symmetry group of the hypersurface.
int symmetry_dim_lower_bound(const StandardFormPoly& sf);

/// The first variation itself, as a cubic in y for a given direction e:
/// -(2/3)<y,y><y,e> + (1/4) <dP3|_y, Hess(P3)|_y e>.
CubicForm first_variation(const CubicForm& p3, const Vector& e);

}  // namespace psr
