#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "psr/cubic_form.hpp"

namespace psr {

inline constexpr std::uint64_t kDefaultSeed = 20240817ull;

/// Deterministic start directions for multi-start solvers: coordinate axes,
/// then seeded unit Gaussians. Always returns exactly `count` unit vectors.
std::vector<Vector> sphere_directions(int dim, int count, std::uint64_t seed);

/// Seeded standard normal vector.
Vector gaussian_vector(int dim, std::mt19937_64& rng);

}  // namespace psr
