#include "psr/rng.hpp"

namespace psr {

Vector gaussian_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v;
}

std::vector<Vector> sphere_directions(int dim, int count, std::uint64_t seed) {
  std::vector<Vector> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < dim && static_cast<int>(dirs.size()) < count; ++i) {
    Vector e = Vector::Zero(dim);
    e[i] = 1.0;
    dirs.push_back(e);
    if (static_cast<int>(dirs.size()) < count) dirs.push_back(-e);
  }
  if (dim > 1 && static_cast<int>(dirs.size()) < count) {
    dirs.push_back(Vector::Ones(dim) / std::sqrt(static_cast<double>(dim)));
  }
  std::mt19937_64 rng(seed);
  while (static_cast<int>(dirs.size()) < count) {
    Vector v = gaussian_vector(dim, rng);
    const double nrm = v.norm();
    if (nrm < 1e-12) continue;
    dirs.push_back(v / nrm);
  }
  return dirs;
}

}  // namespace psr
