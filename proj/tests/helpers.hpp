#ifndef UMBRA_TESTS_HELPERS_HPP
#define UMBRA_TESTS_HELPERS_HPP

#include <cmath>
#include <random>

#include "umbra/geometry.hpp"

namespace umbra::testing {

inline Vector random_unit(std::mt19937& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    norm = v.norm();
  } while (norm < 1e-6);
  return v / norm;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Ball somewhere in the shell of distances [0.5, 2] from the origin, with a
/// radius strictly below that distance so the origin stays outside.
inline Ball random_ball(std::mt19937& rng, int dim) {
  const double dist = uniform(rng, 0.5, 2.0);
  const Vector center = dist * random_unit(rng, dim);
  return {center, uniform(rng, 0.05, 0.95) * dist};
}

}  // namespace umbra::testing

#endif  // UMBRA_TESTS_HELPERS_HPP
