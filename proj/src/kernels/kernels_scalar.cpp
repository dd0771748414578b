#include "lcca/kernels.hpp"

namespace lcca::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void squared_distances_to_rows(const double* q, const double* rows, std::size_t n_rows, std::size_t dim, double* out) {
  for (std::size_t r = 0; r < n_rows; ++r) out[r] = squared_distance(q, rows + r * dim, dim);
}

double projected_energy(const double* dirs, std::size_t n_dirs, const double* delta, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t l = 0; l < n_dirs; ++l) {
    const double c = dot(dirs + l * dim, delta, dim);
    acc += c * c;
  }
  return acc;
}

}  // namespace lcca::kernels::scalar
