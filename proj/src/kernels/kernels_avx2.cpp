// Compiled with -mavx2 -mfma. Nothing in here may run unless dispatch.cpp
// has confirmed CPU support.

#include <immintrin.h>

#include "lcca/kernels.hpp"

namespace lcca::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void squared_distances_to_rows(const double* q, const double* rows, std::size_t n_rows, std::size_t dim, double* out) {
  if (dim >= 4) {
    for (std::size_t r = 0; r < n_rows; ++r) out[r] = squared_distance(q, rows + r * dim, dim);
    return;
  }
  // Low-dimensional points: vectorize across rows instead of features.
  std::size_t r = 0;
  for (; r + 4 <= n_rows; r += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
      const __m256d x = _mm256_set_pd(rows[(r + 3) * dim + k], rows[(r + 2) * dim + k], rows[(r + 1) * dim + k],
                                      rows[r * dim + k]);
      const __m256d d = _mm256_sub_pd(x, _mm256_set1_pd(q[k]));
      acc = _mm256_fmadd_pd(d, d, acc);
    }
    _mm256_storeu_pd(out + r, acc);
  }
  for (; r < n_rows; ++r) out[r] = squared_distance(q, rows + r * dim, dim);
}

double projected_energy(const double* dirs, std::size_t n_dirs, const double* delta, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t l = 0; l < n_dirs; ++l) {
    const double c = dot(dirs + l * dim, delta, dim);
    acc += c * c;
  }
  return acc;
}

}  // namespace lcca::kernels::avx2
