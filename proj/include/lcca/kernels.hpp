#pragma once

// Data-parallel inner loops used by the metric and neighborhood code.
//
// Each kernel has a portable scalar reference in `kernels::scalar` and, on
// x86-64, an AVX2+FMA variant in `kernels::avx2`. Callers go through
// `active()`, which picks the widest variant the running CPU supports. The
// choice can be pinned with `select(Isa)` or the LCCA_SIMD environment
// variable ("scalar" or "avx2").

#include <cstddef>
#include <span>
#include <string_view>

namespace lcca::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // out[r] = |q - rows[r]|^2 for a row-major block of `n_rows` rows.
  void (*squared_distances_to_rows)(const double* q, const double* rows, std::size_t n_rows, std::size_t dim,
                                    double* out);
  // Sum over the `n_dirs` rows b_l of a row-major block of (b_l . delta)^2.
  double (*projected_energy)(const double* dirs, std::size_t n_dirs, const double* delta, std::size_t dim);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void squared_distances_to_rows(const double* q, const double* rows, std::size_t n_rows, std::size_t dim, double* out);
double projected_energy(const double* dirs, std::size_t n_dirs, const double* delta, std::size_t dim);
}  // namespace scalar

#if defined(LCCA_HAVE_AVX2_TU)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void squared_distances_to_rows(const double* q, const double* rows, std::size_t n_rows, std::size_t dim, double* out);
double projected_energy(const double* dirs, std::size_t n_dirs, const double* delta, std::size_t dim);
}  // namespace avx2
#endif

bool supported(Isa isa) noexcept;
const KernelTable& table(Isa isa);
const KernelTable& active();
/// Pins the dispatch target; throws lcca::Error if the CPU lacks `isa`.
void select(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}

}  // namespace lcca::kernels
