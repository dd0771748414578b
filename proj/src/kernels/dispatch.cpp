#include <atomic>
#include <cstdlib>
#include <string>

#include "lcca/error.hpp"
#include "lcca/kernels.hpp"

namespace lcca::kernels {
namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::dot, &scalar::squared_distance,
                              &scalar::squared_distances_to_rows, &scalar::projected_energy};

#if defined(LCCA_HAVE_AVX2_TU)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::dot, &avx2::squared_distance, &avx2::squared_distances_to_rows,
                            &avx2::projected_energy};
#endif

const KernelTable* initial_table() {
  const char* env = std::getenv("LCCA_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return &kScalar;
#if defined(LCCA_HAVE_AVX2_TU)
  if (supported(Isa::Avx2)) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(LCCA_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    throw Error(ErrorCode::InvalidArgument, "instruction set " + std::string(to_string(isa)) + " not available");
  }
#if defined(LCCA_HAVE_AVX2_TU)
  if (isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_relaxed); }

}  // namespace lcca::kernels
