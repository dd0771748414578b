#pragma once

#include <cstdint>
#include <vector>

#include "lcca/diffusion.hpp"

namespace lcca {

/// Dense order-K tensor, row-major (last index varies fastest).
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<Index> dims);
  DenseTensor(std::vector<Index> dims, std::vector<double> values);

  static DenseTensor from_vector(const Eigen::Ref<const Vector>& v);
  static DenseTensor from_matrix(const Eigen::Ref<const Matrix>& m);

  [[nodiscard]] const std::vector<Index>& dims() const noexcept { return dims_; }
  [[nodiscard]] Index order() const noexcept { return static_cast<Index>(dims_.size()); }
  [[nodiscard]] Index size() const noexcept { return static_cast<Index>(values_.size()); }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::vector<double>& values() noexcept { return values_; }

  [[nodiscard]] Index offset(const std::vector<Index>& idx) const;
  [[nodiscard]] double operator()(const std::vector<Index>& idx) const { return values_[static_cast<std::size_t>(offset(idx))]; }
  double& operator()(const std::vector<Index>& idx) { return values_[static_cast<std::size_t>(offset(idx))]; }

  [[nodiscard]] double norm() const;
  /// Order-2 tensor as a matrix (dims[0] x dims[1]).
  [[nodiscard]] Matrix as_matrix() const;

 private:
  std::vector<Index> dims_;
  std::vector<double> values_;
};

/// Rank-1 approximation rho * p1 (x) ... (x) pK with unit-norm directions.
struct Rank1Model {
  double rho = 0.0;
  std::vector<Vector> directions;
  Index iterations = 0;
  std::vector<double> rho_history;  // rho after each full sweep
};

struct AlsOptions {
  Index max_iter = 500;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

/// Contracts mode `mode` (0-based) of `t` with the rows of `m` (d_k x D).
DenseTensor mode_product(const DenseTensor& t, const Eigen::Ref<const Matrix>& m, Index mode);

DenseTensor outer_product(const std::vector<DenseTensor>& factors);

/// (1/N) sum_i x_i^(1) (x) ... (x) x_i^(K) over row-aligned, centered sets.
DenseTensor covariance_tensor(const std::vector<Matrix>& sets);
DenseTensor covariance_tensor(const std::vector<DataMatrix>& sets);

/// C x_1 S_11^{-1/2} x_2 ... x_K S_KK^{-1/2} with truncated inverse roots.
DenseTensor whiten_tensor(const DenseTensor& c, const std::vector<Matrix>& covariances,
                          double rel_tol = kDefaultRelTol);

/// Contraction of `t` with every direction except mode `skip` (pass -1 to
/// contract all modes; the result is then a single value).
Vector contract_except(const DenseTensor& t, const std::vector<Vector>& directions, Index skip);

/// Alternating least-squares rank-1 fit.
///
/// Directions start from the leading left singular vector of each mode
/// unfolding, falling back to a seeded random unit vector when that vector
/// vanishes. Each sweep replaces p_k by the normalized contraction of `t` with
/// the other directions, which can only increase rho. Directions 1..K-1 follow
/// the largest-entry-positive sign rule and the last direction absorbs the
/// sign of rho, so rho >= 0.
Rank1Model rank1_als(const DenseTensor& t, const AlsOptions& options = {});

struct KSetOptions {
  double ridge = kDefaultRidge;
  double rel_tol = kDefaultRelTol;
  Index side = 0;  // which set the metric is measured in
  Index dz = 1;
  AlsOptions als;
  std::optional<double> sigma;
};

/// Generalized canonical direction of set `side` (ambient coordinates, unit
/// projected variance) for one local neighborhood.
Vector local_tcca_direction(const std::vector<Matrix>& local_sets, Index side, const KSetOptions& options);

/// Anchored metric over K sets: D~_ij = (p(x_i) . (x_i - x_j))^2 in set `side`.
MetricMatrix metric_k_sets(const std::vector<DataMatrix>& sets, const NeighborhoodSpec& spec,
                           const KSetOptions& options = {});

/// Local TCCA metric at every sample, landmark diffusion maps, d_z = 1 by default.
DiffusionEmbedding pipeline_k_sets(const std::vector<DataMatrix>& sets, const NeighborhoodSpec& spec,
                                   const KSetOptions& options = {});

}  // namespace lcca
