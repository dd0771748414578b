#pragma once

#include <optional>

#include "lcca/metric.hpp"

namespace lcca {

struct KernelMatrix {
  Matrix values;
  double sigma = 0.0;
};

enum class Normalization { RowStochastic, Landmark };

/// A normalized diffusion operator together with the degree vector needed to
/// move between its symmetric conjugate and the row-stochastic form.
///
/// RowStochastic: `matrix` = Omega^{-1} W with Omega_ii = sum_j W_ij.
/// Landmark: `matrix` = Omega^{-1/2} W^T W Omega^{-1/2}.
struct NormalizedKernel {
  Matrix matrix;
  Vector degrees;
  Normalization kind = Normalization::RowStochastic;
};

struct DiffusionEmbedding {
  Matrix coordinates;  // N x d_z
  Vector eigenvalues;
  double sigma = 0.0;
};

/// Median of the metric entries that are not self-pairs: the off-diagonal
/// for symmetric metrics, and every (anchor, j != anchor) entry for anchored ones.
double median_bandwidth(const MetricMatrix& d);

/// W_ij = exp(-D_ij / sigma); sigma defaults to median_bandwidth(d).
KernelMatrix gaussian_kernel(const MetricMatrix& d, std::optional<double> sigma = std::nullopt);

NormalizedKernel normalize_row_stochastic(const Eigen::Ref<const Matrix>& w);
NormalizedKernel normalize_landmark(const Eigen::Ref<const Matrix>& w);

/// Top `dz` nontrivial eigenpairs of the diffusion operator.
///
/// Both normalizations share their spectrum with the symmetric conjugate
/// Omega^{-1/2} G Omega^{-1/2}, which is what gets diagonalized. Coordinates
/// are reported as right eigenvectors of the row-stochastic operator
/// (psi = Omega^{-1/2} v), whose trivial eigenvector is constant; columns that
/// are constant are skipped rather than assuming the trivial one is first.
DiffusionEmbedding embed(const NormalizedKernel& m, Index dz);

/// Kernel, normalization matched to the metric's shape, and embedding.
DiffusionEmbedding diffusion_maps(const MetricMatrix& d, Index dz, std::optional<double> sigma = std::nullopt);

}  // namespace lcca
