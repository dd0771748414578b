#include "lcca/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lcca {
namespace {

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::DegenerateMetric, "metric has no off-diagonal entries");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

constexpr double kConstantTol = 1e-6;

bool is_constant(const Eigen::Ref<const Vector>& v) {
  const double spread = v.maxCoeff() - v.minCoeff();
  return spread < kConstantTol * v.norm();
}

}  // namespace

double median_bandwidth(const MetricMatrix& d) {
  const Matrix& v = d.values;
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.rows(); ++i) {
    const Index self = d.is_anchored() ? (*d.anchor_indices)[static_cast<std::size_t>(i)] : i;
    for (Index j = 0; j < v.cols(); ++j) {
      if (j != self) entries.push_back(v(i, j));
    }
  }
  return median(std::move(entries));
}

KernelMatrix gaussian_kernel(const MetricMatrix& d, std::optional<double> sigma) {
  if ((d.values.array() < 0.0).any()) throw Error(ErrorCode::InvalidArgument, "metric entries must be non-negative");
  if (d.values.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorCode::DegenerateMetric, "metric is identically zero");
  const double s = sigma.has_value() ? *sigma : median_bandwidth(d);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::DegenerateMetric, "kernel bandwidth is zero (median of the metric vanishes)");
  }
  return {(-d.values.array() / s).exp().matrix(), s};
}

NormalizedKernel normalize_row_stochastic(const Eigen::Ref<const Matrix>& w) {
  if (w.rows() != w.cols()) throw Error(ErrorCode::DimensionMismatch, "row-stochastic normalization needs a square kernel");
  const Vector deg = w.rowwise().sum();
  if ((deg.array() <= 0.0).any()) throw Error(ErrorCode::DegenerateKernel, "kernel row with zero degree");
  return {deg.cwiseInverse().asDiagonal() * w, deg, Normalization::RowStochastic};
}

NormalizedKernel normalize_landmark(const Eigen::Ref<const Matrix>& w) {
  const Matrix g = w.transpose() * w;
  const Vector deg = g.rowwise().sum();
  if ((deg.array() <= 0.0).any()) throw Error(ErrorCode::DegenerateKernel, "landmark kernel column with zero mass");
  const Vector inv_sqrt = deg.cwiseSqrt().cwiseInverse();
  Matrix m = inv_sqrt.asDiagonal() * g * inv_sqrt.asDiagonal();
  m = 0.5 * (m + m.transpose()).eval();
  return {std::move(m), deg, Normalization::Landmark};
}

DiffusionEmbedding embed(const NormalizedKernel& m, Index dz) {
  const Index n = m.matrix.rows();
  if (dz < 1) throw Error(ErrorCode::InvalidArgument, "d_z must be positive");
  if (dz >= n) throw Error(ErrorCode::TooManyComponents, "d_z must be smaller than the number of samples");

  const Vector sqrt_deg = m.degrees.cwiseSqrt();
  Matrix conj;
  if (m.kind == Normalization::RowStochastic) {
    // Omega^{1/2} (Omega^{-1} W) Omega^{-1/2} = Omega^{-1/2} W Omega^{-1/2}
    conj = sqrt_deg.asDiagonal() * m.matrix * sqrt_deg.cwiseInverse().asDiagonal();
    conj = 0.5 * (conj + conj.transpose()).eval();
  } else {
    conj = m.matrix;
  }
  const SymmetricSpectrum spec = sym_eigen(conj);

  DiffusionEmbedding out{Matrix(n, dz), Vector(dz), 0.0};
  Index kept = 0;
  for (Index c = 0; c < n && kept < dz; ++c) {
    Vector psi = sqrt_deg.cwiseInverse().cwiseProduct(spec.eigenvectors.col(c));
    if (is_constant(psi)) continue;
    psi /= psi.norm();
    fix_sign(psi);
    out.coordinates.col(kept) = psi;
    out.eigenvalues[kept] = spec.eigenvalues[c];
    ++kept;
  }
  if (kept < dz) throw Error(ErrorCode::TooManyComponents, "not enough nontrivial eigenvectors");
  return out;
}

DiffusionEmbedding diffusion_maps(const MetricMatrix& d, Index dz, std::optional<double> sigma) {
  const KernelMatrix w = gaussian_kernel(d, sigma);
  const NormalizedKernel m = d.is_anchored() ? normalize_landmark(w.values) : normalize_row_stochastic(w.values);
  DiffusionEmbedding e = embed(m, dz);
  e.sigma = w.sigma;
  return e;
}

}  // namespace lcca
