#include "lcca/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace lcca {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SampleCountMismatch: return "SampleCountMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::EmptyNeighborhood: return "EmptyNeighborhood";
    case ErrorCode::EmptyAnchors: return "EmptyAnchors";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::TooManyComponents: return "TooManyComponents";
    case ErrorCode::ZeroTensor: return "ZeroTensor";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "data matrix must have at least one row and one column");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "data matrix contains non-finite entries");
  }
}

Matrix center_rows(const Eigen::Ref<const Matrix>& values) {
  const Eigen::RowVectorXd mean = values.colwise().mean();
  return values.rowwise() - mean;
}

Centered center(const DataMatrix& data) {
  const Vector mean = data.values().colwise().mean().transpose();
  Matrix centered = data.values().rowwise() - mean.transpose();
  return {DataMatrix(std::move(centered)), mean};
}

Matrix covariance(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::SampleCountMismatch, "covariance operands have different sample counts");
  }
  if (a.rows() == 0) throw Error(ErrorCode::InsufficientSamples, "covariance of an empty set");
  return (a.transpose() * b) / static_cast<double>(a.rows());
}

Matrix covariance(const DataMatrix& a, const DataMatrix& b) { return covariance(a.values(), b.values()); }

double asymmetry(const Eigen::Ref<const Matrix>& s) {
  if (s.rows() != s.cols()) return std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  return (s - s.transpose()).cwiseAbs().maxCoeff() / scale;
}

bool fix_sign(Eigen::Ref<Vector> v) {
  if (v.size() == 0) return false;
  Index best = 0;
  double best_abs = std::abs(v[0]);
  for (Index i = 1; i < v.size(); ++i) {
    // strict comparison keeps the smallest index on ties
    if (std::abs(v[i]) > best_abs) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  if (v[best] < 0.0) {
    v = -v;
    return true;
  }
  return false;
}

SymmetricSpectrum sym_eigen(const Eigen::Ref<const Matrix>& s) {
  if (s.rows() != s.cols()) throw Error(ErrorCode::DimensionMismatch, "sym_eigen needs a square matrix");
  if (asymmetry(s) > 1e-8) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric within 1e-8");

  // Only the lower triangle is read by the solver; symmetrize so tiny
  // asymmetries do not bias the result toward one triangle.
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "symmetric eigensolver did not converge");
  }

  // Descending order; exact ties keep the solver's order so that e.g. the
  // identity maps to the identity rather than a permutation of it.
  const Index n = s.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return solver.eigenvalues()[a] > solver.eigenvalues()[b]; });
  SymmetricSpectrum out{Vector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[k] = solver.eigenvalues()[src];
    out.eigenvectors.col(k) = solver.eigenvectors().col(src);
    Vector col = out.eigenvectors.col(k);
    fix_sign(col);
    out.eigenvectors.col(k) = col;
  }
  return out;
}

TruncatedInvSqrt inv_sqrt_truncated(const Eigen::Ref<const Matrix>& s, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "rel_tol must lie in (0, 1)");
  }
  if (s.rows() != s.cols()) throw Error(ErrorCode::DimensionMismatch, "inv_sqrt_truncated needs a square matrix");
  if (asymmetry(s) > 1e-10) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric within 1e-10");
  if (s.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorCode::ZeroMatrix, "cannot whiten an all-zero matrix");

  const SymmetricSpectrum spec = sym_eigen(s);
  const double lmax = spec.eigenvalues[0];
  if (!(lmax > 0.0)) throw Error(ErrorCode::ZeroMatrix, "matrix has no positive eigenvalue");

  Index rank = 0;
  while (rank < spec.eigenvalues.size() && spec.eigenvalues[rank] >= rel_tol * lmax) ++rank;

  TruncatedInvSqrt out;
  out.rank = rank;
  out.basis = spec.eigenvectors.leftCols(rank);
  out.eigenvalues = spec.eigenvalues.head(rank);
  const Vector scale = out.eigenvalues.cwiseSqrt().cwiseInverse();
  out.matrix = out.basis * scale.asDiagonal() * out.basis.transpose();
  return out;
}

}  // namespace lcca
