#pragma once

#include <Eigen/Dense>

#include "lcca/error.hpp"

namespace lcca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sample container: rows are samples, columns are features.
///
/// Construction validates that the matrix is non-empty and finite, so every
/// DataMatrix seen by the algorithms satisfies those invariants.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Matrix values);

  [[nodiscard]] const Matrix& values() const noexcept { return values_; }
  [[nodiscard]] Index n_samples() const noexcept { return values_.rows(); }
  [[nodiscard]] Index dim() const noexcept { return values_.cols(); }
  [[nodiscard]] auto row(Index i) const { return values_.row(i); }

  /// Rows selected by `indices`, in the given order.
  template <typename IndexRange>
  [[nodiscard]] Matrix gather(const IndexRange& indices) const {
    Matrix out(static_cast<Index>(std::size(indices)), dim());
    Index r = 0;
    for (auto i : indices) out.row(r++) = values_.row(static_cast<Index>(i));
    return out;
  }

 private:
  Matrix values_;
};

struct Centered {
  DataMatrix data;
  Vector mean;
};

/// Eigenpairs of a symmetric matrix, eigenvalues descending.
///
/// Each eigenvector is sign-fixed so that its entry of largest magnitude is
/// positive (ties resolved toward the smallest index).
struct SymmetricSpectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Truncated inverse square root of a PSD matrix.
///
/// `matrix` is V diag(e^{-1/2}) V^T over the kept eigenpairs; `basis` and
/// `eigenvalues` expose the kept pairs themselves so callers can work in
/// reduced coordinates.
struct TruncatedInvSqrt {
  Matrix matrix;
  Index rank = 0;
  Matrix basis;
  Vector eigenvalues;
};

inline constexpr double kDefaultRelTol = 1e-10;

Centered center(const DataMatrix& data);
Matrix center_rows(const Eigen::Ref<const Matrix>& values);

/// Population cross-covariance (1/N) A^T B of two centered sample sets.
Matrix covariance(const DataMatrix& a, const DataMatrix& b);
Matrix covariance(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b);

TruncatedInvSqrt inv_sqrt_truncated(const Eigen::Ref<const Matrix>& s, double rel_tol = kDefaultRelTol);

SymmetricSpectrum sym_eigen(const Eigen::Ref<const Matrix>& s);

/// Flips the sign of `v` in place so its largest-magnitude entry is positive.
/// Returns true when a flip happened.
bool fix_sign(Eigen::Ref<Vector> v);

/// Largest |S - S^T| entry relative to max(1, max |S|).
double asymmetry(const Eigen::Ref<const Matrix>& s);

}  // namespace lcca
