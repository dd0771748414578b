#pragma once

#include "lcca/numerics.hpp"

namespace lcca {

enum class Side { X, Y };

/// Result of one (local or global) linear CCA fit.
///
/// Columns of `p_x`/`p_y` are paired canonical directions scaled so the
/// projected variables have unit variance; `lambda` holds the squared
/// canonical correlations, clamped to [0, 1] and sorted descending.
struct CcaModel {
  Matrix p_x;
  Matrix p_y;
  Vector lambda;

  [[nodiscard]] Index rank() const noexcept { return lambda.size(); }
  [[nodiscard]] const Matrix& directions(Side side) const noexcept { return side == Side::X ? p_x : p_y; }
};

/// Ridge coefficient relative to trace(Sigma)/dim; the absolute ridge added to
/// each auto-covariance is ridge * trace(Sigma) / dim.
inline constexpr double kDefaultRidge = 1e-6;

CcaModel fit_cca(const DataMatrix& x, const DataMatrix& y, double ridge = kDefaultRidge,
                 double rel_tol = kDefaultRelTol);
CcaModel fit_cca(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Matrix>& y, double ridge = kDefaultRidge,
                 double rel_tol = kDefaultRelTol);

CcaModel fit_cca_population(const Eigen::Ref<const Matrix>& sxx, const Eigen::Ref<const Matrix>& syy,
                            const Eigen::Ref<const Matrix>& sxy, double rel_tol = kDefaultRelTol, double ridge = 0.0);

/// A = P diag(lambda) P^T for the requested side.
Matrix attenuation_matrix(const CcaModel& model, Side side);

/// Rows sqrt(lambda_l) p_l^T, so that dx^T A dx = |factor * dx|^2. The
/// factored form never produces a negative quadratic form.
Matrix attenuation_factor(const CcaModel& model, Side side);

namespace detail {

/// Whitening map for one set: whitened coordinates are X_c * basis * diag(scale).
struct Whitener {
  Matrix basis;
  Vector scale;
  [[nodiscard]] Index rank() const noexcept { return scale.size(); }
  [[nodiscard]] Matrix map() const { return basis * scale.asDiagonal(); }
};

/// Route through the d x d auto-covariance (d <= N).
Whitener whitener_from_covariance(const Eigen::Ref<const Matrix>& centered, double ridge, double rel_tol);
/// Route through a thin SVD of the centered samples (d > N); only the span of
/// the samples is represented.
Whitener whitener_from_samples(const Eigen::Ref<const Matrix>& centered, double ridge, double rel_tol);
/// Picks the cheaper of the two routes.
Whitener whitener(const Eigen::Ref<const Matrix>& centered, double ridge, double rel_tol);

/// Canonical directions from a whitened cross-covariance.
CcaModel cca_from_whitened(const Whitener& wx, const Whitener& wy, const Eigen::Ref<const Matrix>& k);

}  // namespace detail

}  // namespace lcca
