#include "lcca/cca.hpp"

#include <algorithm>
#include <cmath>

namespace lcca {
namespace detail {
namespace {

double absolute_ridge(double ridge, double trace, Index dim) {
  if (ridge < 0.0) throw Error(ErrorCode::InvalidArgument, "ridge must be non-negative");
  return ridge * trace / static_cast<double>(dim);
}

}  // namespace

Whitener whitener_from_covariance(const Eigen::Ref<const Matrix>& centered, double ridge, double rel_tol) {
  Matrix s = covariance(centered, centered);
  const double rho = absolute_ridge(ridge, s.trace(), s.rows());
  s.diagonal().array() += rho;
  const TruncatedInvSqrt w = inv_sqrt_truncated(s, rel_tol);
  return {w.basis, w.eigenvalues.cwiseSqrt().cwiseInverse()};
}

Whitener whitener_from_samples(const Eigen::Ref<const Matrix>& centered, double ridge, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must lie in (0, 1)");
  const double n = static_cast<double>(centered.rows());
  Eigen::BDCSVD<Matrix> svd(centered / std::sqrt(n), Eigen::ComputeThinV);
  const Vector ev = svd.singularValues().array().square();
  if (ev.size() == 0 || !(ev[0] > 0.0)) throw Error(ErrorCode::ZeroMatrix, "cannot whiten an all-zero sample set");

  const double rho = absolute_ridge(ridge, ev.sum(), centered.cols());
  const double cutoff = rel_tol * (ev[0] + rho);
  Index rank = 0;
  while (rank < ev.size() && ev[rank] + rho >= cutoff && ev[rank] > 0.0) ++rank;

  Whitener w{svd.matrixV().leftCols(rank), (ev.head(rank).array() + rho).sqrt().inverse().matrix()};
  for (Index c = 0; c < rank; ++c) {
    Vector col = w.basis.col(c);
    fix_sign(col);
    w.basis.col(c) = col;
  }
  return w;
}

Whitener whitener(const Eigen::Ref<const Matrix>& centered, double ridge, double rel_tol) {
  if (centered.cols() > centered.rows()) return whitener_from_samples(centered, ridge, rel_tol);
  return whitener_from_covariance(centered, ridge, rel_tol);
}

CcaModel cca_from_whitened(const Whitener& wx, const Whitener& wy, const Eigen::Ref<const Matrix>& k) {
  const Index d = std::min(wx.rank(), wy.rank());
  CcaModel model;
  if (d == 0) {
    model.p_x = Matrix(wx.basis.rows(), 0);
    model.p_y = Matrix(wy.basis.rows(), 0);
    return model;
  }
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();

  model.lambda = Vector::Zero(d);
  for (Index l = 0; l < std::min(d, s.size()); ++l) model.lambda[l] = std::clamp(s[l] * s[l], 0.0, 1.0);
  model.p_x = wx.map() * svd.matrixU().leftCols(d);
  model.p_y = wy.map() * svd.matrixV().leftCols(d);

  for (Index l = 0; l < d; ++l) {
    Vector px = model.p_x.col(l);
    if (fix_sign(px)) {
      model.p_x.col(l) = px;
      model.p_y.col(l) = -model.p_y.col(l);
    }
  }
  return model;
}

}  // namespace detail

CcaModel fit_cca(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Matrix>& y, double ridge, double rel_tol) {
  if (x.rows() != y.rows()) throw Error(ErrorCode::SampleCountMismatch, "CCA sets must be row-aligned");
  if (x.rows() < 2) throw Error(ErrorCode::InsufficientSamples, "CCA needs at least two samples");

  const Matrix xc = center_rows(x);
  const Matrix yc = center_rows(y);
  if (xc.cwiseAbs().maxCoeff() == 0.0 || yc.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "CCA input has no variance");
  }

  const detail::Whitener wx = detail::whitener(xc, ridge, rel_tol);
  const detail::Whitener wy = detail::whitener(yc, ridge, rel_tol);
  const Matrix bx = xc * wx.map();
  const Matrix by = yc * wy.map();
  const Matrix k = (bx.transpose() * by) / static_cast<double>(x.rows());
  return detail::cca_from_whitened(wx, wy, k);
}

CcaModel fit_cca(const DataMatrix& x, const DataMatrix& y, double ridge, double rel_tol) {
  return fit_cca(x.values(), y.values(), ridge, rel_tol);
}

CcaModel fit_cca_population(const Eigen::Ref<const Matrix>& sxx, const Eigen::Ref<const Matrix>& syy,
                            const Eigen::Ref<const Matrix>& sxy, double rel_tol, double ridge) {
  if (sxx.rows() != sxx.cols() || syy.rows() != syy.cols() || sxy.rows() != sxx.rows() ||
      sxy.cols() != syy.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "covariance blocks have incompatible shapes");
  }
  auto make = [&](const Eigen::Ref<const Matrix>& s) {
    Matrix reg = s;
    if (ridge < 0.0) throw Error(ErrorCode::InvalidArgument, "ridge must be non-negative");
    reg.diagonal().array() += ridge * s.trace() / static_cast<double>(s.rows());
    const TruncatedInvSqrt w = inv_sqrt_truncated(reg, rel_tol);
    return detail::Whitener{w.basis, w.eigenvalues.cwiseSqrt().cwiseInverse()};
  };
  const detail::Whitener wx = make(sxx);
  const detail::Whitener wy = make(syy);
  const Matrix k = wx.map().transpose() * sxy * wy.map();
  return detail::cca_from_whitened(wx, wy, k);
}

Matrix attenuation_matrix(const CcaModel& model, Side side) {
  const Matrix& p = model.directions(side);
  return p * model.lambda.asDiagonal() * p.transpose();
}

Matrix attenuation_factor(const CcaModel& model, Side side) {
  const Matrix& p = model.directions(side);
  return model.lambda.cwiseSqrt().asDiagonal() * p.transpose();
}

}  // namespace lcca
