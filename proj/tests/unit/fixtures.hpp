#pragma once

#include <random>

#include "lcca/numerics.hpp"

namespace fixture {

using lcca::Index;
using lcca::Matrix;

inline Matrix gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> d;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = d(gen);
  return m;
}

// Latent samples whose centered columns are exactly orthogonal with unit
// sample variance, so sample covariances equal the population ones.
inline Matrix white_latent(Index n, Index dim, std::uint64_t seed) {
  Matrix g = gaussian(n, dim, seed);
  g.rowwise() -= g.colwise().mean();
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, dim);
  return q * std::sqrt(static_cast<double>(n));
}

// x = J_x [z; eps], y = J_y [z; eta] with white latent samples.
struct LinearModel {
  Matrix z, x, y, jx, jy;
};

inline LinearModel linear_model(Index n, Index dz, Index de, Index dn, Index dx, Index dy, std::uint64_t seed) {
  const Matrix latent = white_latent(n, dz + de + dn, seed);
  LinearModel m;
  m.z = latent.leftCols(dz);
  m.jx = gaussian(dx, dz + de, seed + 1);
  m.jy = gaussian(dy, dz + dn, seed + 2);
  Matrix zx(n, dz + de), zy(n, dz + dn);
  zx << m.z, latent.middleCols(dz, de);
  zy << m.z, latent.rightCols(dn);
  m.x = zx * m.jx.transpose();
  m.y = zy * m.jy.transpose();
  return m;
}

inline Matrix squared_distances(const Matrix& z) {
  const Index n = z.rows();
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d(i, j) = (z.row(i) - z.row(j)).squaredNorm();
  return d;
}

inline double max_relative_error(const Matrix& got, const Matrix& want) {
  double worst = 0.0;
  for (Index i = 0; i < got.size(); ++i) {
    const double w = want.data()[i];
    if (w < 1e-12) continue;
    worst = std::max(worst, std::abs(got.data()[i] - w) / w);
  }
  return worst;
}

}  // namespace fixture
