#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "lcca/diffusion.hpp"

using namespace lcca;

namespace {

MetricMatrix symmetric(Matrix values) {
  MetricMatrix d;
  d.values = std::move(values);
  return d;
}

}  // namespace

TEST_CASE("median bandwidth ignores the diagonal") {
  Matrix v(3, 3);
  v << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  CHECK(median_bandwidth(symmetric(v)) == doctest::Approx(2.0));
  const KernelMatrix w = gaussian_kernel(symmetric(v));
  CHECK(w.sigma == doctest::Approx(2.0));
  CHECK(w.values(0, 1) == doctest::Approx(std::exp(-0.5)));
  CHECK(w.values(1, 1) == 1.0);
}

TEST_CASE("kernel at D equal to sigma") {
  Matrix v(2, 2);
  v << 0, 1.5, 1.5, 0;
  const KernelMatrix w = gaussian_kernel(symmetric(v), 1.5);
  CHECK(w.values(0, 1) == doctest::Approx(0.36787944117144233));
}

TEST_CASE("degenerate metrics") {
  try {
    (void)gaussian_kernel(symmetric(Matrix::Zero(3, 3)));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMetric);
  }
  // one nonzero pair out of three: the median is still zero
  Matrix v = Matrix::Zero(3, 3);
  v(0, 1) = v(1, 0) = 1.0;
  CHECK_THROWS_AS(gaussian_kernel(symmetric(v)), Error);
  // a nonzero median leaves the kernel valid
  v(0, 2) = v(2, 0) = 2.0;
  CHECK_NOTHROW(gaussian_kernel(symmetric(v)));
  CHECK_THROWS_AS(gaussian_kernel(symmetric(v), -1.0), Error);
}

TEST_CASE("row-stochastic normalization") {
  CHECK(normalize_row_stochastic(Matrix::Identity(3, 3)).matrix.isApprox(Matrix::Identity(3, 3)));
  const NormalizedKernel m = normalize_row_stochastic(Matrix::Ones(3, 3));
  CHECK((m.matrix.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-15);
  const Eigen::VectorXcd ev = m.matrix.eigenvalues();
  std::vector<double> re;
  for (Index i = 0; i < 3; ++i) re.push_back(ev[i].real());
  std::sort(re.begin(), re.end());
  CHECK(re[2] == doctest::Approx(1.0));
  CHECK(std::abs(re[0]) < 1e-12);
  CHECK(std::abs(re[1]) < 1e-12);
  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = 0.0;
  try {
    (void)normalize_row_stochastic(bad);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateKernel);
  }
}

TEST_CASE("landmark normalization") {
  CHECK(normalize_landmark(Matrix::Identity(4, 4)).matrix.isApprox(Matrix::Identity(4, 4)));
  const NormalizedKernel m = normalize_landmark(Matrix::Ones(1, 5));
  CHECK((m.matrix.array() - 0.2).abs().maxCoeff() < 1e-15);
  CHECK(sym_eigen(m.matrix).eigenvalues[0] == doctest::Approx(1.0));
  Matrix w = Matrix::Ones(2, 3);
  w.col(1).setZero();
  CHECK_THROWS_AS(normalize_landmark(w), Error);
}

TEST_CASE("embedding separates two clusters") {
  Matrix pts = 0.1 * fixture::gaussian(40, 2, 3);
  pts.bottomRows(20).array() += 10.0;
  // sigma comparable to the within-cluster spread keeps the two blocks weakly linked
  const DiffusionEmbedding e = diffusion_maps(metric_euclidean(DataMatrix(pts)), 1, 40.0);
  const Vector psi = e.coordinates.col(0);
  for (Index i = 0; i < 20; ++i)
    for (Index j = 20; j < 40; ++j) CHECK(psi[i] * psi[j] < 0.0);
}

TEST_CASE("embedding of a circle") {
  const Index n = 120;
  Matrix pts(n, 2);
  for (Index i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts(i, 0) = std::cos(a);
    pts(i, 1) = std::sin(a);
  }
  const DiffusionEmbedding e = diffusion_maps(metric_euclidean(DataMatrix(pts)), 2);
  const Vector r = e.coordinates.rowwise().squaredNorm();
  CHECK((r.maxCoeff() - r.minCoeff()) / r.mean() < 0.2);
  CHECK(e.eigenvalues[0] >= e.eigenvalues[1]);
  CHECK(e.eigenvalues[0] < 1.0);
}

TEST_CASE("row-stochastic operator keeps the constant vector") {
  const Matrix pts = fixture::gaussian(30, 2, 6);
  const KernelMatrix w = gaussian_kernel(metric_euclidean(DataMatrix(pts)));
  const NormalizedKernel m = normalize_row_stochastic(w.values);
  const Vector ones = Vector::Ones(30);
  CHECK((m.matrix * ones - ones).norm() < 1e-8);
  // the symmetric conjugate has top eigenvalue 1
  const Vector s = m.degrees.cwiseSqrt();
  const Matrix conj = s.asDiagonal() * m.matrix * s.cwiseInverse().asDiagonal();
  CHECK(sym_eigen(0.5 * (conj + conj.transpose())).eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("right eigenvectors of the diffusion operator") {
  const Matrix pts = fixture::gaussian(25, 3, 8);
  const KernelMatrix w = gaussian_kernel(metric_euclidean(DataMatrix(pts)));
  const NormalizedKernel m = normalize_row_stochastic(w.values);
  const DiffusionEmbedding e = embed(m, 2);
  for (Index c = 0; c < 2; ++c) {
    const Vector psi = e.coordinates.col(c);
    CHECK((m.matrix * psi - e.eigenvalues[c] * psi).norm() < 1e-8 * psi.norm());
  }
}

TEST_CASE("embedding errors") {
  const NormalizedKernel m = normalize_row_stochastic(Matrix::Ones(3, 3));
  try {
    (void)embed(m, 3);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyComponents);
  }
}

TEST_CASE("identity operator is the degenerate case") {
  // every eigenvalue is 1; the first non-constant vector is returned
  const DiffusionEmbedding e = embed(normalize_row_stochastic(Matrix::Identity(4, 4)), 1);
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
  const Vector psi = e.coordinates.col(0);
  CHECK(psi.maxCoeff() - psi.minCoeff() > 1e-3);
}

TEST_CASE("anchored metrics route to the landmark normalization") {
  const Matrix pts = fixture::gaussian(30, 2, 12);
  const MetricMatrix full = metric_euclidean(DataMatrix(pts));
  MetricMatrix anchored;
  anchored.values = full.values;
  anchored.kind = MetricKind::Anchored;
  std::vector<Index> all(30);
  for (Index i = 0; i < 30; ++i) all[static_cast<std::size_t>(i)] = i;
  anchored.anchor_indices = all;
  const DiffusionEmbedding a = diffusion_maps(anchored, 1);
  const KernelMatrix w = gaussian_kernel(anchored);
  const DiffusionEmbedding b = embed(normalize_landmark(w.values), 1);
  CHECK((a.coordinates - b.coordinates).norm() < 1e-10);
}
