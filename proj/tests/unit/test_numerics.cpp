#include <doctest.h>

#include <limits>

#include "lcca/numerics.hpp"

using namespace lcca;

TEST_CASE("covariance of a two-sample set") {
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  const Centered c = center(DataMatrix(a));
  CHECK(c.mean.isApprox(Vector::Constant(2, 0.0) + (Vector(2) << 2, 3).finished()));
  const Matrix s = covariance(c.data, c.data);
  CHECK(s.isApprox(Matrix::Ones(2, 2)));
}

TEST_CASE("cross-covariance divides by N") {
  Matrix x(4, 1), y(4, 1);
  x << -1, 1, -1, 1;
  y << -2, 2, -2, 2;
  CHECK(covariance(x, y)(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("data matrix rejects empty and non-finite input") {
  CHECK_THROWS_AS(DataMatrix(Matrix(0, 3)), Error);
  Matrix bad = Matrix::Zero(2, 2);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    DataMatrix d(bad);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("truncated inverse square root drops null directions") {
  Matrix s = Vector((Vector(3) << 4, 1, 0).finished()).asDiagonal();
  const TruncatedInvSqrt r = inv_sqrt_truncated(s);
  CHECK(r.rank == 2);
  Matrix expect = Vector((Vector(3) << 0.5, 1, 0).finished()).asDiagonal();
  CHECK((r.matrix - expect).norm() < 1e-12);
  CHECK(r.basis.cols() == 2);
}

TEST_CASE("truncated inverse square root on a random PSD matrix") {
  Matrix g = Matrix::Random(6, 3);
  Matrix s = g * g.transpose();
  const TruncatedInvSqrt r = inv_sqrt_truncated(s);
  CHECK(r.rank == 3);
  // S^{-1/2} S S^{-1/2} is the projector onto the range of S.
  const Matrix p = r.matrix * s * r.matrix;
  CHECK((p * p - p).norm() < 1e-9);
  CHECK(p.trace() == doctest::Approx(3.0));
}

TEST_CASE("inverse square root rejects asymmetric and zero input") {
  Matrix a(2, 2);
  a << 1, 2, 0, 1;
  CHECK_THROWS_AS(inv_sqrt_truncated(a), Error);
  try {
    (void)inv_sqrt_truncated(Matrix::Zero(3, 3));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroMatrix);
  }
}

TEST_CASE("symmetric eigen solver sorts descending and fixes signs") {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  const SymmetricSpectrum e = sym_eigen(s);
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(-1.0));
  const double h = std::sqrt(0.5);
  CHECK(e.eigenvectors(0, 0) == doctest::Approx(h));
  CHECK(e.eigenvectors(1, 0) == doctest::Approx(h));
  // tie in magnitude resolves toward the first entry being positive
  CHECK(e.eigenvectors(0, 1) == doctest::Approx(h));
  CHECK(e.eigenvectors(1, 1) == doctest::Approx(-h));
}

TEST_CASE("fix_sign flips when the largest entry is negative") {
  Vector v(3);
  v << 0.1, -0.9, 0.3;
  CHECK(fix_sign(v));
  CHECK(v[1] == doctest::Approx(0.9));
  CHECK_FALSE(fix_sign(v));
}

TEST_CASE("asymmetry is relative to the largest entry") {
  Matrix s(2, 2);
  s << 10, 1, 1.5, 10;
  CHECK(asymmetry(s) == doctest::Approx(0.05));
}
