#include <doctest.h>

#include "fixtures.hpp"
#include "lcca/cca.hpp"

using namespace lcca;

TEST_CASE("self-correlation gives unit canonical correlations") {
  const Matrix x = fixture::gaussian(50, 3, 1);
  const CcaModel m = fit_cca(x, x, 0.0);
  REQUIRE(m.rank() == 3);
  for (Index l = 0; l < 3; ++l) CHECK(m.lambda[l] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("independent scalar sets have small correlation") {
  const Matrix xy = fixture::gaussian(10000, 2, 5);
  const CcaModel m = fit_cca(Matrix(xy.col(0)), Matrix(xy.col(1)));
  CHECK(m.lambda[0] < 0.1);
}

TEST_CASE("projected variables are white") {
  const Matrix x = fixture::gaussian(200, 4, 2);
  const Matrix y = x.leftCols(2) * fixture::gaussian(2, 3, 3) + 0.5 * fixture::gaussian(200, 3, 4);
  const CcaModel m = fit_cca(x, y, 0.0);
  const Matrix cx = center_rows(x);
  const Matrix u = cx * m.p_x;
  const Matrix cov = u.transpose() * u / 200.0;
  CHECK((cov - Matrix::Identity(cov.rows(), cov.cols())).norm() < 1e-9);
}

TEST_CASE("linear model has exactly d_z unit correlations") {
  const auto lm = fixture::linear_model(60, 3, 2, 3, 10, 12, 7);
  const CcaModel m = fit_cca(lm.x, lm.y, 0.0);
  REQUIRE(m.rank() >= 3);
  for (Index l = 0; l < 3; ++l) CHECK(m.lambda[l] == doctest::Approx(1.0).epsilon(1e-9));
  for (Index l = 3; l < m.rank(); ++l) CHECK(m.lambda[l] < 1e-9);
}

TEST_CASE("wide local sets use the sample-space route") {
  // dim > N: covariance is singular, the sample route must still whiten
  const Matrix z = fixture::gaussian(12, 2, 9);
  const Matrix x = z * fixture::gaussian(2, 40, 10) + 0.1 * fixture::gaussian(12, 40, 11);
  const Matrix y = z * fixture::gaussian(2, 30, 12) + 0.1 * fixture::gaussian(12, 30, 13);
  const CcaModel m = fit_cca(x, y);
  CHECK(m.lambda.allFinite());
  CHECK(m.lambda.maxCoeff() <= 1.0);
  const Matrix a = attenuation_matrix(m, Side::X);
  CHECK((a - a.transpose()).norm() < 1e-8 * (1.0 + a.norm()));
}

TEST_CASE("fit_cca errors") {
  try {
    (void)fit_cca(Matrix::Ones(1, 2), Matrix::Ones(1, 2));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSamples);
  }
  try {
    (void)fit_cca(Matrix::Zero(5, 2), fixture::gaussian(5, 2, 1));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroMatrix);
  }
  try {
    (void)fit_cca(Matrix::Ones(5, 2), Matrix::Ones(4, 2));
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SampleCountMismatch);
  }
}

TEST_CASE("population CCA examples") {
  const Matrix i2 = Matrix::Identity(2, 2);
  SUBCASE("identity blocks") {
    const CcaModel m = fit_cca_population(i2, i2, i2);
    CHECK(m.lambda.isApprox(Vector::Ones(2)));
    CHECK((m.p_x.cwiseAbs() - i2).norm() < 1e-12);
    CHECK((m.p_y.cwiseAbs() - i2).norm() < 1e-12);
  }
  SUBCASE("uncorrelated") {
    const CcaModel m = fit_cca_population(i2, i2, Matrix::Zero(2, 2));
    CHECK(m.lambda.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(attenuation_matrix(m, Side::X).norm() < 1e-15);
  }
  SUBCASE("diagonal cross-covariance") {
    Matrix sxy = Matrix::Zero(2, 2);
    sxy(0, 0) = 0.8;
    sxy(1, 1) = 0.3;
    const CcaModel m = fit_cca_population(i2, i2, sxy);
    CHECK(m.lambda[0] == doctest::Approx(0.64));
    CHECK(m.lambda[1] == doctest::Approx(0.09));
  }
  SUBCASE("shape mismatch") {
    try {
      (void)fit_cca_population(i2, Matrix::Identity(3, 3), i2);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
  }
}

TEST_CASE("identity observations give the inverse covariance") {
  Matrix g = fixture::gaussian(3, 3, 4);
  const Matrix s = g * g.transpose() + Matrix::Identity(3, 3);
  const CcaModel m = fit_cca_population(s, s, s);
  CHECK((attenuation_matrix(m, Side::X) - s.inverse()).norm() < 1e-9 * s.inverse().norm());
}

TEST_CASE("attenuation factor reproduces the quadratic form") {
  const auto lm = fixture::linear_model(50, 2, 1, 2, 5, 4, 21);
  const CcaModel m = fit_cca(lm.x, lm.y, 0.0);
  const Matrix a = attenuation_matrix(m, Side::Y);
  const Matrix f = attenuation_factor(m, Side::Y);
  CHECK((f.transpose() * f - a).norm() < 1e-10 * a.norm());
}
