#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lcca/synth.hpp"

using namespace lcca;

TEST_CASE("warped square follows its observation map") {
  const GeneratedExperiment g = gen_warped_square(50, 3);
  REQUIRE(g.sets.size() == 1);
  const Matrix& z = g.hidden_common.values();
  const Matrix& x = g.sets[0].values();
  CHECK(z.minCoeff() >= 0.0);
  CHECK(z.maxCoeff() <= 2.0);
  for (Index i = 0; i < 50; ++i) {
    CHECK(x(i, 0) == doctest::Approx(z(i, 0) * z(i, 0) - z(i, 1)));
    CHECK(x(i, 1) == doctest::Approx(z(i, 0) + std::sqrt(z(i, 1))));
  }
  CHECK(gen_warped_square(50, 3).sets[0].values() == x);
  CHECK(gen_warped_square(50, 4).sets[0].values() != x);
}

TEST_CASE("pendulum closed form") {
  const PendulumPhysics p;
  const auto [a0, b0] = pendulum_solution(0.0, p);
  CHECK(a0 == doctest::Approx(0.05));
  CHECK(b0 == 0.0);
  CHECK(p.omega1() == doctest::Approx(3.1320919526731650));
  CHECK(p.omega2() == doctest::Approx(5.459853477887479));
  CHECK(p.omega1() / (2 * std::numbers::pi) == doctest::Approx(0.4985).epsilon(1e-4));
  CHECK(p.omega2() / (2 * std::numbers::pi) == doctest::Approx(0.8688).epsilon(1e-4));

  const auto [a1, b1] = pendulum_solution(1.0, p);
  CHECK(a1 == doctest::Approx(-0.008004337416821253).epsilon(1e-12));
  CHECK(b1 == doctest::Approx(-0.04199340601720491).epsilon(1e-12));

  PendulumPhysics uncoupled;
  uncoupled.k = 0.0;
  for (double t : {0.3, 1.7, 4.2}) CHECK(std::abs(pendulum_solution(t, uncoupled).second) < 1e-15);

  PendulumPhysics bad;
  bad.length = 0.0;
  CHECK_THROWS_AS(pendulum_solution(1.0, bad), Error);
}

TEST_CASE("pendulum frames") {
  const Vector f = render_pendulum_frame(0.0, std::nullopt, FrameSide::Left);
  REQUIRE(f.size() == kFrameRows * kFrameCols);
  const Eigen::Map<const Matrix> img(f.data(), kFrameRows, kFrameCols);
  // at rest the left half is mirror-symmetric about column 10
  for (Index r = 0; r < kFrameRows; ++r)
    for (Index d = 1; d <= 8; ++d) CHECK(img(r, 10 - d) == doctest::Approx(img(r, 10 + d)));
  CHECK(img.rightCols(20).maxCoeff() < 1e-6);
  CHECK(img.maxCoeff() <= 1.0);
  CHECK(img.minCoeff() >= 0.0);

  const Vector g = render_pendulum_frame(1e-3, std::nullopt, FrameSide::Left);
  CHECK((f - g).norm() > 0.0);
  const Vector h = render_pendulum_frame(0.0, 0.0, FrameSide::Right);
  const Eigen::Map<const Matrix> both(h.data(), kFrameRows, kFrameCols);
  CHECK(both.leftCols(20).maxCoeff() > 0.5);
  CHECK(both.rightCols(20).maxCoeff() > 0.5);
  CHECK_THROWS_AS(render_pendulum_frame(2.0, std::nullopt, FrameSide::Left), Error);
}

TEST_CASE("pendulum movies") {
  const GeneratedExperiment clean = gen_pendulum();
  REQUIRE(clean.sets.size() == 2);
  CHECK(clean.sets[0].n_samples() == 400);
  CHECK(clean.sets[0].dim() == 200);
  CHECK(clean.sets[1].dim() == 200);
  CHECK(clean.meta.at("ts") * 400 == doctest::Approx(5.0));
  CHECK(clean.meta.at("f1") == doctest::Approx(0.49848).epsilon(1e-4));
  CHECK(clean.meta.count("f3") == 0);
  CHECK(clean.hidden_common.values()(0, 0) == doctest::Approx(0.05));

  const GeneratedExperiment again = gen_pendulum();
  CHECK(again.sets[0].values() == clean.sets[0].values());
  CHECK(again.sets[1].values() == clean.sets[1].values());

  const GeneratedExperiment noisy = gen_pendulum(true, 100);
  CHECK(noisy.meta.at("f3") == doctest::Approx(noisy.meta.at("f1") / 5.0));
  CHECK(noisy.meta.at("f4") == doctest::Approx(noisy.meta.at("f1") * 4.0));
  CHECK(noisy.hidden_specific.size() == 2);
  CHECK_THROWS_AS(gen_pendulum(false, 1), Error);
}

TEST_CASE("icon frames rotate with period 360") {
  const Vector a = render_icon_frame({{Glyph::Mushroom, 30}, {Glyph::Mario, 200}});
  const Vector b = render_icon_frame({{Glyph::Mushroom, 390}, {Glyph::Mario, -160}});
  CHECK(a.size() == 16 * 32);
  CHECK(a == b);
  CHECK((a - render_icon_frame({{Glyph::Mushroom, 31}, {Glyph::Mario, 200}})).norm() > 0.0);
  // no glyph looks the same after a half turn
  for (Glyph g : {Glyph::Mario, Glyph::Mushroom, Glyph::Turtle, Glyph::Flower}) {
    const Vector p = render_icon_frame({{g, 0}});
    const Vector q = render_icon_frame({{g, 180}});
    CHECK((p - q).norm() > 0.5);
  }
}

TEST_CASE("icon movies") {
  for (IconLayout layout : {IconLayout::Disjoint, IconLayout::PairwiseShared}) {
    const GeneratedExperiment g = gen_icons(300, layout, 2);
    REQUIRE(g.sets.size() == 3);
    const Index glyphs = layout == IconLayout::Disjoint ? 2 : 3;
    for (const auto& s : g.sets) {
      CHECK(s.n_samples() == 300);
      CHECK(s.dim() == 256 * glyphs);
    }
    CHECK(g.meta.at("f_mushroom") == doctest::Approx(1.0 / 60.0));
    CHECK(g.meta.at("f_mushroom") * 300 == doctest::Approx(5.0));
    CHECK(g.meta.at("f_mario") == doctest::Approx(4.0 / 360.0));
    CHECK(g.meta.at("f_turtle") == doctest::Approx(10.0 / 360.0));
    CHECK(g.meta.at("f_flower") == doctest::Approx(15.0 / 360.0));
    // the common glyph returns to its start after 60 frames
    const Matrix& c = g.hidden_common.values();
    CHECK(c(60, 0) == c(0, 0));
    CHECK(c(1, 0) == std::fmod(c(0, 0) + 6.0, 360.0));
    CHECK(gen_icons(300, layout, 2).sets[2].values() == g.sets[2].values());
  }
}
