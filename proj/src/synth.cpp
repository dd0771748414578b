#include "lcca/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "lcca/rng.hpp"

namespace lcca {
namespace {

constexpr double kPi = std::numbers::pi;

// Pendulum raster geometry, in pixels.
constexpr double kPivotRow = 1.0;
constexpr double kRodPixels = 14.0;
constexpr double kSwingGain = 60.0;  // horizontal bob offset per unit sin(angle)
constexpr double kRodWidth = 0.6;
constexpr double kBobWidth = 1.5;

double gauss(double d2, double s) { return std::exp(-0.5 * d2 / (s * s)); }

double segment_distance2(double r, double c, double r0, double c0, double r1, double c1) {
  const double dr = r1 - r0;
  const double dc = c1 - c0;
  const double len2 = dr * dr + dc * dc;
  double t = len2 > 0.0 ? ((r - r0) * dr + (c - c0) * dc) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double er = r - (r0 + t * dr);
  const double ec = c - (c0 + t * dc);
  return er * er + ec * ec;
}

// Accumulates one pendulum's ink (before saturation) into `ink`.
void draw_pendulum(Matrix& ink, double pivot_col, double angle) {
  const double bob_row = kPivotRow + kRodPixels * std::cos(angle);
  const double bob_col = pivot_col + kSwingGain * std::sin(angle);
  for (Index c = 0; c < ink.cols(); ++c)
    for (Index r = 0; r < ink.rows(); ++r) {
      const double rr = static_cast<double>(r);
      const double cc = static_cast<double>(c);
      const double d_rod = segment_distance2(rr, cc, kPivotRow, pivot_col, bob_row, bob_col);
      const double d_bob = (rr - bob_row) * (rr - bob_row) + (cc - bob_col) * (cc - bob_col);
      ink(r, c) += 0.8 * gauss(d_rod, kRodWidth) + 2.0 * gauss(d_bob, kBobWidth);
    }
}

Vector saturate_column_stacked(const Matrix& ink) {
  const Matrix img = (1.0 - (-ink.array()).exp()).matrix();
  return Eigen::Map<const Vector>(img.data(), img.size());
}

Matrix orthonormal_rows(Index rows, Index cols, Rng& rng) {
  Matrix g(cols, rows);
  for (Index j = 0; j < rows; ++j)
    for (Index i = 0; i < cols; ++i) g(i, j) = rng.normal();
  const Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(cols, rows);
  return q.transpose();
}

struct Blob {
  double radius;
  double phase_deg;
  double width;
  double weight;
};

// Procedural glyphs: a few Gaussian blobs with no rotational symmetry.
std::vector<Blob> glyph_blobs(Glyph g) {
  switch (g) {
    case Glyph::Mario:
      return {{5.0, 0.0, 1.6, 1.2}, {2.0, 110.0, 1.2, 0.6}, {4.0, 230.0, 1.0, 0.4}};
    case Glyph::Mushroom:
      return {{4.5, 20.0, 1.8, 1.2}, {1.5, 160.0, 1.4, 0.7}, {5.0, 260.0, 0.9, 0.4}};
    case Glyph::Turtle:
      return {{5.0, 80.0, 1.5, 1.0}, {3.0, 200.0, 1.8, 0.8}, {5.5, 310.0, 0.8, 0.3}};
    case Glyph::Flower:
      return {{4.0, 45.0, 1.2, 1.0}, {5.5, 135.0, 1.0, 0.7}, {2.5, 250.0, 1.6, 0.5}};
  }
  return {};
}

constexpr Index kIconCell = 16;

int speed(Glyph g) { return static_cast<int>(g); }

}  // namespace

double PendulumPhysics::omega1() const { return std::sqrt(g / length); }
double PendulumPhysics::omega2() const { return std::sqrt(g / length + 2.0 * k / m); }

std::pair<double, double> pendulum_solution(double t, const PendulumPhysics& p) {
  if (!(p.length > 0.0) || !(p.m > 0.0) || !(p.g > 0.0) || p.k < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "pendulum physics needs L, m, g > 0 and k >= 0");
  }
  const double a = std::cos(p.omega1() * t);
  const double b = std::cos(p.omega2() * t);
  return {0.5 * p.delta * (a + b), 0.5 * p.delta * (a - b)};
}

GeneratedExperiment gen_warped_square(Index n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InsufficientSamples, "need at least two samples");
  Rng rng(seed);
  Matrix z(n, 2);
  Matrix x(n, 2);
  for (Index i = 0; i < n; ++i) {
    z(i, 0) = rng.uniform(0.0, 2.0);
    z(i, 1) = rng.uniform(0.0, 2.0);
    x(i, 0) = z(i, 0) * z(i, 0) - z(i, 1);
    x(i, 1) = z(i, 0) + std::sqrt(z(i, 1));
  }
  GeneratedExperiment out;
  out.sets.emplace_back(std::move(x));
  out.hidden_common = DataMatrix(std::move(z));
  out.seed = seed;
  return out;
}

Vector render_pendulum_frame(double angle_main, std::optional<double> angle_noise, FrameSide side) {
  if (!(std::abs(angle_main) < kPi / 2) || (angle_noise && !(std::abs(*angle_noise) < kPi / 2))) {
    throw Error(ErrorCode::InvalidArgument, "pendulum angles must lie in (-pi/2, pi/2)");
  }
  const double left = 0.25 * kFrameCols;
  const double right = 0.75 * kFrameCols;
  Matrix ink = Matrix::Zero(kFrameRows, kFrameCols);
  draw_pendulum(ink, side == FrameSide::Left ? left : right, angle_main);
  if (angle_noise) draw_pendulum(ink, side == FrameSide::Left ? right : left, *angle_noise);
  return saturate_column_stacked(ink);
}

GeneratedExperiment gen_pendulum(bool noisy, Index n, double ts, std::uint64_t seed, const PendulumPhysics& physics) {
  if (n < 2) throw Error(ErrorCode::InsufficientSamples, "need at least two frames");
  if (!(ts > 0.0)) throw Error(ErrorCode::InvalidArgument, "sampling interval must be positive");
  const double w1 = physics.omega1();
  const double w2 = physics.omega2();
  const double w3 = w1 / 5.0;
  const double w4 = 4.0 * w1;
  const double amp = physics.delta / physics.length;

  Rng rng(seed);
  const Index pixels = kFrameRows * kFrameCols;
  const Matrix f = orthonormal_rows(200, pixels, rng);
  const Matrix g = orthonormal_rows(200, pixels, rng);

  Matrix frames_left(n, pixels);
  Matrix frames_right(n, pixels);
  Matrix u(n, 2);
  Matrix noise(n, 2);
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * ts;
    const auto [u1, u2] = pendulum_solution(t, physics);
    u(i, 0) = u1;
    u(i, 1) = u2;
    noise(i, 0) = amp * std::cos(w3 * t);
    noise(i, 1) = amp * std::cos(w4 * t);
    const std::optional<double> n_left = noisy ? std::optional<double>(noise(i, 0)) : std::nullopt;
    const std::optional<double> n_right = noisy ? std::optional<double>(noise(i, 1)) : std::nullopt;
    frames_left.row(i) = render_pendulum_frame(std::atan(u1 / physics.length), n_left, FrameSide::Left).transpose();
    frames_right.row(i) = render_pendulum_frame(std::atan(u2 / physics.length), n_right, FrameSide::Right).transpose();
  }

  GeneratedExperiment out;
  out.sets.emplace_back(frames_left * f.transpose());
  out.sets.emplace_back(frames_right * g.transpose());
  out.hidden_common = DataMatrix(std::move(u));
  if (noisy) {
    out.hidden_specific.emplace_back(Matrix(noise.col(0)));
    out.hidden_specific.emplace_back(Matrix(noise.col(1)));
  }
  out.meta["f1"] = w1 / (2.0 * kPi);
  out.meta["f2"] = w2 / (2.0 * kPi);
  if (noisy) {
    out.meta["f3"] = w3 / (2.0 * kPi);
    out.meta["f4"] = w4 / (2.0 * kPi);
  }
  out.meta["ts"] = ts;
  out.seed = seed;
  return out;
}

Vector render_icon_frame(const std::vector<std::pair<Glyph, int>>& glyphs) {
  const Index cols = kIconCell * static_cast<Index>(glyphs.size());
  Matrix ink = Matrix::Zero(kIconCell, cols);
  const double half = 0.5 * static_cast<double>(kIconCell - 1);
  for (std::size_t s = 0; s < glyphs.size(); ++s) {
    const double cr = half;
    const double cc = half + static_cast<double>(s) * kIconCell;
    const int deg = ((glyphs[s].second % 360) + 360) % 360;
    for (const Blob& b : glyph_blobs(glyphs[s].first)) {
      const double a = (b.phase_deg + deg) * kPi / 180.0;
      const double br = cr - b.radius * std::sin(a);
      const double bc = cc + b.radius * std::cos(a);
      for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < kIconCell; ++r) {
          const double dr = static_cast<double>(r) - br;
          const double dc = static_cast<double>(c) - bc;
          ink(r, c) += 2.0 * b.weight * gauss(dr * dr + dc * dc, b.width);
        }
    }
  }
  return saturate_column_stacked(ink);
}

GeneratedExperiment gen_icons(Index n, IconLayout layout, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InsufficientSamples, "need at least two frames");
  using enum Glyph;
  const std::vector<std::vector<Glyph>> movies =
      layout == IconLayout::Disjoint
          ? std::vector<std::vector<Glyph>>{{Mushroom, Mario}, {Mushroom, Turtle}, {Mushroom, Flower}}
          : std::vector<std::vector<Glyph>>{{Mushroom, Mario, Turtle}, {Mushroom, Mario, Flower}, {Mushroom, Turtle, Flower}};

  // Initial orientations in whole degrees keep every frame on the exact
  // integer-degree grid, so the rotation is exactly periodic.
  Rng rng(seed);
  std::map<Glyph, int> start;
  for (Glyph g : {Mario, Mushroom, Turtle, Flower}) start[g] = static_cast<int>(rng.uniform() * 360.0);

  auto angle = [&](Glyph g, Index i) {
    return static_cast<int>((start[g] + static_cast<long long>(speed(g)) * i) % 360);
  };

  GeneratedExperiment out;
  for (const auto& movie : movies) {
    Matrix frames(n, kIconCell * kIconCell * static_cast<Index>(movie.size()));
    for (Index i = 0; i < n; ++i) {
      std::vector<std::pair<Glyph, int>> placed;
      for (Glyph g : movie) placed.emplace_back(g, angle(g, i));
      frames.row(i) = render_icon_frame(placed).transpose();
    }
    out.sets.emplace_back(std::move(frames));
  }

  Matrix common(n, 1);
  std::array<Matrix, 3> specific{Matrix(n, 1), Matrix(n, 1), Matrix(n, 1)};
  for (Index i = 0; i < n; ++i) {
    common(i, 0) = angle(Mushroom, i);
    specific[0](i, 0) = angle(Mario, i);
    specific[1](i, 0) = angle(Turtle, i);
    specific[2](i, 0) = angle(Flower, i);
  }
  out.hidden_common = DataMatrix(std::move(common));
  for (auto& s : specific) out.hidden_specific.emplace_back(std::move(s));

  out.meta["f_mario"] = speed(Mario) / 360.0;
  out.meta["f_mushroom"] = speed(Mushroom) / 360.0;
  out.meta["f_turtle"] = speed(Turtle) / 360.0;
  out.meta["f_flower"] = speed(Flower) / 360.0;
  out.meta["ts"] = 1.0;
  out.seed = seed;
  return out;
}

}  // namespace lcca
