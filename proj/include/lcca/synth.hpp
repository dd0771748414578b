#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcca/numerics.hpp"

namespace lcca {

struct GeneratedExperiment {
  std::vector<DataMatrix> sets;
  DataMatrix hidden_common;
  std::vector<DataMatrix> hidden_specific;
  std::map<std::string, double> meta;  // frequencies, sampling interval
  std::uint64_t seed = 0;
};

/// z uniform on [0,2]^2 observed through x = (z1^2 - z2, z1 + sqrt(z2)).
GeneratedExperiment gen_warped_square(Index n = 400, std::uint64_t seed = 0);

struct PendulumPhysics {
  double g = 9.81;
  double length = 1.0;
  double k = 10.0;  // spring constant
  double m = 1.0;
  double delta = 0.05;  // initial displacement of the first bob

  [[nodiscard]] double omega1() const;
  [[nodiscard]] double omega2() const;
};

/// Displacements (u1, u2) of the coupled pendulum released from (delta, 0) at rest.
std::pair<double, double> pendulum_solution(double t, const PendulumPhysics& physics = {});

enum class FrameSide { Left, Right };

inline constexpr Index kFrameRows = 20;
inline constexpr Index kFrameCols = 40;

/// 20x40 grayscale frame, column-stacked. The main pendulum hangs in the
/// `side` half of the frame, the optional extra pendulum in the other half.
Vector render_pendulum_frame(double angle_main, std::optional<double> angle_noise, FrameSide side);

GeneratedExperiment gen_pendulum(bool noisy = false, Index n = 400, double ts = 0.0125, std::uint64_t seed = 0,
                                 const PendulumPhysics& physics = {});

enum class IconLayout { Disjoint, PairwiseShared };

/// Angular speed of each glyph in degrees per frame.
enum class Glyph { Mario = 4, Mushroom = 6, Turtle = 10, Flower = 15 };

/// Frame of `glyphs` side by side, each rotated by its own angle (degrees).
Vector render_icon_frame(const std::vector<std::pair<Glyph, int>>& glyphs);

GeneratedExperiment gen_icons(Index n = 300, IconLayout layout = IconLayout::Disjoint, std::uint64_t seed = 0);

}  // namespace lcca
