#pragma once

#include <optional>
#include <vector>

#include "lcca/numerics.hpp"

namespace lcca {

struct Spectrum {
  Vector frequencies;  // k / (N ts), k = 0..N/2
  Vector magnitudes;   // normalized to a maximum of 1 (all zero stays zero)

  [[nodiscard]] double bin_width() const { return frequencies.size() > 1 ? frequencies[1] : 0.0; }
};

/// One-sided magnitude spectrum of the mean-removed, Hann-windowed series.
Spectrum spectrum(const Eigen::Ref<const Vector>& series, double ts);

/// Same as spectrum() but without normalizing the magnitudes.
Spectrum raw_spectrum(const Eigen::Ref<const Vector>& series, double ts);

struct Peak {
  Index bin = 0;
  double frequency = 0.0;
  double magnitude = 0.0;
};

/// Strict local maxima (DC excluded), strongest first, picked greedily so
/// that selected bins are at least `min_separation_bins` apart.
std::vector<Peak> top_peaks(const Spectrum& s, Index count, Index min_separation_bins = 1);

struct TargetMatch {
  double target = 0.0;
  bool hit = false;
  std::optional<Peak> nearest;  // closest peak within tolerance
};

struct MatchReport {
  std::vector<TargetMatch> targets;
  std::vector<Peak> spurious;  // above threshold and not near any target
  double threshold = 0.3;

  [[nodiscard]] bool all_hit() const;
};

inline constexpr double kSpuriousThreshold = 0.3;

MatchReport match_frequencies(const std::vector<Peak>& peaks, const std::vector<double>& targets, Index tol_bins,
                              double bin_width, double threshold = kSpuriousThreshold);

/// Magnitude of the strongest peak within +-tol_bins of `frequency`, or 0.
double peak_magnitude_near(const std::vector<Peak>& peaks, double frequency, Index tol_bins, double bin_width);

/// Pearson correlation of two equal-length series.
double pearson(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

}  // namespace lcca
