#include "lcca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace lcca {

Spectrum raw_spectrum(const Eigen::Ref<const Vector>& series, double ts) {
  const Index n = series.size();
  if (n < 4) throw Error(ErrorCode::InsufficientSamples, "spectrum needs at least four samples");
  if (!(ts > 0.0)) throw Error(ErrorCode::InvalidArgument, "sampling interval must be positive");
  if (!series.allFinite()) throw Error(ErrorCode::InvalidArgument, "series must be finite");

  const double two_pi = 2.0 * std::numbers::pi;
  Vector x = series.array() - series.mean();
  for (Index i = 0; i < n; ++i) {
    x[i] *= 0.5 - 0.5 * std::cos(two_pi * static_cast<double>(i) / static_cast<double>(n - 1));
  }

  Eigen::FFT<double> fft;
  std::vector<double> in(x.data(), x.data() + n);
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);

  const Index bins = n / 2 + 1;
  Spectrum s{Vector(bins), Vector(bins)};
  for (Index k = 0; k < bins; ++k) {
    s.frequencies[k] = static_cast<double>(k) / (static_cast<double>(n) * ts);
    s.magnitudes[k] = std::abs(out[static_cast<std::size_t>(k)]);
  }
  return s;
}

Spectrum spectrum(const Eigen::Ref<const Vector>& series, double ts) {
  Spectrum s = raw_spectrum(series, ts);
  const double peak = s.magnitudes.maxCoeff();
  // a constant series leaves only rounding noise; keep it unscaled
  if (peak > 1e-12 * std::max(1.0, series.cwiseAbs().maxCoeff()) * static_cast<double>(series.size())) {
    s.magnitudes /= peak;
  }
  return s;
}

std::vector<Peak> top_peaks(const Spectrum& s, Index count, Index min_separation_bins) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "peak count must be positive");
  const Vector& m = s.magnitudes;
  const Index bins = m.size();
  std::vector<Peak> candidates;
  for (Index k = 1; k < bins; ++k) {
    const bool above_left = m[k] > m[k - 1];
    const bool above_right = k + 1 >= bins || m[k] > m[k + 1];
    if (above_left && above_right) candidates.push_back({k, s.frequencies[k], m[k]});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });

  std::vector<Peak> picked;
  for (const Peak& c : candidates) {
    if (static_cast<Index>(picked.size()) >= count) break;
    const bool clear = std::all_of(picked.begin(), picked.end(),
                                   [&](const Peak& p) { return std::abs(p.bin - c.bin) >= min_separation_bins; });
    if (clear) picked.push_back(c);
  }
  return picked;
}

bool MatchReport::all_hit() const {
  return std::all_of(targets.begin(), targets.end(), [](const TargetMatch& t) { return t.hit; });
}

MatchReport match_frequencies(const std::vector<Peak>& peaks, const std::vector<double>& targets, Index tol_bins,
                              double bin_width, double threshold) {
  if (targets.empty()) throw Error(ErrorCode::InvalidArgument, "no target frequencies");
  if (!(bin_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "bin width must be positive");
  double reference = 0.0;
  for (const Peak& p : peaks) reference = std::max(reference, p.magnitude);
  const double floor = threshold * reference;
  const double reach = static_cast<double>(tol_bins) * bin_width * (1.0 + 1e-9);

  MatchReport report;
  report.threshold = threshold;
  for (double t : targets) {
    TargetMatch m{t, false, std::nullopt};
    for (const Peak& p : peaks) {
      if (p.magnitude < floor || std::abs(p.frequency - t) > reach) continue;
      if (!m.nearest || std::abs(p.frequency - t) < std::abs(m.nearest->frequency - t)) m.nearest = p;
    }
    m.hit = m.nearest.has_value();
    report.targets.push_back(m);
  }
  for (const Peak& p : peaks) {
    if (p.magnitude < floor) continue;
    const bool explained =
        std::any_of(targets.begin(), targets.end(), [&](double t) { return std::abs(p.frequency - t) <= reach; });
    if (!explained) report.spurious.push_back(p);
  }
  return report;
}

double peak_magnitude_near(const std::vector<Peak>& peaks, double frequency, Index tol_bins, double bin_width) {
  const double reach = static_cast<double>(tol_bins) * bin_width * (1.0 + 1e-9);
  double best = 0.0;
  for (const Peak& p : peaks) {
    if (std::abs(p.frequency - frequency) <= reach) best = std::max(best, p.magnitude);
  }
  return best;
}

double pearson(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "series lengths differ");
  if (a.size() < 2) throw Error(ErrorCode::InsufficientSamples, "correlation needs two samples");
  const Vector ca = a.array() - a.mean();
  const Vector cb = b.array() - b.mean();
  const double den = ca.norm() * cb.norm();
  if (den == 0.0) throw Error(ErrorCode::InvalidArgument, "correlation of a constant series");
  return ca.dot(cb) / den;
}

}  // namespace lcca
