#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lcca/analysis.hpp"
#include "lcca/synth.hpp"
#include "lcca/tcca.hpp"

namespace lcca::app {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCriterionFail = 2;

struct MetricCompareOptions {
  Index n = 400;
  std::uint64_t seed = 0;
  Index k_neighbors = 20;
  double ridge = kDefaultRidge;
  std::filesystem::path out_dir = ".";
};

struct MetricCompareResult {
  Matrix pairs;  // i, j, true, midpoint, endpoint; one row per i < j
  double corr_midpoint = 0.0;
  double corr_endpoint = 0.0;
  // median |scale * D - true| in the smallest and largest true-distance deciles
  double midpoint_error_small = 0.0;
  double midpoint_error_large = 0.0;
};

MetricCompareResult run_metric_compare(const MetricCompareOptions& o);
int cmd_metric_compare(const MetricCompareOptions& o);

enum class PendulumAlgorithm { Alg1, Alg2, SingleSet };

struct PendulumOptions {
  bool noisy = false;
  Index n = 400;
  double ts = 0.0125;
  PendulumAlgorithm algorithm = PendulumAlgorithm::Alg2;
  Index anchors = 0;  // 0 means every sample
  Index window = 8;
  Index k_neighbors = 8;
  Index dz = 1;
  bool average_sides = false;
  std::optional<double> sigma;
  double ridge = kDefaultRidge;
  double rel_tol = kDefaultRelTol;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

struct PendulumResult {
  GeneratedExperiment data;
  DiffusionEmbedding embedding;
  Spectrum spectrum;
  std::vector<Peak> peaks;
  MatchReport report;
  std::vector<double> suppressed;        // extra-pendulum frequencies (noisy only)
  std::vector<double> suppressed_peaks;  // strongest peak near each of them
  bool targets_hit = false;
  bool noise_suppressed = true;
  bool criterion_pass = false;  // hits and, when noisy, suppression
};

PendulumResult run_pendulum(const PendulumOptions& o);
int cmd_pendulum(const PendulumOptions& o);

struct IconsOptions {
  Index n = 300;
  IconLayout layout = IconLayout::Disjoint;
  Index window = 7;
  Index dz = 1;
  Index side = 0;
  std::optional<double> sigma;
  double ridge = kDefaultRidge;
  double rel_tol = kDefaultRelTol;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

struct IconsResult {
  GeneratedExperiment data;
  DiffusionEmbedding embedding;
  Spectrum spectrum;
  std::vector<Peak> peaks;
  MatchReport report;
  std::vector<double> suppressed;
  std::vector<double> suppressed_peaks;
  bool criterion_pass = false;
};

IconsResult run_icons(const IconsOptions& o);
int cmd_icons(const IconsOptions& o);

struct EmbedOptions {
  std::optional<std::filesystem::path> x;
  std::optional<std::filesystem::path> y;
  std::vector<std::filesystem::path> sets;
  std::string neighborhood = "knn:20";
  std::string algorithm = "alg2";  // alg1 | alg2 | euclidean (sets route to the K-set pipeline)
  Index anchors = 0;
  Index dz = 1;
  Index side = 0;
  bool average_sides = false;
  std::optional<double> sigma;
  double ridge = kDefaultRidge;
  double rel_tol = kDefaultRelTol;
  std::filesystem::path out_dir = ".";
};

/// "window:W" or "knn:K".
NeighborhoodSpec parse_neighborhood(const std::string& text);

DiffusionEmbedding run_embed(const EmbedOptions& o);
int cmd_embed(const EmbedOptions& o);

struct GenerateOptions {
  std::string experiment = "warped";  // warped | pendulum | icons
  bool noisy = false;
  IconLayout layout = IconLayout::Disjoint;
  std::optional<Index> n;
  double ts = 0.0125;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

int cmd_generate(const GenerateOptions& o);

}  // namespace lcca::app
