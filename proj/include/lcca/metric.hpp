#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lcca/cca.hpp"

namespace lcca {

/// Contiguous block of `width` samples around an index (time-series data).
struct TimeWindow {
  Index width = 8;
};

enum class NeighborSpace { X, Y, Both };

/// k nearest samples under Euclidean distance. `Both` ranks in x-space: the
/// neighbor pairs are shared by the two sets, so one space has to decide.
struct KNearest {
  Index k = 20;
  NeighborSpace on = NeighborSpace::Both;
};

using NeighborhoodSpec = std::variant<TimeWindow, KNearest>;

void validate(const NeighborhoodSpec& spec);

enum class MetricKind { Midpoint, Anchored, EndpointAveraged, Euclidean, Mahalanobis };

struct MetricMatrix {
  Matrix values;
  MetricKind kind = MetricKind::Euclidean;
  std::optional<std::vector<Index>> anchor_indices;

  [[nodiscard]] bool is_anchored() const noexcept { return anchor_indices.has_value(); }
};

enum class MetricSide { X, Y, Average };

struct MetricOptions {
  double ridge = kDefaultRidge;
  double rel_tol = kDefaultRelTol;
  MetricSide side = MetricSide::X;
};

/// Neighborhood of sample `index`. Indices are shared between the two sets.
std::vector<Index> neighborhood(Index index, const DataMatrix& x, const DataMatrix& y, const NeighborhoodSpec& spec);

/// Neighborhood of an arbitrary query point (qx in x-space, qy in y-space).
/// Only KNearest is meaningful here; TimeWindow raises InvalidArgument.
std::vector<Index> neighborhood(const Vector& qx, const Vector& qy, const DataMatrix& x, const DataMatrix& y,
                                const NeighborhoodSpec& spec);

/// D_ij with the attenuation matrix estimated at the midpoint of each pair.
MetricMatrix metric_midpoint(const DataMatrix& x, const DataMatrix& y, const NeighborhoodSpec& spec,
                             const MetricOptions& options = {});

/// L x N metric with the attenuation matrix fixed at each anchor sample.
MetricMatrix metric_anchored(const DataMatrix& x, const DataMatrix& y, const std::vector<Index>& anchors,
                             const NeighborhoodSpec& spec, const MetricOptions& options = {});

/// Q_ij = 1/2 dx^T (A(x_i) + A(x_j)) dx, the endpoint-averaged baseline.
MetricMatrix metric_endpoint_averaged(const DataMatrix& x, const DataMatrix& y, const NeighborhoodSpec& spec,
                                      const MetricOptions& options = {});

/// Single-set local Mahalanobis distance with the covariance pseudo-inverted
/// at the pair midpoint.
MetricMatrix metric_mahalanobis(const DataMatrix& x, const NeighborhoodSpec& spec, double rel_tol = kDefaultRelTol);

MetricMatrix metric_euclidean(const DataMatrix& x);

/// Every `stride`-th index starting at 0, used to build landmark subsets.
std::vector<Index> strided_anchors(Index n, Index count);

/// Clamps tiny negative quadratic-form values to zero; throws
/// NegativeDistance below -1e-9.
double clamp_distance(double value);

}  // namespace lcca
