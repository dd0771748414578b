#include "lcca/metric.hpp"

#include <algorithm>
#include <numeric>

#include "lcca/kernels.hpp"

namespace lcca {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<Index> knn(const RowMajor& rows, const double* query, Index k) {
  const Index n = rows.rows();
  std::vector<double> dist(static_cast<std::size_t>(n));
  kernels::active().squared_distances_to_rows(query, rows.data(), static_cast<std::size_t>(n),
                                              static_cast<std::size_t>(rows.cols()), dist.data());
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Index take = std::min(k, n);
  std::partial_sort(order.begin(), order.begin() + take, order.end(), [&](Index a, Index b) {
    const double da = dist[static_cast<std::size_t>(a)];
    const double db = dist[static_cast<std::size_t>(b)];
    return da < db || (da == db && a < b);
  });
  order.resize(static_cast<std::size_t>(take));
  return order;
}

std::vector<Index> time_window(Index i, Index n, Index width) {
  const Index w = std::min(width, n);
  Index start = i - width / 2 + 1;
  start = std::clamp(start, Index{0}, n - w);
  std::vector<Index> out(static_cast<std::size_t>(w));
  std::iota(out.begin(), out.end(), start);
  return out;
}

void require_paired(const DataMatrix& x, const DataMatrix& y) {
  if (x.n_samples() != y.n_samples()) {
    throw Error(ErrorCode::SampleCountMismatch, "observation sets must be row-aligned");
  }
}

// Row-major copies for the SIMD kernels plus the neighbor search.
struct PairedRows {
  RowMajor x;
  RowMajor y;
  PairedRows(const DataMatrix& dx, const DataMatrix& dy) : x(dx.values()), y(dy.values()) {}

  [[nodiscard]] std::vector<Index> query(const double* qx, const double* qy, const KNearest& spec) const {
    if (spec.on == NeighborSpace::Y) return knn(y, qy, spec.k);
    return knn(x, qx, spec.k);
  }
};

struct LocalFactors {
  RowMajor fx;  // rows sqrt(lambda) p_x^T
  RowMajor fy;
};

LocalFactors local_factors(const DataMatrix& x, const DataMatrix& y, const std::vector<Index>& nb,
                           const MetricOptions& options) {
  if (nb.empty()) throw Error(ErrorCode::EmptyNeighborhood, "neighborhood has no samples");
  const CcaModel model = fit_cca(x.gather(nb), y.gather(nb), options.ridge, options.rel_tol);
  LocalFactors out;
  if (options.side != MetricSide::Y) out.fx = attenuation_factor(model, Side::X);
  if (options.side != MetricSide::X) out.fy = attenuation_factor(model, Side::Y);
  return out;
}

double energy(const RowMajor& f, const double* delta) {
  return kernels::active().projected_energy(f.data(), static_cast<std::size_t>(f.rows()), delta,
                                            static_cast<std::size_t>(f.cols()));
}

double pair_distance(const LocalFactors& f, const MetricOptions& options, const Vector& dx, const Vector& dy) {
  switch (options.side) {
    case MetricSide::X: return clamp_distance(energy(f.fx, dx.data()));
    case MetricSide::Y: return clamp_distance(energy(f.fy, dy.data()));
    case MetricSide::Average:
      return clamp_distance(0.5 * (energy(f.fx, dx.data()) + energy(f.fy, dy.data())));
  }
  return 0.0;
}

const KNearest& require_knearest(const NeighborhoodSpec& spec, const char* what) {
  const auto* kn = std::get_if<KNearest>(&spec);
  if (kn == nullptr) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs KNearest neighborhoods (midpoints have no time index)");
  }
  return *kn;
}

}  // namespace

void validate(const NeighborhoodSpec& spec) {
  if (const auto* tw = std::get_if<TimeWindow>(&spec)) {
    if (tw->width < 2) throw Error(ErrorCode::InvalidArgument, "time window width must be at least 2");
  } else if (std::get<KNearest>(spec).k < 2) {
    throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  }
}

double clamp_distance(double value) {
  if (value < -1e-9) throw Error(ErrorCode::NegativeDistance, "quadratic form is negative beyond tolerance");
  return value < 0.0 ? 0.0 : value;
}

std::vector<Index> neighborhood(Index index, const DataMatrix& x, const DataMatrix& y, const NeighborhoodSpec& spec) {
  require_paired(x, y);
  validate(spec);
  const Index n = x.n_samples();
  if (index < 0 || index >= n) throw Error(ErrorCode::InvalidArgument, "sample index out of range");
  if (const auto* tw = std::get_if<TimeWindow>(&spec)) return time_window(index, n, tw->width);
  const Vector qx = x.row(index).transpose();
  const Vector qy = y.row(index).transpose();
  return neighborhood(qx, qy, x, y, spec);
}

std::vector<Index> neighborhood(const Vector& qx, const Vector& qy, const DataMatrix& x, const DataMatrix& y,
                                const NeighborhoodSpec& spec) {
  require_paired(x, y);
  validate(spec);
  const KNearest& kn = require_knearest(spec, "point neighborhood");
  if (qx.size() != x.dim() || qy.size() != y.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "query point dimension does not match the data");
  }
  const PairedRows rows(x, y);
  auto out = rows.query(qx.data(), qy.data(), kn);
  if (out.empty()) throw Error(ErrorCode::EmptyNeighborhood, "no neighbors found");
  return out;
}

MetricMatrix metric_midpoint(const DataMatrix& x, const DataMatrix& y, const NeighborhoodSpec& spec,
                             const MetricOptions& options) {
  require_paired(x, y);
  validate(spec);
  const KNearest& kn = require_knearest(spec, "midpoint metric");
  const PairedRows rows(x, y);
  const Index n = x.n_samples();

  MetricMatrix out{Matrix::Zero(n, n), MetricKind::Midpoint, std::nullopt};
  Vector xm(x.dim()), ym(y.dim()), dx(x.dim()), dy(y.dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      xm = 0.5 * (x.row(i) + x.row(j)).transpose();
      ym = 0.5 * (y.row(i) + y.row(j)).transpose();
      const std::vector<Index> nb = rows.query(xm.data(), ym.data(), kn);
      const LocalFactors f = local_factors(x, y, nb, options);
      dx = (x.row(i) - x.row(j)).transpose();
      dy = (y.row(i) - y.row(j)).transpose();
      const double d = pair_distance(f, options, dx, dy);
      out.values(i, j) = d;
      out.values(j, i) = d;
    }
  }
  return out;
}

MetricMatrix metric_anchored(const DataMatrix& x, const DataMatrix& y, const std::vector<Index>& anchors,
                             const NeighborhoodSpec& spec, const MetricOptions& options) {
  require_paired(x, y);
  validate(spec);
  if (anchors.empty()) throw Error(ErrorCode::EmptyAnchors, "anchored metric needs at least one anchor");
  const Index n = x.n_samples();
  for (Index a : anchors) {
    if (a < 0 || a >= n) throw Error(ErrorCode::InvalidArgument, "anchor index out of range");
  }

  const Index count = static_cast<Index>(anchors.size());
  MetricMatrix out{Matrix::Zero(count, n), MetricKind::Anchored, anchors};
  std::vector<double> buf(static_cast<std::size_t>(n));

  // D~_aj = |F (x_a - x_j)|^2 = |F x_a - F x_j|^2: project every sample once
  // per anchor, then a row-distance kernel does the rest.
  auto accumulate = [&](const RowMajor& f, const Matrix& data, Index row, Index anchor, double weight) {
    const RowMajor proj = data * f.transpose();
    const Eigen::RowVectorXd q = proj.row(anchor);
    kernels::active().squared_distances_to_rows(q.data(), proj.data(), static_cast<std::size_t>(n),
                                                static_cast<std::size_t>(proj.cols()), buf.data());
    for (Index j = 0; j < n; ++j) out.values(row, j) += weight * buf[static_cast<std::size_t>(j)];
  };

  for (Index r = 0; r < count; ++r) {
    const Index a = anchors[static_cast<std::size_t>(r)];
    const LocalFactors f = local_factors(x, y, neighborhood(a, x, y, spec), options);
    switch (options.side) {
      case MetricSide::X: accumulate(f.fx, x.values(), r, a, 1.0); break;
      case MetricSide::Y: accumulate(f.fy, y.values(), r, a, 1.0); break;
      case MetricSide::Average:
        accumulate(f.fx, x.values(), r, a, 0.5);
        accumulate(f.fy, y.values(), r, a, 0.5);
        break;
    }
    out.values(r, a) = 0.0;
  }
  return out;
}

MetricMatrix metric_endpoint_averaged(const DataMatrix& x, const DataMatrix& y, const NeighborhoodSpec& spec,
                                      const MetricOptions& options) {
  require_paired(x, y);
  validate(spec);
  const Index n = x.n_samples();
  std::vector<LocalFactors> factors;
  factors.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) factors.push_back(local_factors(x, y, neighborhood(i, x, y, spec), options));

  MetricMatrix out{Matrix::Zero(n, n), MetricKind::EndpointAveraged, std::nullopt};
  Vector dx(x.dim()), dy(y.dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      dx = (x.row(i) - x.row(j)).transpose();
      dy = (y.row(i) - y.row(j)).transpose();
      const double qi = pair_distance(factors[static_cast<std::size_t>(i)], options, dx, dy);
      const double qj = pair_distance(factors[static_cast<std::size_t>(j)], options, dx, dy);
      out.values(i, j) = out.values(j, i) = 0.5 * (qi + qj);
    }
  }
  return out;
}

MetricMatrix metric_mahalanobis(const DataMatrix& x, const NeighborhoodSpec& spec, double rel_tol) {
  validate(spec);
  const KNearest& kn = require_knearest(spec, "Mahalanobis metric");
  const RowMajor rows(x.values());
  const Index n = x.n_samples();

  MetricMatrix out{Matrix::Zero(n, n), MetricKind::Mahalanobis, std::nullopt};
  Vector xm(x.dim()), dx(x.dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      xm = 0.5 * (x.row(i) + x.row(j)).transpose();
      const std::vector<Index> nb = knn(rows, xm.data(), kn.k);
      const Matrix local = center_rows(x.gather(nb));
      const TruncatedInvSqrt w = inv_sqrt_truncated(covariance(local, local), rel_tol);
      // rows of F are e_l^{-1/2} v_l^T, so |F dx|^2 = dx^T Sigma^+ dx
      const RowMajor f = w.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() * w.basis.transpose();
      dx = (x.row(i) - x.row(j)).transpose();
      out.values(i, j) = out.values(j, i) = clamp_distance(energy(f, dx.data()));
    }
  }
  return out;
}

MetricMatrix metric_euclidean(const DataMatrix& x) {
  const RowMajor rows(x.values());
  const Index n = x.n_samples();
  MetricMatrix out{Matrix::Zero(n, n), MetricKind::Euclidean, std::nullopt};
  std::vector<double> buf(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    kernels::active().squared_distances_to_rows(rows.row(i).data(), rows.data(), static_cast<std::size_t>(n),
                                                static_cast<std::size_t>(rows.cols()), buf.data());
    for (Index j = 0; j < n; ++j) out.values(i, j) = buf[static_cast<std::size_t>(j)];
    out.values(i, i) = 0.0;
  }
  // enforce exact symmetry; the two evaluation orders can differ in the last ulp
  out.values = 0.5 * (out.values + out.values.transpose()).eval();
  return out;
}

std::vector<Index> strided_anchors(Index n, Index count) {
  if (count < 1 || count > n) throw Error(ErrorCode::InvalidArgument, "anchor count must lie in [1, N]");
  std::vector<Index> out(static_cast<std::size_t>(count));
  for (Index l = 0; l < count; ++l) out[static_cast<std::size_t>(l)] = (l * n) / count;
  return out;
}

}  // namespace lcca
