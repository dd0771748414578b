#include "lcca/tcca.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "lcca/rng.hpp"

namespace lcca {
namespace {

Index product(const std::vector<Index>& dims, std::size_t begin, std::size_t end) {
  Index p = 1;
  for (std::size_t k = begin; k < end; ++k) p *= dims[k];
  return p;
}

Vector random_unit(Index n, Rng& rng) {
  Vector v(n);
  do {
    for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  } while (v.norm() == 0.0);
  return v / v.norm();
}

// Gram matrix of the mode-k unfolding, d_k x d_k.
Matrix unfolding_gram(const DenseTensor& t, Index mode) {
  const auto& dims = t.dims();
  const std::size_t k = static_cast<std::size_t>(mode);
  const Index outer = product(dims, 0, k);
  const Index dk = dims[k];
  const Index inner = product(dims, k + 1, dims.size());
  Matrix unfold(dk, outer * inner);
  const auto& v = t.values();
  for (Index o = 0; o < outer; ++o)
    for (Index m = 0; m < dk; ++m)
      for (Index i = 0; i < inner; ++i)
        unfold(m, o * inner + i) = v[static_cast<std::size_t>((o * dk + m) * inner + i)];
  return unfold * unfold.transpose();
}

double contract_all(const DenseTensor& t, const std::vector<Vector>& dirs) {
  return contract_except(t, dirs, -1)[0];
}

}  // namespace

DenseTensor::DenseTensor(std::vector<Index> dims) : dims_(std::move(dims)) {
  for (Index d : dims_) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "tensor dimensions must be positive");
  }
  values_.assign(static_cast<std::size_t>(product(dims_, 0, dims_.size())), 0.0);
}

DenseTensor::DenseTensor(std::vector<Index> dims, std::vector<double> values) : DenseTensor(std::move(dims)) {
  if (values.size() != values_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "value count does not match the tensor dimensions");
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "tensor entries must be finite");
  }
  values_ = std::move(values);
}

DenseTensor DenseTensor::from_vector(const Eigen::Ref<const Vector>& v) {
  return DenseTensor({v.size()}, std::vector<double>(v.data(), v.data() + v.size()));
}

DenseTensor DenseTensor::from_matrix(const Eigen::Ref<const Matrix>& m) {
  DenseTensor t({m.rows(), m.cols()});
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) t.values_[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
  return t;
}

Index DenseTensor::offset(const std::vector<Index>& idx) const {
  if (idx.size() != dims_.size()) throw Error(ErrorCode::DimensionMismatch, "index order does not match tensor order");
  Index off = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dims_[k]) throw Error(ErrorCode::InvalidArgument, "tensor index out of range");
    off = off * dims_[k] + idx[k];
  }
  return off;
}

double DenseTensor::norm() const {
  double s = 0.0;
  for (double x : values_) s += x * x;
  return std::sqrt(s);
}

Matrix DenseTensor::as_matrix() const {
  if (order() != 2) throw Error(ErrorCode::DimensionMismatch, "as_matrix needs an order-2 tensor");
  Matrix m(dims_[0], dims_[1]);
  for (Index i = 0; i < dims_[0]; ++i)
    for (Index j = 0; j < dims_[1]; ++j) m(i, j) = values_[static_cast<std::size_t>(i * dims_[1] + j)];
  return m;
}

DenseTensor mode_product(const DenseTensor& t, const Eigen::Ref<const Matrix>& m, Index mode) {
  if (mode < 0 || mode >= t.order()) throw Error(ErrorCode::DimensionMismatch, "mode out of range");
  const std::size_t k = static_cast<std::size_t>(mode);
  const auto& dims = t.dims();
  if (m.rows() != dims[k]) throw Error(ErrorCode::DimensionMismatch, "matrix rows must equal the mode dimension");

  const Index outer = product(dims, 0, k);
  const Index dk = dims[k];
  const Index inner = product(dims, k + 1, dims.size());
  const Index dnew = m.cols();

  std::vector<Index> out_dims = dims;
  out_dims[k] = dnew;
  DenseTensor out(out_dims);
  const auto& src = t.values();
  auto& dst = out.values();
  for (Index o = 0; o < outer; ++o)
    for (Index mk = 0; mk < dk; ++mk)
      for (Index n = 0; n < dnew; ++n) {
        const double w = m(mk, n);
        if (w == 0.0) continue;
        const double* s = src.data() + (o * dk + mk) * inner;
        double* d = dst.data() + (o * dnew + n) * inner;
        for (Index i = 0; i < inner; ++i) d[i] += w * s[i];
      }
  return out;
}

DenseTensor outer_product(const std::vector<DenseTensor>& factors) {
  std::vector<Index> dims;
  std::vector<double> values{1.0};
  for (const DenseTensor& f : factors) {
    dims.insert(dims.end(), f.dims().begin(), f.dims().end());
    std::vector<double> next;
    next.reserve(values.size() * f.values().size());
    for (double a : values)
      for (double b : f.values()) next.push_back(a * b);
    values = std::move(next);
  }
  return DenseTensor(std::move(dims), std::move(values));
}

DenseTensor covariance_tensor(const std::vector<Matrix>& sets) {
  if (sets.empty()) throw Error(ErrorCode::InvalidArgument, "covariance tensor needs at least one set");
  const Index n = sets.front().rows();
  std::vector<Index> dims;
  for (const Matrix& s : sets) {
    if (s.rows() != n) throw Error(ErrorCode::SampleCountMismatch, "sets must share the sample count");
    dims.push_back(s.cols());
  }
  if (n < 1) throw Error(ErrorCode::InsufficientSamples, "covariance tensor of an empty set");

  DenseTensor out(dims);
  auto& acc = out.values();
  std::vector<double> term;
  std::vector<double> next;
  for (Index i = 0; i < n; ++i) {
    term.assign(1, 1.0);
    for (const Matrix& s : sets) {
      next.clear();
      for (double a : term)
        for (Index c = 0; c < s.cols(); ++c) next.push_back(a * s(i, c));
      std::swap(term, next);
    }
    for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += term[p];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : acc) v *= inv_n;
  return out;
}

DenseTensor covariance_tensor(const std::vector<DataMatrix>& sets) {
  std::vector<Matrix> raw;
  raw.reserve(sets.size());
  for (const auto& s : sets) raw.push_back(s.values());
  return covariance_tensor(raw);
}

DenseTensor whiten_tensor(const DenseTensor& c, const std::vector<Matrix>& covariances, double rel_tol) {
  if (static_cast<Index>(covariances.size()) != c.order()) {
    throw Error(ErrorCode::DimensionMismatch, "need one covariance per tensor mode");
  }
  DenseTensor t = c;
  for (Index k = 0; k < c.order(); ++k) {
    t = mode_product(t, inv_sqrt_truncated(covariances[static_cast<std::size_t>(k)], rel_tol).matrix, k);
  }
  return t;
}

Vector contract_except(const DenseTensor& t, const std::vector<Vector>& directions, Index skip) {
  const Index order = t.order();
  if (static_cast<Index>(directions.size()) != order) {
    throw Error(ErrorCode::DimensionMismatch, "need one direction per tensor mode");
  }
  const auto& dims = t.dims();
  for (Index k = 0; k < order; ++k) {
    if (k != skip && directions[static_cast<std::size_t>(k)].size() != dims[static_cast<std::size_t>(k)]) {
      throw Error(ErrorCode::DimensionMismatch, "direction length does not match the mode dimension");
    }
  }
  // Fold modes from the last toward the first; each step contracts the
  // trailing mode unless it is the kept one.
  std::vector<double> cur = t.values();
  std::vector<Index> cur_dims = dims;
  Index kept_pos = skip;
  for (Index k = order - 1; k >= 0; --k) {
    if (k == skip) continue;
    const std::size_t kk = static_cast<std::size_t>(k);
    const Index outer = product(cur_dims, 0, kk);
    const Index dk = cur_dims[kk];
    const Index inner = product(cur_dims, kk + 1, cur_dims.size());
    const Vector& p = directions[kk];
    std::vector<double> next(static_cast<std::size_t>(outer * inner), 0.0);
    for (Index o = 0; o < outer; ++o)
      for (Index m = 0; m < dk; ++m) {
        const double w = p[m];
        const double* s = cur.data() + (o * dk + m) * inner;
        double* d = next.data() + o * inner;
        for (Index i = 0; i < inner; ++i) d[i] += w * s[i];
      }
    cur = std::move(next);
    cur_dims.erase(cur_dims.begin() + static_cast<std::ptrdiff_t>(kk));
  }
  (void)kept_pos;
  return Eigen::Map<const Vector>(cur.data(), static_cast<Index>(cur.size()));
}

Rank1Model rank1_als(const DenseTensor& t, const AlsOptions& options) {
  if (t.order() < 2) throw Error(ErrorCode::InvalidArgument, "rank-1 ALS needs a tensor of order >= 2");
  if (t.norm() == 0.0) throw Error(ErrorCode::ZeroTensor, "cannot decompose an all-zero tensor");
  if (options.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");

  const Index order = t.order();
  Rng rng(options.seed);
  std::vector<Vector> dirs(static_cast<std::size_t>(order));
  for (Index k = 0; k < order; ++k) {
    const SymmetricSpectrum s = sym_eigen(unfolding_gram(t, k));
    dirs[static_cast<std::size_t>(k)] =
        s.eigenvalues[0] > 0.0 ? Vector(s.eigenvectors.col(0)) : random_unit(t.dims()[static_cast<std::size_t>(k)], rng);
  }

  Rank1Model model;
  double rho_prev = contract_all(t, dirs);
  for (Index it = 1; it <= options.max_iter; ++it) {
    for (Index k = 0; k < order; ++k) {
      Vector v = contract_except(t, dirs, k);
      const double nv = v.norm();
      // A vanishing contraction means the other directions are orthogonal
      // to the tensor's support; restart this mode from a random vector.
      dirs[static_cast<std::size_t>(k)] = nv > 0.0 ? Vector(v / nv) : random_unit(v.size(), rng);
    }
    const double rho = contract_all(t, dirs);
    model.rho_history.push_back(rho);
    model.iterations = it;
    const bool converged = std::abs(rho - rho_prev) <= options.tol * std::abs(rho);
    rho_prev = rho;
    if (converged) break;
  }

  for (Index k = 0; k + 1 < order; ++k) fix_sign(dirs[static_cast<std::size_t>(k)]);
  double rho = contract_all(t, dirs);
  if (rho < 0.0) {
    dirs.back() = -dirs.back();
    rho = -rho;
  }
  model.rho = rho;
  model.directions = std::move(dirs);
  return model;
}

Vector local_tcca_direction(const std::vector<Matrix>& local_sets, Index side, const KSetOptions& options) {
  if (local_sets.size() < 2) throw Error(ErrorCode::InvalidArgument, "TCCA needs at least two sets");
  if (side < 0 || side >= static_cast<Index>(local_sets.size())) {
    throw Error(ErrorCode::InvalidArgument, "metric side out of range");
  }
  std::vector<detail::Whitener> whiteners;
  std::vector<Matrix> whitened;
  for (const Matrix& s : local_sets) {
    const Matrix c = center_rows(s);
    if (c.cwiseAbs().maxCoeff() == 0.0) return Vector::Zero(local_sets[static_cast<std::size_t>(side)].cols());
    whiteners.push_back(detail::whitener(c, options.ridge, options.rel_tol));
    whitened.push_back(c * whiteners.back().map());
  }
  // The covariance tensor of whitened coordinates equals the whitened
  // covariance tensor expressed in each set's kept eigenbasis.
  const DenseTensor t = covariance_tensor(whitened);
  Rank1Model fit;
  try {
    fit = rank1_als(t, options.als);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroTensor) throw;
    return Vector::Zero(local_sets[static_cast<std::size_t>(side)].cols());
  }
  const std::size_t s = static_cast<std::size_t>(side);
  return whiteners[s].map() * fit.directions[s];
}

MetricMatrix metric_k_sets(const std::vector<DataMatrix>& sets, const NeighborhoodSpec& spec,
                           const KSetOptions& options) {
  if (sets.size() < 2) throw Error(ErrorCode::InvalidArgument, "the K-set pipeline needs K >= 2");
  const Index n = sets.front().n_samples();
  for (const auto& s : sets) {
    if (s.n_samples() != n) throw Error(ErrorCode::SampleCountMismatch, "sets must be row-aligned");
  }
  if (options.side < 0 || options.side >= static_cast<Index>(sets.size())) {
    throw Error(ErrorCode::InvalidArgument, "metric side out of range");
  }
  const DataMatrix& ref = sets[static_cast<std::size_t>(options.side)];

  std::vector<Index> anchors(static_cast<std::size_t>(n));
  std::iota(anchors.begin(), anchors.end(), Index{0});
  MetricMatrix out{Matrix::Zero(n, n), MetricKind::Anchored, anchors};
  std::vector<Matrix> local(sets.size());
  for (Index i = 0; i < n; ++i) {
    const std::vector<Index> nb = neighborhood(i, ref, ref, spec);
    for (std::size_t k = 0; k < sets.size(); ++k) local[k] = sets[k].gather(nb);
    const Vector p = local_tcca_direction(local, options.side, options);
    const Vector proj = ref.values() * p;
    for (Index j = 0; j < n; ++j) {
      const double d = proj[i] - proj[j];
      out.values(i, j) = d * d;
    }
  }
  return out;
}

DiffusionEmbedding pipeline_k_sets(const std::vector<DataMatrix>& sets, const NeighborhoodSpec& spec,
                                   const KSetOptions& options) {
  return diffusion_maps(metric_k_sets(sets, spec, options), options.dz, options.sigma);
}

}  // namespace lcca
