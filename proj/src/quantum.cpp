// SPDX-License-Identifier: Apache-2.0
#include "lueders/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lueders/rng.hpp"

namespace lueders {

DensityOperator make_density(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m.mat());
  if (defect > tol::kHermiticity) {
    throw std::invalid_argument("make_density: not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  const double tr = m.mat().trace().real();
  if (std::abs(tr - 1.0) > tol::kTraceOne) {
    throw std::invalid_argument("make_density: trace deviates from 1 by " +
                                std::to_string(std::abs(tr - 1.0)));
  }
  const EigenDecomposition eig = hermitian_eigendecompose(m);
  bool clipped = false;
  std::vector<double> lambda = eig.eigenvalues;
  for (double& v : lambda) {
    if (v < -tol::kEigClip) {
      throw std::invalid_argument("make_density: negative eigenvalue " +
                                  std::to_string(v));
    }
    if (v < 0.0) {
      v = 0.0;
      clipped = true;
    }
  }
  if (!clipped) {
    return DensityOperator(m);
  }
  // Rebuild from the clipped spectrum and renormalize.
  const double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  if (!(sum > 0.0)) {
    throw std::invalid_argument("make_density: zero spectrum after clipping");
  }
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(m.dim(), m.dim());
  for (Eigen::Index i = 0; i < m.dim(); ++i) {
    if (lambda[static_cast<std::size_t>(i)] > 0.0) {
      rebuilt += (lambda[static_cast<std::size_t>(i)] / sum) *
                 (eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint());
    }
  }
  return DensityOperator(ComplexMatrix(std::move(rebuilt)));
}

DensityOperator random_density(Eigen::Index dim, Eigen::Index rank,
                               std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

DensityOperator random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density: rank " +
                                std::to_string(rank) + " out of range [1, " +
                                std::to_string(dim) + "]");
  }
  Eigen::MatrixXcd g(dim, rank);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < rank; ++c) {
      g(r, c) = rng.complex_normal();
    }
  }
  Eigen::MatrixXcd w = g * g.adjoint();
  const double tr = w.trace().real();
  if (!(tr > 0.0)) {
    throw std::runtime_error("random_density: degenerate Gaussian draw");
  }
  w /= tr;
  return make_density(ComplexMatrix(std::move(w)));
}

DensityOperator pure_state(const UnitVector& psi) {
  return make_density(ray_projector(psi));
}

struct Observable::Data {
  std::vector<double> eigenvalues;
  std::vector<ComplexMatrix> projectors;
  std::vector<Eigen::MatrixXcd> frames;  // d x k_n isometries
  Eigen::Index dim = 0;
};

Observable::Observable(std::shared_ptr<const Data> data)
    : data_(std::move(data)) {}

Eigen::Index Observable::dim() const { return data_->dim; }

int Observable::outcomes() const {
  return static_cast<int>(data_->eigenvalues.size());
}

double Observable::eigenvalue(int n) const {
  return data_->eigenvalues.at(static_cast<std::size_t>(n));
}

const ComplexMatrix& Observable::projector(int n) const {
  return data_->projectors.at(static_cast<std::size_t>(n));
}

Eigen::Index Observable::rank(int n) const {
  return data_->frames.at(static_cast<std::size_t>(n)).cols();
}

const Eigen::MatrixXcd& Observable::eigenbasis(int n) const {
  return data_->frames.at(static_cast<std::size_t>(n));
}

namespace {

// Orthonormal columns spanning range(p) for a validated projector.
Eigen::MatrixXcd projector_frame(const ComplexMatrix& p) {
  const EigenDecomposition eig = hermitian_eigendecompose(p, tol::kProjector);
  Eigen::Index rank = 0;
  for (double v : eig.eigenvalues) {
    if (v > 0.5) {
      ++rank;
    }
  }
  if (rank < 1) {
    throw std::invalid_argument("Observable: projector has rank 0");
  }
  // Eigenvalues ascend, so the range eigenvectors are the trailing columns.
  return eig.eigenvectors.rightCols(rank);
}

}  // namespace

Observable Observable::create(std::vector<double> eigenvalues,
                              std::vector<ComplexMatrix> projectors,
                              double distinct_tol) {
  if (eigenvalues.empty() || eigenvalues.size() != projectors.size()) {
    throw std::invalid_argument(
        "Observable: eigenvalue/projector count mismatch");
  }
  const Eigen::Index dim = projectors.front().dim();

  // Canonical outcome order: ascending eigenvalue.
  std::vector<std::size_t> order(eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return eigenvalues[a] < eigenvalues[b];
  });

  auto data = std::make_shared<Data>();
  data->dim = dim;
  for (std::size_t idx : order) {
    data->eigenvalues.push_back(eigenvalues[idx]);
    data->projectors.push_back(std::move(projectors[idx]));
  }

  for (std::size_t n = 0; n < data->projectors.size(); ++n) {
    const ComplexMatrix& p = data->projectors[n];
    if (p.dim() != dim) {
      throw std::invalid_argument("Observable: projector " +
                                  std::to_string(n) + " has wrong dimension");
    }
    if (hermiticity_defect(p.mat()) > tol::kHermiticity) {
      throw std::invalid_argument("Observable: projector " +
                                  std::to_string(n) + " is not Hermitian");
    }
    for (std::size_t m = 0; m < data->projectors.size(); ++m) {
      const Eigen::MatrixXcd prod = p.mat() * data->projectors[m].mat();
      const Eigen::MatrixXcd expect =
          (n == m) ? p.mat() : Eigen::MatrixXcd::Zero(dim, dim).eval();
      if (max_abs(prod - expect) > tol::kProjector) {
        throw std::invalid_argument(
            "Observable: projectors " + std::to_string(n) + " and " +
            std::to_string(m) + " violate orthogonality/idempotency");
      }
    }
  }

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const ComplexMatrix& p : data->projectors) {
    sum += p.mat();
  }
  if (max_abs(sum - Eigen::MatrixXcd::Identity(dim, dim)) > tol::kProjector) {
    throw std::invalid_argument(
        "Observable: projectors do not sum to the identity");
  }

  for (std::size_t n = 1; n < data->eigenvalues.size(); ++n) {
    if (data->eigenvalues[n] - data->eigenvalues[n - 1] <= distinct_tol) {
      throw std::invalid_argument(
          "Observable: eigenvalues " + std::to_string(n - 1) + " and " +
          std::to_string(n) + " are not distinct at tolerance " +
          std::to_string(distinct_tol));
    }
  }

  for (const ComplexMatrix& p : data->projectors) {
    data->frames.push_back(projector_frame(p));
  }

  Eigen::Index total_rank = 0;
  for (const Eigen::MatrixXcd& f : data->frames) {
    total_rank += f.cols();
  }
  if (total_rank != dim) {
    throw std::invalid_argument("Observable: projector ranks sum to " +
                                std::to_string(total_rank) + ", expected " +
                                std::to_string(dim));
  }

  return Observable(std::move(data));
}

Observable spectral_decompose(const ComplexMatrix& h, double cluster_tol) {
  if (cluster_tol < 0.0) {
    throw std::invalid_argument("spectral_decompose: negative cluster_tol");
  }
  const EigenDecomposition eig = hermitian_eigendecompose(h);
  const Eigen::Index dim = h.dim();

  std::vector<double> values;
  std::vector<ComplexMatrix> projectors;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= dim; ++i) {
    const bool new_cluster =
        (i == dim) || (eig.eigenvalues[static_cast<std::size_t>(i)] -
                           eig.eigenvalues[static_cast<std::size_t>(i - 1)] >
                       cluster_tol);
    if (!new_cluster) {
      continue;
    }
    const Eigen::Index count = i - start;
    double mean = 0.0;
    for (Eigen::Index j = start; j < i; ++j) {
      mean += eig.eigenvalues[static_cast<std::size_t>(j)];
    }
    mean /= static_cast<double>(count);
    const Eigen::MatrixXcd basis = eig.eigenvectors.middleCols(start, count);
    values.push_back(mean);
    projectors.emplace_back(Eigen::MatrixXcd(basis * basis.adjoint()));
    start = i;
  }
  return Observable::create(std::move(values), std::move(projectors),
                            cluster_tol);
}

namespace {

void check_family_shape(const Observable& obs,
                        const std::vector<double>& weights,
                        std::size_t block_count) {
  if (weights.size() != static_cast<std::size_t>(obs.outcomes()) ||
      block_count != weights.size()) {
    throw std::invalid_argument(
        "family element: weight/block count does not match outcomes");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < -tol::kProbabilityClip || !std::isfinite(w)) {
      throw std::invalid_argument("family element: negative weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::kTraceOne) {
    throw std::invalid_argument("family element: weights sum to " +
                                std::to_string(sum));
  }
}

}  // namespace

ADefiniteFamilyElement make_family_element(Observable obs,
                                           std::vector<double> weights,
                                           std::vector<DensityOperator> blocks) {
  check_family_shape(obs, weights, blocks.size());
  std::vector<DensityOperator> coords;
  coords.reserve(blocks.size());
  for (int n = 0; n < obs.outcomes(); ++n) {
    const DensityOperator& b = blocks[static_cast<std::size_t>(n)];
    const Eigen::Index k = obs.rank(n);
    if (b.dim() == k) {
      coords.push_back(b);
      continue;
    }
    if (b.dim() != obs.dim()) {
      throw std::invalid_argument("family element: block " +
                                  std::to_string(n) + " has dimension " +
                                  std::to_string(b.dim()) + ", expected " +
                                  std::to_string(k) + " or " +
                                  std::to_string(obs.dim()));
    }
    // Embedded block: must already live inside its eigenspace.
    const Eigen::MatrixXcd& p = obs.projector(n).mat();
    const double defect = max_abs(p * b.mat() * p - b.mat());
    if (defect > 1e-9) {
      throw std::invalid_argument(
          "family element: block " + std::to_string(n) +
          " is not supported in its eigenspace (defect " +
          std::to_string(defect) + ")");
    }
    const Eigen::MatrixXcd& v = obs.eigenbasis(n);
    coords.push_back(make_density(ComplexMatrix(v.adjoint() * b.mat() * v)));
  }
  return ADefiniteFamilyElement{std::move(obs), std::move(weights),
                                std::move(coords)};
}

DensityOperator assemble_family_element(const ADefiniteFamilyElement& e) {
  check_family_shape(e.observable, e.weights, e.blocks.size());
  const Eigen::Index dim = e.observable.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < e.observable.outcomes(); ++n) {
    const DensityOperator& b = e.blocks[static_cast<std::size_t>(n)];
    if (b.dim() != e.observable.rank(n)) {
      throw std::invalid_argument("family element: block " +
                                  std::to_string(n) +
                                  " does not match its eigenspace rank");
    }
    const Eigen::MatrixXcd& v = e.observable.eigenbasis(n);
    out += e.weights[static_cast<std::size_t>(n)] * (v * b.mat() * v.adjoint());
  }
  return make_density(ComplexMatrix(std::move(out)));
}

DensityOperator embedded_block(const ADefiniteFamilyElement& e, int n) {
  if (n < 0 || n >= e.observable.outcomes()) {
    throw std::out_of_range("embedded_block: outcome index");
  }
  const Eigen::MatrixXcd& v = e.observable.eigenbasis(n);
  return make_density(ComplexMatrix(
      v * e.blocks[static_cast<std::size_t>(n)].mat() * v.adjoint()));
}

ADefiniteFamilyElement random_family_element(const Observable& obs,
                                             std::uint64_t seed) {
  Rng rng(seed);
  return random_family_element(obs, rng);
}

ADefiniteFamilyElement random_family_element(const Observable& obs, Rng& rng) {
  const int m = obs.outcomes();
  // Flat Dirichlet over outcomes.
  std::vector<double> weights(static_cast<std::size_t>(m));
  double sum = 0.0;
  for (double& w : weights) {
    w = rng.exponential();
    sum += w;
  }
  if (sum < 1e-300) {
    std::fill(weights.begin(), weights.end(), 1.0 / m);
  } else {
    for (double& w : weights) {
      w /= sum;
    }
  }
  std::vector<DensityOperator> blocks;
  blocks.reserve(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) {
    const Eigen::Index k = obs.rank(n);
    if (k == 1) {
      // One-dimensional eigenspace: the block is forced.
      blocks.push_back(make_density(ComplexMatrix::identity(1)));
    } else {
      blocks.push_back(random_density(k, k, rng));
    }
  }
  return ADefiniteFamilyElement{obs, std::move(weights), std::move(blocks)};
}

Observable random_observable(Eigen::Index dim, Rng& rng) {
  if (dim < 1) {
    throw std::invalid_argument("random_observable: dim must be >= 1");
  }
  const int m = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(dim))) + 1;

  // Uniform composition of dim into m positive parts: m-1 distinct cut
  // points from {1, ..., dim-1} via a partial Fisher-Yates shuffle.
  std::vector<Eigen::Index> cuts;
  if (m > 1) {
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(dim - 1));
    std::iota(pool.begin(), pool.end(), Eigen::Index{1});
    for (int i = 0; i < m - 1; ++i) {
      const std::size_t j =
          static_cast<std::size_t>(i) +
          static_cast<std::size_t>(rng.uniform_index(pool.size() - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      cuts.push_back(pool[static_cast<std::size_t>(i)]);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(dim);

  std::vector<double> values;
  for (int n = 0; n < m; ++n) {
    // Gaps are at least 0.5, comfortably above any clustering tolerance.
    values.push_back(static_cast<double>(n) + 0.25 + 0.5 * rng.uniform());
  }

  const Eigen::MatrixXcd u = random_unitary(dim, rng);
  std::vector<ComplexMatrix> projectors;
  Eigen::Index start = 0;
  for (int n = 0; n < m; ++n) {
    const Eigen::Index stop = cuts[static_cast<std::size_t>(n)];
    const Eigen::MatrixXcd basis = u.middleCols(start, stop - start);
    projectors.emplace_back(Eigen::MatrixXcd(basis * basis.adjoint()));
    start = stop;
  }
  return Observable::create(std::move(values), std::move(projectors));
}

Observable random_observable(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_observable(dim, rng);
}

}  // namespace lueders
