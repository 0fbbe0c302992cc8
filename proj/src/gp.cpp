// Copyright 2026 The bgt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bgt/gp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "bgt/errors.hpp"

namespace bgt {

namespace {

constexpr double kInitialJitter = 1e-10;
constexpr double kMaxJitter = 1e-6;
constexpr double kDiagonalClampTolerance = 1e-8;

double clamp_variance(double v) { return v < 0.0 ? 0.0 : v; }

}  // namespace

double Kernel::operator()(std::span<const double> x, std::span<const double> y) const {
  double d2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] - y[k];
    d2 += diff * diff;
  }
  const double scale = convention == KernelConvention::kHalfSquared
                           ? 2.0 * bandwidth * bandwidth
                           : bandwidth * bandwidth;
  return signal_variance * std::exp(-d2 / scale);
}

std::optional<double> ObservationSet::find(std::span<const double> x) const {
  const auto it = index_.find(std::vector<double>(x.begin(), x.end()));
  if (it == index_.end()) return std::nullopt;
  return values_[it->second];
}

bool ObservationSet::add(std::span<const double> x, double value) {
  std::vector<double> key(x.begin(), x.end());
  const auto it = index_.find(key);
  if (it != index_.end()) {
    const double stored = values_[it->second];
    if (std::abs(stored - value) > 1e-9 * std::max(1.0, std::abs(stored))) {
      throw ConsistencyError("input already observed with value " + std::to_string(stored) +
                             ", new value " + std::to_string(value));
    }
    return false;
  }
  index_.emplace(key, values_.size());
  inputs_.push_back(std::move(key));
  values_.push_back(value);
  return true;
}

GpPosterior::GpPosterior(GpPrior prior, const ObservationSet& observations)
    : prior_(prior) {
  const auto m = static_cast<Eigen::Index>(observations.size());
  if (m == 0) return;
  const auto dim = static_cast<Eigen::Index>(observations.inputs().front().size());
  inputs_.resize(m, dim);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& row = observations.inputs()[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < dim; ++c) inputs_(r, c) = row[static_cast<std::size_t>(c)];
  }

  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& xi = observations.inputs()[static_cast<std::size_t>(i)];
      const auto& xj = observations.inputs()[static_cast<std::size_t>(j)];
      gram(i, j) = gram(j, i) = prior_.kernel(xi, xj);
    }
  }
  const double diag_mean = gram.diagonal().mean();
  for (double rel = kInitialJitter; rel <= kMaxJitter * 1.0000001; rel *= 10.0) {
    Eigen::MatrixXd jittered = gram;
    jittered.diagonal().array() += rel * diag_mean;
    factor_.compute(jittered);
    if (factor_.info() == Eigen::Success) {
      jitter_ = rel * diag_mean;
      Eigen::VectorXd residual(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        residual(i) = observations.values()[static_cast<std::size_t>(i)] - prior_.mean;
      }
      weights_ = factor_.solve(residual);
      return;
    }
  }
  throw NumericalError("Gram matrix of " + std::to_string(m) +
                       " observations is not positive definite after jitter escalation");
}

Eigen::VectorXd GpPosterior::cross_covariance(std::span<const double> x) const {
  Eigen::VectorXd k(inputs_.rows());
  std::vector<double> row(static_cast<std::size_t>(inputs_.cols()));
  for (Eigen::Index i = 0; i < inputs_.rows(); ++i) {
    for (Eigen::Index c = 0; c < inputs_.cols(); ++c) row[static_cast<std::size_t>(c)] = inputs_(i, c);
    k(i) = prior_.kernel(row, x);
  }
  return k;
}

double GpPosterior::mean(std::span<const double> x) const {
  if (inputs_.rows() == 0) return prior_.mean;
  return prior_.mean + cross_covariance(x).dot(weights_);
}

double GpPosterior::variance(std::span<const double> x) const {
  const double prior_var = prior_.kernel(x, x);
  if (inputs_.rows() == 0) return prior_var;
  const Eigen::VectorXd v = factor_.matrixL().solve(cross_covariance(x));
  return clamp_variance(prior_var - v.squaredNorm());
}

std::pair<double, double> GpPosterior::marginal(std::span<const double> x) const {
  return {mean(x), variance(x)};
}

PosteriorSummary GpPosterior::joint(const std::vector<std::vector<double>>& queries) const {
  const auto q = static_cast<Eigen::Index>(queries.size());
  PosteriorSummary out;
  out.mean = Eigen::VectorXd::Constant(q, prior_.mean);
  out.covariance.resize(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      out.covariance(i, j) = out.covariance(j, i) =
          prior_.kernel(queries[static_cast<std::size_t>(i)], queries[static_cast<std::size_t>(j)]);
    }
  }
  if (inputs_.rows() > 0 && q > 0) {
    Eigen::MatrixXd cross(inputs_.rows(), q);
    for (Eigen::Index j = 0; j < q; ++j) cross.col(j) = cross_covariance(queries[static_cast<std::size_t>(j)]);
    out.mean += cross.transpose() * weights_;
    const Eigen::MatrixXd v = factor_.matrixL().solve(cross);
    out.covariance -= v.transpose() * v;
  }
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  for (Eigen::Index i = 0; i < q; ++i) {
    if (out.covariance(i, i) < kDiagonalClampTolerance) {
      out.covariance(i, i) = clamp_variance(out.covariance(i, i));
    }
  }
  return out;
}

std::pair<double, double> posterior_marginal(const GpPrior& prior, const ObservationSet& observations,
                                             std::span<const double> query) {
  return GpPosterior(prior, observations).marginal(query);
}

PosteriorSummary posterior_joint(const GpPrior& prior, const ObservationSet& observations,
                                 const std::vector<std::vector<double>>& queries) {
  return GpPosterior(prior, observations).joint(queries);
}

double generalized_variance(const Eigen::MatrixXd& covariance) {
  if (covariance.rows() == 0) return 0.0;
  const double det = covariance.fullPivLu().determinant();
  return det > 0.0 ? det : 0.0;
}

double generalized_variance(const PosteriorSummary& summary) {
  return generalized_variance(summary.covariance);
}

}  // namespace bgt
