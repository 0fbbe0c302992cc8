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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace bgt {

// Which squared-exponential normalization the kernel uses.
enum class KernelConvention {
  kHalfSquared,  // exp(-|x - x'|^2 / (2 l^2))
  kSquared,      // exp(-|x - x'|^2 / l^2)
};

// Radial-basis covariance, scaled by signal_variance.
struct Kernel {
  double bandwidth = 1.0;
  double signal_variance = 1.0;
  KernelConvention convention = KernelConvention::kHalfSquared;

  double operator()(std::span<const double> x, std::span<const double> y) const;
};

struct GpPrior {
  double mean = 0.0;
  Kernel kernel;
};

// Noise-free observations: distinct inputs in insertion order.
class ObservationSet {
 public:
  // Appends (x, v) unless x is already stored. Returns whether it appended.
  // Throws ConsistencyError when x is stored with a different value.
  bool add(std::span<const double> x, double value);

  bool contains(std::span<const double> x) const { return find(x).has_value(); }
  std::optional<double> find(std::span<const double> x) const;

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::vector<std::vector<double>>& inputs() const { return inputs_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::vector<double>> inputs_;
  std::vector<double> values_;
  std::map<std::vector<double>, std::size_t> index_;
};

struct PosteriorSummary {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// Conditioned GP. The Gram factorization is computed once; queries are const
// and thread-compatible.
class GpPosterior {
 public:
  // Jitter starts at 1e-10 and escalates tenfold up to 1e-6, each relative to
  // the mean Gram diagonal. Throws NumericalError if none succeeds.
  GpPosterior(GpPrior prior, const ObservationSet& observations);

  double mean(std::span<const double> x) const;
  double variance(std::span<const double> x) const;
  std::pair<double, double> marginal(std::span<const double> x) const;
  PosteriorSummary joint(const std::vector<std::vector<double>>& queries) const;

  const GpPrior& prior() const { return prior_; }
  std::size_t observation_count() const { return static_cast<std::size_t>(inputs_.rows()); }
  // Absolute diagonal jitter that made the Gram matrix factorizable.
  double jitter() const { return jitter_; }

 private:
  Eigen::VectorXd cross_covariance(std::span<const double> x) const;

  GpPrior prior_;
  Eigen::MatrixXd inputs_;  // one observation per row
  Eigen::LLT<Eigen::MatrixXd> factor_;
  Eigen::VectorXd weights_;  // K^{-1} (y - mean)
  double jitter_ = 0.0;
};

std::pair<double, double> posterior_marginal(const GpPrior& prior, const ObservationSet& observations,
                                             std::span<const double> query);
PosteriorSummary posterior_joint(const GpPrior& prior, const ObservationSet& observations,
                                 const std::vector<std::vector<double>>& queries);

// Determinant of the covariance. 0 for an empty matrix and never negative.
double generalized_variance(const PosteriorSummary& summary);
double generalized_variance(const Eigen::MatrixXd& covariance);

}  // namespace bgt
