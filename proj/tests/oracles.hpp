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

// Independent reference implementations used only by the tests. They favor
// obviousness over speed and share no code paths with the library beyond the
// data types.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "bgt/gp.hpp"
#include "bgt/graph.hpp"
#include "bgt/rng.hpp"

namespace bgt::testing {

inline long double rbf(const std::vector<double>& x, const std::vector<double>& y, double bandwidth,
                       double signal) {
  long double d2 = 0.0L;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const long double d = static_cast<long double>(x[k]) - y[k];
    d2 += d * d;
  }
  return signal * std::exp(-d2 / (2.0L * bandwidth * bandwidth));
}

// Dense GP posterior through an explicit inverse of K + jitter * I, in
// extended precision.
struct DenseGp {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

inline DenseGp dense_gp(double prior_mean, double bandwidth, double signal,
                        const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                        const std::vector<std::vector<double>>& queries, double jitter) {
  using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(xs.size());
  const auto m = static_cast<Eigen::Index>(queries.size());
  Vector mean = Vector::Constant(m, prior_mean);
  Matrix cov(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) cov(a, b) = rbf(queries[a], queries[b], bandwidth, signal);
  }
  if (n > 0) {
    Matrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) k(i, j) = rbf(xs[i], xs[j], bandwidth, signal);
    }
    k += static_cast<long double>(jitter) * Matrix::Identity(n, n);
    const Matrix inv = k.fullPivLu().inverse();
    Matrix cross(m, n);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index i = 0; i < n; ++i) cross(a, i) = rbf(queries[a], xs[i], bandwidth, signal);
    }
    Vector resid(n);
    for (Eigen::Index i = 0; i < n; ++i) resid(i) = static_cast<long double>(ys[i]) - prior_mean;
    mean += cross * (inv * resid);
    cov -= cross * inv * cross.transpose();
  }
  return {mean.cast<double>(), cov.cast<double>()};
}

// Up to n points in [0, extent]^dim, pairwise at least min_sep apart, so the
// Gram matrix stays well conditioned and double-precision comparisons at tight
// tolerances are meaningful.
inline std::vector<std::vector<double>> separated_inputs(std::size_t n, std::size_t dim, double extent,
                                                         double min_sep, Rng& rng) {
  std::vector<std::vector<double>> out;
  for (int tries = 0; out.size() < n && tries < 20000; ++tries) {
    std::vector<double> x(dim);
    for (auto& v : x) v = rng.uniform(0, extent);
    bool ok = true;
    for (const auto& y : out) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
      ok = ok && d2 >= min_sep * min_sep;
    }
    if (ok) out.push_back(std::move(x));
  }
  return out;
}

// Laplace expansion along the first row.
inline double cofactor_det(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      Eigen::Index c2 = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, c2++) = a(i, j);
      }
    }
    det += ((col % 2 == 0) ? 1.0 : -1.0) * a(0, col) * cofactor_det(minor);
  }
  return det;
}

// Best value over all walks from the start with at most `cap` moves, by
// dynamic programming over (node, visited set). Exact for the walk model:
// rewards once per newly visited non-start node, cost on every move.
inline double dp_best_walk(const GraphInstance& instance, int cap) {
  const auto& t = instance.topology;
  const std::size_t n = t.node_count();
  const std::size_t masks = std::size_t{1} << n;
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  std::vector<double> layer(n * masks, kNone);
  const NodeId s = t.start();
  layer[s * masks + (std::size_t{1} << s)] = 0.0;
  double best = 0.0;
  for (int step = 0; step < cap; ++step) {
    std::vector<double> next(n * masks, kNone);
    for (NodeId i = 0; i < n; ++i) {
      for (std::size_t mask = 0; mask < masks; ++mask) {
        const double v = layer[i * masks + mask];
        if (v == kNone) continue;
        for (const auto& e : t.edges()) {
          if (e.key.is_self_loop() || (e.key.a != i && e.key.b != i)) continue;
          const NodeId j = e.key.other(i);
          const std::size_t bit = std::size_t{1} << j;
          const double r = (mask & bit) ? 0.0 : instance.truth.reward[j];
          const double c = instance.truth.cost[static_cast<std::size_t>(&e - t.edges().data())];
          double& slot = next[j * masks + (mask | bit)];
          slot = std::max(slot, v + r - c);
        }
      }
    }
    layer = std::move(next);
    for (const double v : layer) best = std::max(best, v);
  }
  return best;
}

inline bool has_hamiltonian_path(const SimpleGraph& g) {
  const std::size_t n = g.node_count;
  if (n <= 1) return true;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : g.edges) adj[a][b] = adj[b][a] = true;
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  do {
    bool ok = true;
    for (std::size_t k = 1; k < n && ok; ++k) ok = adj[perm[k - 1]][perm[k]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::vector<std::pair<NodeId, NodeId>> all_pairs(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  return pairs;
}

// Every connected labeled simple graph on n nodes.
inline std::vector<SimpleGraph> all_connected_graphs(std::size_t n) {
  const auto pairs = all_pairs(n);
  std::vector<SimpleGraph> out;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << pairs.size()); ++subset) {
    SimpleGraph g{n, {}};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (subset >> k & 1) g.edges.push_back(pairs[k]);
    }
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

inline SimpleGraph random_connected_graph(std::size_t n, double p, Rng& rng) {
  for (;;) {
    SimpleGraph g{n, {}};
    for (const auto& e : all_pairs(n)) {
      if (rng.bernoulli(p)) g.edges.push_back(e);
    }
    if (is_connected(g)) return g;
  }
}

// Edges whose removal disconnects the graph, by trying each one.
inline std::vector<bool> bridges_by_removal(const Topology& t) {
  std::vector<bool> out(t.edge_count(), false);
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    if (t.edge(e).key.is_self_loop()) continue;
    SimpleGraph g{t.node_count(), {}};
    for (std::size_t f = 0; f < t.edge_count(); ++f) {
      const auto& key = t.edge(f).key;
      if (f != e && !key.is_self_loop()) g.edges.emplace_back(key.a, key.b);
    }
    out[e] = !is_connected(g);
  }
  return out;
}

// Random tree on n nodes with coordinates in [0, 10]^2 and default truths.
inline GraphInstance random_tree(std::size_t n, Rng& rng) {
  std::vector<Point> coords;
  std::vector<std::pair<NodeId, NodeId>> links;
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
    if (i > 0) links.emplace_back(static_cast<NodeId>(rng.below(i)), static_cast<NodeId>(i));
  }
  return with_truth(make_topology(coords, links, 0), default_truth_model(), "tree");
}

}  // namespace bgt::testing
