// Copyright 2026 The ncpkit Authors.
//
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

#ifndef NCPKIT_LOCAL_SPECTRAL_HPP_
#define NCPKIT_LOCAL_SPECTRAL_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include <ncpkit/candidate.hpp>
#include <ncpkit/graph.hpp>

namespace ncpkit {

/// Sparse (node, value) pairs sorted by node.
using SparseVector = std::vector<std::pair<node, double>>;

/**
 * Approximate personalized PageRank vector p with residual r, as produced by
 * the push procedure on the lazy random walk W = (I + D^-1 A) / 2.
 */
struct DiffusionVector {
    node seed_node = 0;
    double alpha = 0;
    double epsilon = 0;
    SparseVector support;  // p(u) > 0
    SparseVector residual; // r(u) > 0
    count pushes = 0;

    double support_mass() const;
    double residual_mass() const;
};

/// Called after every push with the running totals of p and r.
using PushObserver = std::function<void(double p_mass, double r_mass)>;

/**
 * Push procedure with a FIFO work queue: while some u has r(u) >= epsilon d(u),
 * move alpha r(u) into p(u), keep (1 - alpha) r(u) / 2 at u and spread the
 * same amount over the neighbors. Isolated nodes absorb their residual.
 * Throws std::invalid_argument for alpha outside (0, 1), epsilon <= 0 or an
 * invalid seed.
 */
DiffusionVector ppr_push(const Graph &g, node seed_node, double alpha, double epsilon,
                         const PushObserver &observer = {});

struct SweepPrefix {
    count k = 0;
    ClusterStats stats;
    double conductance = 0; // NaN when undefined (the prefix is all of V)
    bool connected = true;
};

struct SweepResult {
    std::shared_ptr<const std::vector<node>> ordering;
    std::vector<SweepPrefix> prefixes; // prefixes[i] has k = i + 1
    std::size_t best_index = 0;        // lowest conductance among connected prefixes

    Cluster prefix_cluster(std::size_t index) const;
};

/// Sweep over the support ordered by p(u)/d(u) descending, ties by smaller
/// id. Throws std::invalid_argument on an empty support.
SweepResult sweep(const Graph &g, const DiffusionVector &dv);

struct LocalSpectralParams {
    std::vector<double> alphas;
    std::vector<double> epsilons;

    /// alpha in {0.01, 0.05, 0.1, 0.2, 0.5}; epsilon = 1 / (10 t) for target
    /// volumes t = 10, 100, ... below vol(G)/2, and t = vol(G)/2.
    static LocalSpectralParams defaults(const Graph &g);
};

/// Every connected sweep prefix over all (alpha, epsilon) pairs for one seed.
/// A node set reached by several parameter pairs is emitted once, tagged with
/// the first pair that found it. The prefix holding all of V is skipped unless
/// the graph has a single node.
std::vector<ScoredCluster> local_cluster(const Graph &g, node seed_node, const LocalSpectralParams &params);

/// All nodes when sample == 0; otherwise `sample` distinct nodes drawn
/// uniformly with the given seed, in ascending order.
std::vector<node> select_seeds(const Graph &g, count sample, std::uint64_t seed);

/// local_cluster over many seeds, merged in seed order.
std::vector<ScoredCluster> local_spectral_sample(const Graph &g, const std::vector<node> &seeds,
                                                 const LocalSpectralParams &params, unsigned workers = 1);

} // namespace ncpkit

#endif // NCPKIT_LOCAL_SPECTRAL_HPP_
