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

#ifndef NCPKIT_BASELINES_HPP_
#define NCPKIT_BASELINES_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <ncpkit/candidate.hpp>
#include <ncpkit/graph.hpp>

namespace ncpkit {

/// Minimiser of x'Lx / x'Dx over x orthogonal to d, unit norm, first
/// nonzero entry positive. Throws std::invalid_argument on a disconnected
/// graph.
std::vector<double> fiedler_vector(const Graph &g);

/**
 * Sweep over the Fiedler ordering: every prefix from both ends, plus the MQI
 * improvement of the smaller-volume side of the best prefix. Throws on a
 * disconnected graph.
 */
std::vector<ScoredCluster> global_spectral_sweep(const Graph &g);

/// Shortest-path edge betweenness indexed by canonical edge id; every
/// unordered pair contributes once, split evenly over its shortest paths.
std::vector<double> edge_betweenness(const Graph &g, unsigned workers = 1);

struct DendrogramNode {
    std::vector<node> members; // sorted
    std::vector<std::size_t> children;
    std::size_t depth = 0;
    double conductance = 0; // in the input graph; NaN when undefined
};

/// Split tree; nodes[0] is the root (all of V).
struct Dendrogram {
    std::vector<DendrogramNode> nodes;
    std::vector<edge_id> removed; // removal order
};

struct DendrogramResult {
    Dendrogram tree;
    std::vector<ScoredCluster> pieces; // one per proper subtree
};

/**
 * Girvan-Newman: remove the edge of highest betweenness (recomputed after
 * every removal; ties to the smallest edge id) and record each component
 * split. Stops after max_removals removals or when no edge is left.
 */
DendrogramResult gn_dendrogram(const Graph &g, count max_removals, unsigned workers = 1);

/// Default removal budget: m for n <= 2000, else 2000.
count default_max_removals(const Graph &g);

/// Nested parentheses with original ids, e.g. "((0 1) (2 3))".
std::string serialize_dendrogram(const Graph &g, const Dendrogram &tree);

} // namespace ncpkit

#endif // NCPKIT_BASELINES_HPP_
