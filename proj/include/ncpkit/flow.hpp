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

#ifndef NCPKIT_FLOW_HPP_
#define NCPKIT_FLOW_HPP_

#include <cstdint>
#include <vector>

#include <ncpkit/candidate.hpp>
#include <ncpkit/graph.hpp>

namespace ncpkit {

using capacity = std::int64_t;

/// Directed network with integer capacities. Every arc is stored with its
/// reverse arc at index ^ 1.
class FlowNetwork {
public:
    struct Arc {
        std::uint32_t head;
        capacity cap;
    };

    FlowNetwork(std::size_t node_count, std::size_t source, std::size_t sink);

    /// Adds u -> v with capacity `cap` and v -> u with `reverse_cap`; returns
    /// the index of the forward arc.
    std::size_t add_arc(std::size_t u, std::size_t v, capacity cap, capacity reverse_cap = 0);

    std::size_t node_count() const noexcept { return out_.size(); }
    std::size_t source() const noexcept { return source_; }
    std::size_t sink() const noexcept { return sink_; }
    const std::vector<Arc> &arcs() const noexcept { return arcs_; }
    const std::vector<std::uint32_t> &out_arcs(std::size_t u) const { return out_[u]; }
    std::uint32_t tail(std::size_t arc) const { return arcs_[arc ^ 1].head; }

private:
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::uint32_t>> out_;
    std::size_t source_, sink_;
};

struct MaxFlowResult {
    capacity flow = 0;
    std::vector<std::uint32_t> source_side; // sorted, contains the source
};

/// Dinic's algorithm. The returned side is the set reachable from the source
/// in the residual network (the minimal minimum cut); its capacity is checked
/// against the flow value before returning.
MaxFlowResult max_flow(const FlowNetwork &net);

/// Capacity of the arcs leaving `side` (sorted node list).
capacity cut_capacity(const FlowNetwork &net, const std::vector<std::uint32_t> &side);

struct Bisection {
    Cluster side_a; // the side of smaller volume (ties: the side holding node 0)
    Cluster side_b;
    double imbalance = 0; // |vol(A) - vol(B)| / vol(G)
    count cut = 0;
    bool within_tolerance = true;
};

/**
 * Multilevel volume-balanced bisection: heavy-edge matching down to at most
 * 64 nodes, a Fiedler-ordering split of the coarsest graph, then greedy
 * boundary refinement and rebalancing while uncoarsening. Deterministic per
 * seed. Requires n >= 2.
 */
Bisection bisect(const Graph &g, std::uint64_t seed, double tolerance = 0.02);

/**
 * Flow-based quotient-cut improvement. Returns the subset S of `a` minimising
 * c_S / vol(S), found by repeated max-flow tests with strict improvement. When
 * vol(a) exceeds half the graph volume the input is returned if it has the
 * lower conductance.
 */
Cluster mqi(const Graph &g, const Cluster &a);

struct FlowSampleOptions {
    count min_size = 20;      // sides at or below this size are not split further
    std::int64_t max_depth = -1; // -1: ceil(log2(n / min_size))
    double tolerance = 0.02;
};

/// Randomised bisection plus MQI, repeated `trials` times, with recursive
/// bisection for smaller scales. Output order is by trial, then by
/// discovery.
std::vector<ScoredCluster> metis_mqi_sample(const Graph &g, std::size_t trials, std::uint64_t seed,
                                            const FlowSampleOptions &options = {}, unsigned workers = 1);

} // namespace ncpkit

#endif // NCPKIT_FLOW_HPP_
