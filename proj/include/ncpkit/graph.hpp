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

#ifndef NCPKIT_GRAPH_HPP_
#define NCPKIT_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncpkit {

using node = std::uint32_t;
using edge_id = std::uint32_t;
using count = std::uint64_t;
using original_id = std::int64_t;

/// Raised by the edge-list reader; carries the 1-based line number (0 when
/// the error is not tied to a line, e.g. an empty input).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Invalid node ids, duplicate members and similar contract violations.
class ClusterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Immutable undirected simple graph in compressed adjacency form.
 *
 * Nodes are dense ids 0..n-1; the id each node had in the source file is kept
 * in a side table. Every undirected edge has a canonical id: its index in the
 * lexicographically sorted list of (u, v) pairs with u < v.
 */
class Graph {
public:
    Graph() = default;

    /// Builds a graph from arbitrary pairs over 0..node_count-1. Self-loops are
    /// dropped and reversed or repeated pairs merged. Without original ids the
    /// dense id doubles as the original id.
    static Graph from_edges(count node_count, std::vector<std::pair<node, node>> edges,
                            std::vector<original_id> original_ids = {});

    count num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    count num_edges() const noexcept { return edges_.size(); }
    /// 2m.
    count total_volume() const noexcept { return targets_.size(); }

    count degree(node u) const { return offsets_[u + 1] - offsets_[u]; }
    count max_degree() const noexcept { return max_degree_; }

    /// Sorted neighbor list.
    std::span<const node> neighbors(node u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    /// Canonical edge id of every arc out of u, aligned with neighbors(u).
    std::span<const edge_id> incident_edges(node u) const {
        return {arc_edge_.data() + offsets_[u], arc_edge_.data() + offsets_[u + 1]};
    }

    std::pair<node, node> edge(edge_id e) const { return edges_[e]; }
    const std::vector<std::pair<node, node>> &edges() const noexcept { return edges_; }
    bool has_edge(node u, node v) const;

    original_id original(node u) const { return original_ids_[u]; }
    const std::vector<original_id> &original_ids() const noexcept { return original_ids_; }
    std::optional<node> find_original(original_id id) const;

    bool valid(node u) const noexcept { return u < num_nodes(); }

private:
    std::vector<std::size_t> offsets_;
    std::vector<node> targets_;
    std::vector<edge_id> arc_edge_;
    std::vector<std::pair<node, node>> edges_;
    std::vector<original_id> original_ids_;
    std::vector<std::pair<original_id, node>> id_index_; // sorted by original id
    count max_degree_ = 0;
};

struct LoadOptions {
    bool keep_largest_component = false;
};

/// Reads a whitespace separated edge list; '#' starts a comment line. Node
/// tokens are integers; ids are remapped densely in ascending original order.
Graph load_edge_list(std::istream &in, const LoadOptions &options = {});
Graph load_edge_list(const std::filesystem::path &path, const LoadOptions &options = {});

/// Writes one "u v" line per edge using original ids.
void save_edge_list(std::ostream &out, const Graph &g);

/// Connected components of the whole graph, each sorted, ordered by smallest
/// member.
std::vector<std::vector<node>> connected_components(const Graph &g);

/// Components of the subgraph induced by `members` (which need not be sorted).
std::vector<std::vector<node>> connected_components(const Graph &g, std::span<const node> members);

bool is_connected(const Graph &g);
bool is_connected(const Graph &g, std::span<const node> members);

/// Largest component; ties go to the component holding the smallest original
/// id. Original ids are preserved.
Graph largest_connected_component(const Graph &g);

/// Subgraph on `members`. Local node i corresponds to the i-th smallest member;
/// original ids are carried over from g.
Graph induced_subgraph(const Graph &g, std::span<const node> members);

struct ClusterStats {
    count size = 0;           // n_S
    count internal_edges = 0; // m_S
    count cut_edges = 0;      // c_S
    count volume = 0;         // Vol(S) = 2 m_S + c_S

    friend bool operator==(const ClusterStats &, const ClusterStats &) = default;
};

struct Cluster {
    std::vector<node> members; // sorted, distinct
    ClusterStats stats;

    count size() const noexcept { return members.size(); }
};

/// Statistics in O(sum of member degrees). Throws ClusterError on duplicate or
/// out-of-range ids.
Cluster cluster_stats(const Graph &g, std::vector<node> members);
ClusterStats compute_stats(const Graph &g, std::span<const node> members);

/// Cluster holding every node.
Cluster whole_graph(const Graph &g);

/// Members of V \ S.
std::vector<node> complement(const Graph &g, std::span<const node> sorted_members);

namespace detail {

/// Epoch-stamped membership marks, reused across calls on one thread.
class NodeMarker {
public:
    void reset(count n);
    void mark(node u) { stamp_[u] = epoch_; }
    bool marked(node u) const { return stamp_[u] == epoch_; }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

NodeMarker &thread_marker(count n);

} // namespace detail

} // namespace ncpkit

#endif // NCPKIT_GRAPH_HPP_
