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

#include <ncpkit/graph.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <string_view>

namespace ncpkit {

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

Graph Graph::from_edges(count node_count, std::vector<std::pair<node, node>> edges,
                        std::vector<original_id> original_ids) {
    if (node_count > std::numeric_limits<node>::max())
        throw ClusterError("node count exceeds 32-bit id space");
    if (!original_ids.empty() && original_ids.size() != node_count)
        throw ClusterError("original id table does not match node count");

    for (auto &[u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw ClusterError("edge endpoint out of range");
        if (u > v)
            std::swap(u, v);
    }
    std::erase_if(edges, [](const auto &e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() > std::numeric_limits<edge_id>::max())
        throw ClusterError("edge count exceeds 32-bit id space");

    Graph g;
    g.edges_ = std::move(edges);
    g.offsets_.assign(node_count + 1, 0);
    for (const auto &[u, v] : g.edges_) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.targets_.resize(2 * g.edges_.size());
    g.arc_edge_.resize(2 * g.edges_.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (u, v) with u < v: filling the smaller-neighbor arcs
    // first and the larger-neighbor arcs second keeps every list sorted.
    for (edge_id e = 0; e < g.edges_.size(); ++e) {
        const auto [u, v] = g.edges_[e];
        g.targets_[fill[v]] = u;
        g.arc_edge_[fill[v]++] = e;
    }
    for (edge_id e = 0; e < g.edges_.size(); ++e) {
        const auto [u, v] = g.edges_[e];
        g.targets_[fill[u]] = v;
        g.arc_edge_[fill[u]++] = e;
    }
    for (node u = 0; u < node_count; ++u)
        g.max_degree_ = std::max<count>(g.max_degree_, g.offsets_[u + 1] - g.offsets_[u]);

    if (original_ids.empty()) {
        original_ids.resize(node_count);
        std::iota(original_ids.begin(), original_ids.end(), original_id{0});
    }
    g.original_ids_ = std::move(original_ids);
    g.id_index_.reserve(node_count);
    for (node u = 0; u < node_count; ++u)
        g.id_index_.emplace_back(g.original_ids_[u], u);
    std::sort(g.id_index_.begin(), g.id_index_.end());
    return g;
}

bool Graph::has_edge(node u, node v) const {
    if (!valid(u) || !valid(v))
        return false;
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::optional<node> Graph::find_original(original_id id) const {
    auto it = std::lower_bound(id_index_.begin(), id_index_.end(), std::make_pair(id, node{0}));
    if (it == id_index_.end() || it->first != id)
        return std::nullopt;
    return it->second;
}

namespace {

bool parse_token(std::string_view token, original_id &out) {
    const char *first = token.data();
    const char *last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

Graph load_edge_list(std::istream &in, const LoadOptions &options) {
    std::vector<std::pair<original_id, original_id>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::string_view rest(line);
        auto skip_ws = [&] {
            while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t'))
                rest.remove_prefix(1);
        };
        skip_ws();
        if (rest.empty() || rest.front() == '#')
            continue;
        original_id ids[2];
        for (auto &id : ids) {
            skip_ws();
            auto end = rest.find_first_of(" \t");
            auto token = rest.substr(0, end);
            if (token.empty())
                throw ParseError(line_no, "expected two node ids");
            if (!parse_token(token, id))
                throw ParseError(line_no, "invalid node id '" + std::string(token) + "'");
            rest.remove_prefix(token.size());
        }
        skip_ws();
        if (!rest.empty())
            throw ParseError(line_no, "unexpected trailing token (weighted edges are not supported)");
        raw.emplace_back(ids[0], ids[1]);
    }

    std::vector<original_id> ids;
    ids.reserve(2 * raw.size());
    for (const auto &[a, b] : raw) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&](original_id id) {
        return static_cast<node>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    std::vector<std::pair<node, node>> edges;
    edges.reserve(raw.size());
    for (const auto &[a, b] : raw)
        edges.emplace_back(dense(a), dense(b));

    const count n = ids.size();
    Graph g = Graph::from_edges(n, std::move(edges), std::move(ids));
    if (g.num_edges() == 0)
        throw ParseError(0, "graph has no edges");
    if (options.keep_largest_component)
        g = largest_connected_component(g);
    return g;
}

Graph load_edge_list(const std::filesystem::path &path, const LoadOptions &options) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    return load_edge_list(in, options);
}

void save_edge_list(std::ostream &out, const Graph &g) {
    for (const auto &[u, v] : g.edges())
        out << g.original(u) << ' ' << g.original(v) << '\n';
}

namespace {

// BFS labelling restricted to nodes with label == kUnvisited; nodes outside
// the restriction carry kOutside.
constexpr std::uint32_t kOutside = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kUnvisited = kOutside - 1;

std::vector<std::vector<node>> label_components(const Graph &g, std::vector<std::uint32_t> &label,
                                                std::span<const node> order) {
    std::vector<std::vector<node>> components;
    std::vector<node> queue;
    for (node start : order) {
        if (label[start] != kUnvisited)
            continue;
        const auto id = static_cast<std::uint32_t>(components.size());
        std::vector<node> members{start};
        label[start] = id;
        queue.assign(1, start);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (node v : g.neighbors(queue[head])) {
                if (label[v] == kUnvisited) {
                    label[v] = id;
                    queue.push_back(v);
                    members.push_back(v);
                }
            }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }
    return components;
}

} // namespace

std::vector<std::vector<node>> connected_components(const Graph &g) {
    std::vector<std::uint32_t> label(g.num_nodes(), kUnvisited);
    std::vector<node> order(g.num_nodes());
    std::iota(order.begin(), order.end(), node{0});
    return label_components(g, label, order);
}

std::vector<std::vector<node>> connected_components(const Graph &g, std::span<const node> members) {
    std::vector<node> order(members.begin(), members.end());
    std::sort(order.begin(), order.end());
    std::vector<std::uint32_t> label(g.num_nodes(), kOutside);
    for (node u : order) {
        if (!g.valid(u))
            throw ClusterError("member id out of range");
        label[u] = kUnvisited;
    }
    return label_components(g, label, order);
}

bool is_connected(const Graph &g) {
    if (g.num_nodes() == 0)
        return true;
    return connected_components(g).size() == 1;
}

bool is_connected(const Graph &g, std::span<const node> members) {
    if (members.empty())
        return true;
    auto &marker = detail::thread_marker(g.num_nodes());
    for (node u : members) {
        if (!g.valid(u))
            throw ClusterError("member id out of range");
        marker.mark(u);
    }
    std::vector<node> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> seen(sorted.size(), 0);
    auto index_of = [&](node v) {
        return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                        sorted.begin());
    };
    std::vector<node> queue{sorted.front()};
    seen[0] = 1;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (node v : g.neighbors(queue[head])) {
            if (!marker.marked(v))
                continue;
            auto idx = index_of(v);
            if (!seen[idx]) {
                seen[idx] = 1;
                ++reached;
                queue.push_back(v);
            }
        }
    }
    return reached == sorted.size();
}

Graph largest_connected_component(const Graph &g) {
    auto components = connected_components(g);
    if (components.size() <= 1)
        return g;
    std::size_t best = 0;
    auto min_original = [&](const std::vector<node> &c) {
        original_id lo = std::numeric_limits<original_id>::max();
        for (node u : c)
            lo = std::min(lo, g.original(u));
        return lo;
    };
    for (std::size_t i = 1; i < components.size(); ++i) {
        const auto &a = components[i];
        const auto &b = components[best];
        if (a.size() > b.size() || (a.size() == b.size() && min_original(a) < min_original(b)))
            best = i;
    }
    return induced_subgraph(g, components[best]);
}

Graph induced_subgraph(const Graph &g, std::span<const node> members) {
    std::vector<node> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (!g.valid(sorted[i]))
            throw ClusterError("member id out of range");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw ClusterError("duplicate member id");
    }
    std::vector<node> local(g.num_nodes(), std::numeric_limits<node>::max());
    for (node i = 0; i < sorted.size(); ++i)
        local[sorted[i]] = i;
    std::vector<std::pair<node, node>> edges;
    std::vector<original_id> ids;
    ids.reserve(sorted.size());
    for (node u : sorted) {
        ids.push_back(g.original(u));
        for (node v : g.neighbors(u))
            if (u < v && local[v] != std::numeric_limits<node>::max())
                edges.emplace_back(local[u], local[v]);
    }
    return Graph::from_edges(sorted.size(), std::move(edges), std::move(ids));
}

ClusterStats compute_stats(const Graph &g, std::span<const node> members) {
    auto &marker = detail::thread_marker(g.num_nodes());
    for (node u : members)
        marker.mark(u);
    ClusterStats s;
    s.size = members.size();
    count inside_arcs = 0;
    for (node u : members) {
        s.volume += g.degree(u);
        for (node v : g.neighbors(u))
            inside_arcs += marker.marked(v);
    }
    s.internal_edges = inside_arcs / 2;
    s.cut_edges = s.volume - inside_arcs;
    return s;
}

Cluster cluster_stats(const Graph &g, std::vector<node> members) {
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!g.valid(members[i]))
            throw ClusterError("member id " + std::to_string(members[i]) + " out of range");
        if (i > 0 && members[i] == members[i - 1])
            throw ClusterError("duplicate member id " + std::to_string(members[i]));
    }
    Cluster c;
    c.stats = compute_stats(g, members);
    c.members = std::move(members);
    return c;
}

Cluster whole_graph(const Graph &g) {
    Cluster c;
    c.members.resize(g.num_nodes());
    std::iota(c.members.begin(), c.members.end(), node{0});
    c.stats = {g.num_nodes(), g.num_edges(), 0, g.total_volume()};
    return c;
}

std::vector<node> complement(const Graph &g, std::span<const node> sorted_members) {
    std::vector<node> out;
    out.reserve(g.num_nodes() - sorted_members.size());
    std::size_t j = 0;
    for (node u = 0; u < g.num_nodes(); ++u) {
        if (j < sorted_members.size() && sorted_members[j] == u) {
            ++j;
            continue;
        }
        out.push_back(u);
    }
    return out;
}

namespace detail {

void NodeMarker::reset(count n) {
    if (stamp_.size() < n)
        stamp_.resize(n, 0);
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
}

NodeMarker &thread_marker(count n) {
    thread_local NodeMarker marker;
    marker.reset(n);
    return marker;
}

} // namespace detail

} // namespace ncpkit
