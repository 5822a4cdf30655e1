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

#include <ncpkit/baselines.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <ncpkit/bounds.hpp>
#include <ncpkit/flow.hpp>
#include <ncpkit/parallel.hpp>

namespace ncpkit {

std::vector<double> fiedler_vector(const Graph &g) {
    if (g.num_nodes() < 2 || !is_connected(g))
        throw std::invalid_argument("fiedler vector requires a connected graph with at least two nodes");
    return spectral_lower_bound(g).x_hat;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double conductance_or_nan(const Graph &g, const ClusterStats &s) {
    if (s.size == 0 || s.size >= g.num_nodes() || s.volume == 0 || s.volume >= g.total_volume())
        return kNaN;
    return score_from_stats(g, s, ScoreKind::Conductance);
}

// Emits every proper prefix of `order` as a candidate.
void emit_prefixes(const Graph &g, std::shared_ptr<const std::vector<node>> order, std::vector<ScoredCluster> &out) {
    const count n = g.num_nodes();
    std::vector<std::uint32_t> pos(n);
    for (std::uint32_t i = 0; i < n; ++i)
        pos[(*order)[i]] = i;
    std::vector<node> parent(n);
    std::iota(parent.begin(), parent.end(), node{0});
    auto find = [&](node x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    ClusterStats s;
    std::size_t components = 0;
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        const node u = (*order)[i];
        count inside = 0;
        ++components;
        for (node v : g.neighbors(u)) {
            if (pos[v] < i) {
                ++inside;
                const node a = find(i), b = find(pos[v]);
                if (a != b) {
                    parent[std::max(a, b)] = std::min(a, b);
                    --components;
                }
            }
        }
        s.size += 1;
        s.internal_edges += inside;
        s.volume += g.degree(u);
        s.cut_edges = s.cut_edges + g.degree(u) - 2 * inside;
        ScoredCluster c;
        c.nodes = NodeSet(order, i + 1);
        c.stats = s;
        c.connected = components == 1;
        c.provenance.generator = Generator::GlobalSpectral;
        c.scores[static_cast<std::size_t>(ScoreKind::Conductance)] = conductance_or_nan(g, s);
        out.push_back(std::move(c));
    }
}

} // namespace

std::vector<ScoredCluster> global_spectral_sweep(const Graph &g) {
    const auto x = fiedler_vector(g);
    const count n = g.num_nodes();
    auto ascending = std::make_shared<std::vector<node>>(n);
    std::iota(ascending->begin(), ascending->end(), node{0});
    std::sort(ascending->begin(), ascending->end(), [&](node a, node b) {
        if (x[a] != x[b])
            return x[a] < x[b];
        return a < b;
    });
    auto descending = std::make_shared<std::vector<node>>(n);
    std::iota(descending->begin(), descending->end(), node{0});
    std::sort(descending->begin(), descending->end(), [&](node a, node b) {
        if (x[a] != x[b])
            return x[a] > x[b];
        return a < b;
    });

    std::vector<ScoredCluster> out;
    out.reserve(2 * n);
    emit_prefixes(g, ascending, out);
    emit_prefixes(g, descending, out);

    std::size_t best = 0;
    for (std::size_t i = 1; i < out.size(); ++i) {
        const double a = out[i].cached(ScoreKind::Conductance), b = out[best].cached(ScoreKind::Conductance);
        if (!std::isnan(a) && (std::isnan(b) || a < b))
            best = i;
    }
    if (!out.empty()) {
        std::vector<node> side = out[best].nodes.sorted();
        if (2 * out[best].stats.volume > g.total_volume())
            side = complement(g, side);
        Cluster improved = mqi(g, cluster_stats(g, std::move(side)));
        Provenance prov;
        prov.generator = Generator::GlobalSpectral;
        prov.depth = 1;
        out.push_back(make_candidate(g, std::move(improved.members), prov));
    }
    return out;
}

namespace {

// Brandes accumulation from `sources` over edges with alive[e] set; adds the
// ordered-pair dependencies into acc.
void accumulate(const Graph &g, const std::vector<char> &alive, std::span<const node> sources,
                std::vector<double> &acc) {
    const count n = g.num_nodes();
    std::vector<std::int64_t> dist(n, -1);
    std::vector<double> sigma(n, 0.0), delta(n, 0.0);
    std::vector<node> order;
    order.reserve(n);
    for (node s : sources) {
        order.clear();
        dist[s] = 0;
        sigma[s] = 1;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const node u = order[head];
            const auto nbrs = g.neighbors(u);
            const auto eids = g.incident_edges(u);
            for (std::size_t a = 0; a < nbrs.size(); ++a) {
                if (!alive[eids[a]])
                    continue;
                const node v = nbrs[a];
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    order.push_back(v);
                }
                if (dist[v] == dist[u] + 1)
                    sigma[v] += sigma[u];
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            const node w = order[i];
            const auto nbrs = g.neighbors(w);
            const auto eids = g.incident_edges(w);
            for (std::size_t a = 0; a < nbrs.size(); ++a) {
                const node v = nbrs[a];
                if (!alive[eids[a]] || dist[v] != dist[w] - 1)
                    continue;
                const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                acc[eids[a]] += c;
                delta[v] += c;
            }
        }
        for (node u : order) {
            dist[u] = -1;
            sigma[u] = 0;
            delta[u] = 0;
        }
    }
}

// Betweenness over `sources`, summed in a fixed chunk order so the result
// does not depend on the worker count.
std::vector<double> betweenness_over(const Graph &g, const std::vector<char> &alive, std::span<const node> sources,
                                     unsigned workers) {
    constexpr std::size_t kChunks = 32;
    const std::size_t chunks = std::min(kChunks, std::max<std::size_t>(1, sources.size()));
    std::vector<std::vector<double>> parts(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::size_t begin = sources.size() * c / chunks, end = sources.size() * (c + 1) / chunks;
        parts[c].assign(g.num_edges(), 0.0);
        accumulate(g, alive, sources.subspan(begin, end - begin), parts[c]);
    });
    std::vector<double> total(g.num_edges(), 0.0);
    for (const auto &p : parts)
        for (std::size_t e = 0; e < total.size(); ++e)
            total[e] += p[e];
    for (auto &v : total)
        v /= 2.0;
    return total;
}

std::vector<node> alive_component(const Graph &g, const std::vector<char> &alive, node start,
                                  std::vector<char> &seen) {
    std::vector<node> comp{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
        const node u = comp[head];
        const auto nbrs = g.neighbors(u);
        const auto eids = g.incident_edges(u);
        for (std::size_t a = 0; a < nbrs.size(); ++a)
            if (alive[eids[a]] && !seen[nbrs[a]]) {
                seen[nbrs[a]] = 1;
                comp.push_back(nbrs[a]);
            }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

} // namespace

std::vector<double> edge_betweenness(const Graph &g, unsigned workers) {
    std::vector<char> alive(g.num_edges(), 1);
    std::vector<node> sources(g.num_nodes());
    std::iota(sources.begin(), sources.end(), node{0});
    return betweenness_over(g, alive, sources, workers);
}

count default_max_removals(const Graph &g) { return g.num_nodes() <= 2000 ? g.num_edges() : 2000; }

DendrogramResult gn_dendrogram(const Graph &g, count max_removals, unsigned workers) {
    const count n = g.num_nodes();
    DendrogramResult result;
    auto &tree = result.tree;
    std::vector<char> alive(g.num_edges(), 1);
    std::vector<std::size_t> owner(n, 0);

    DendrogramNode root;
    root.members.resize(n);
    std::iota(root.members.begin(), root.members.end(), node{0});
    tree.nodes.push_back(std::move(root));
    auto add_child = [&](std::size_t parent, std::vector<node> members) {
        DendrogramNode child;
        child.depth = tree.nodes[parent].depth + 1;
        child.members = std::move(members);
        const std::size_t id = tree.nodes.size();
        for (node u : child.members)
            owner[u] = id;
        tree.nodes.push_back(std::move(child));
        tree.nodes[parent].children.push_back(id);
    };
    const auto initial = connected_components(g);
    if (initial.size() > 1)
        for (const auto &c : initial)
            add_child(0, c);

    std::vector<double> bc = edge_betweenness(g, workers);
    std::vector<char> seen(n, 0);
    count alive_count = g.num_edges();
    for (count step = 0; step < max_removals && alive_count > 0; ++step) {
        double top = -1;
        for (edge_id e = 0; e < g.num_edges(); ++e)
            if (alive[e])
                top = std::max(top, bc[e]);
        const double cutoff = top - 1e-9 * std::max(1.0, top);
        edge_id chosen = 0;
        for (edge_id e = 0; e < g.num_edges(); ++e)
            if (alive[e] && bc[e] >= cutoff) {
                chosen = e;
                break;
            }
        alive[chosen] = 0;
        --alive_count;
        tree.removed.push_back(chosen);

        const auto [u, v] = g.edge(chosen);
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<node> cu = alive_component(g, alive, u, seen);
        std::vector<node> affected = cu;
        if (!seen[v]) {
            std::vector<node> cv = alive_component(g, alive, v, seen);
            affected.insert(affected.end(), cv.begin(), cv.end());
            std::sort(affected.begin(), affected.end());
            const std::size_t parent = owner[u];
            if (cu.front() < cv.front()) {
                add_child(parent, std::move(cu));
                add_child(parent, std::move(cv));
            } else {
                add_child(parent, std::move(cv));
                add_child(parent, std::move(cu));
            }
        }
        // Betweenness changes only inside the affected component(s).
        for (node x : affected)
            for (edge_id e : g.incident_edges(x))
                bc[e] = 0;
        const auto fresh = betweenness_over(g, alive, affected, workers);
        for (node x : affected)
            for (edge_id e : g.incident_edges(x))
                if (alive[e])
                    bc[e] = fresh[e];
    }

    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        auto &t = tree.nodes[i];
        t.conductance = conductance_or_nan(g, compute_stats(g, t.members));
        if (t.members.size() >= n)
            continue;
        Provenance prov;
        prov.generator = Generator::Dendrogram;
        prov.depth = static_cast<std::int64_t>(t.depth);
        result.pieces.push_back(make_candidate(g, t.members, prov));
    }
    return result;
}

namespace {

void write_subtree(const Graph &g, const Dendrogram &tree, std::size_t id, std::ostream &out) {
    const auto &t = tree.nodes[id];
    if (t.children.empty()) {
        if (t.members.size() == 1) {
            out << g.original(t.members.front());
            return;
        }
        out << '(';
        for (std::size_t i = 0; i < t.members.size(); ++i)
            out << (i ? " " : "") << g.original(t.members[i]);
        out << ')';
        return;
    }
    out << '(';
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i)
            out << ' ';
        write_subtree(g, tree, t.children[i], out);
    }
    out << ')';
}

} // namespace

std::string serialize_dendrogram(const Graph &g, const Dendrogram &tree) {
    std::ostringstream out;
    if (!tree.nodes.empty())
        write_subtree(g, tree, 0, out);
    return out.str();
}

} // namespace ncpkit
