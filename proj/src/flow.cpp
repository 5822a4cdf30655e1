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

#include <ncpkit/flow.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <ncpkit/parallel.hpp>

namespace ncpkit {

FlowNetwork::FlowNetwork(std::size_t node_count, std::size_t source, std::size_t sink)
    : out_(node_count), source_(source), sink_(sink) {
    if (source >= node_count || sink >= node_count)
        throw std::invalid_argument("source or sink out of range");
    if (source == sink)
        throw std::invalid_argument("source and sink coincide");
}

std::size_t FlowNetwork::add_arc(std::size_t u, std::size_t v, capacity cap, capacity reverse_cap) {
    if (u >= out_.size() || v >= out_.size())
        throw std::invalid_argument("arc endpoint out of range");
    if (cap < 0 || reverse_cap < 0)
        throw std::invalid_argument("negative capacity");
    const std::size_t index = arcs_.size();
    arcs_.push_back({static_cast<std::uint32_t>(v), cap});
    arcs_.push_back({static_cast<std::uint32_t>(u), reverse_cap});
    out_[u].push_back(static_cast<std::uint32_t>(index));
    out_[v].push_back(static_cast<std::uint32_t>(index + 1));
    return index;
}

capacity cut_capacity(const FlowNetwork &net, const std::vector<std::uint32_t> &side) {
    std::vector<char> in(net.node_count(), 0);
    for (auto u : side)
        in[u] = 1;
    capacity total = 0;
    for (auto u : side)
        for (auto a : net.out_arcs(u))
            if (!in[net.arcs()[a].head])
                total += net.arcs()[a].cap;
    return total;
}

namespace {

class Dinic {
public:
    explicit Dinic(const FlowNetwork &net)
        : net_(net), residual_(net.arcs().size()), level_(net.node_count()), next_(net.node_count()) {
        for (std::size_t a = 0; a < residual_.size(); ++a)
            residual_[a] = net.arcs()[a].cap;
    }

    capacity run() {
        capacity flow = 0;
        while (build_levels()) {
            std::fill(next_.begin(), next_.end(), 0);
            for (;;) {
                const capacity pushed = augment(net_.source(), std::numeric_limits<capacity>::max());
                if (pushed == 0)
                    break;
                flow += pushed;
            }
        }
        return flow;
    }

    std::vector<std::uint32_t> reachable() const {
        std::vector<char> seen(net_.node_count(), 0);
        std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(net_.source())};
        seen[net_.source()] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (auto a : net_.out_arcs(queue[head])) {
                const auto v = net_.arcs()[a].head;
                if (residual_[a] > 0 && !seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
            }
        std::sort(queue.begin(), queue.end());
        return queue;
    }

private:
    bool build_levels() {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(net_.source())};
        level_[net_.source()] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto u = queue[head];
            for (auto a : net_.out_arcs(u)) {
                const auto v = net_.arcs()[a].head;
                if (residual_[a] > 0 && level_[v] < 0) {
                    level_[v] = level_[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        return level_[net_.sink()] >= 0;
    }

    capacity augment(std::size_t u, capacity limit) {
        if (u == net_.sink())
            return limit;
        const auto &out = net_.out_arcs(u);
        for (; next_[u] < out.size(); ++next_[u]) {
            const auto a = out[next_[u]];
            const auto v = net_.arcs()[a].head;
            if (residual_[a] <= 0 || level_[v] != level_[u] + 1)
                continue;
            const capacity pushed = augment(v, std::min(limit, residual_[a]));
            if (pushed > 0) {
                residual_[a] -= pushed;
                residual_[a ^ 1] += pushed;
                return pushed;
            }
        }
        return 0;
    }

    const FlowNetwork &net_;
    std::vector<capacity> residual_;
    std::vector<int> level_;
    std::vector<std::size_t> next_;
};

} // namespace

MaxFlowResult max_flow(const FlowNetwork &net) {
    Dinic solver(net);
    MaxFlowResult result;
    result.flow = solver.run();
    result.source_side = solver.reachable();
    if (cut_capacity(net, result.source_side) != result.flow)
        throw std::logic_error("max-flow certificate mismatch");
    return result;
}

namespace {

// Cross-multiplied conductance comparison: phi(a) < phi(b).
bool lower_conductance(const Graph &g, const ClusterStats &a, const ClusterStats &b) {
    const count total = g.total_volume();
    const auto den = [&](const ClusterStats &s) { return std::min(s.volume, total - s.volume); };
    const count da = den(a), db = den(b);
    if (da == 0 || db == 0)
        return db == 0 && da != 0;
    return static_cast<unsigned __int128>(a.cut_edges) * db < static_cast<unsigned __int128>(b.cut_edges) * da;
}

} // namespace

Cluster mqi(const Graph &g, const Cluster &a) {
    if (a.members.empty())
        throw ClusterError("mqi on an empty cluster");
    const auto total = static_cast<long double>(g.total_volume());
    if (total * total >= static_cast<long double>(std::int64_t{1} << 62))
        throw std::overflow_error("graph volume too large for integer flow capacities");

    std::vector<node> current = a.members;
    ClusterStats stats = a.stats;
    while (stats.cut_edges > 0 && current.size() > 1) {
        const auto k = current.size();
        const auto c_a = static_cast<capacity>(stats.cut_edges);
        const auto vol_a = static_cast<capacity>(stats.volume);
        FlowNetwork net(k + 2, 0, 1);
        auto index_of = [&](node v) -> std::int64_t {
            auto it = std::lower_bound(current.begin(), current.end(), v);
            return (it != current.end() && *it == v) ? it - current.begin() : -1;
        };
        for (std::size_t i = 0; i < k; ++i) {
            const node u = current[i];
            net.add_arc(0, i + 2, c_a * static_cast<capacity>(g.degree(u)));
            capacity outside = 0;
            for (node v : g.neighbors(u)) {
                const auto j = index_of(v);
                if (j < 0)
                    ++outside;
                else if (v > u)
                    net.add_arc(i + 2, static_cast<std::size_t>(j) + 2, vol_a, vol_a);
            }
            if (outside > 0)
                net.add_arc(i + 2, 1, vol_a * outside);
        }
        const MaxFlowResult flow = max_flow(net);
        if (flow.flow >= c_a * vol_a)
            break;
        std::vector<node> improved;
        for (auto x : flow.source_side)
            if (x >= 2)
                improved.push_back(current[x - 2]);
        const ClusterStats next = compute_stats(g, improved);
        // Strict improvement of c / vol, in integers.
        if (static_cast<unsigned __int128>(next.cut_edges) * stats.volume >=
            static_cast<unsigned __int128>(stats.cut_edges) * next.volume)
            throw std::logic_error("mqi step did not improve the quotient");
        current = std::move(improved);
        stats = next;
    }
    if (2 * a.stats.volume > g.total_volume() && lower_conductance(g, a.stats, stats))
        return a;
    return {std::move(current), stats};
}

namespace {

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct TrialContext {
    const Graph &g;
    const FlowSampleOptions &options;
    std::int64_t max_depth;
    std::uint64_t trial_seed;
    std::size_t trial;
    std::uint64_t counter = 0;
    std::vector<ScoredCluster> out;

    std::uint64_t next_seed() { return mix_seed(trial_seed ^ mix_seed(++counter)); }

    void emit(const Cluster &side, std::int64_t depth) {
        Cluster improved = mqi(g, side);
        Provenance prov;
        prov.generator = Generator::Mqi;
        prov.run_seed = static_cast<std::int64_t>(trial_seed & 0x7fffffffffffffffULL);
        prov.trial = static_cast<std::int64_t>(trial);
        prov.depth = depth;
        out.push_back(make_candidate(g, std::move(improved.members), prov));
    }

    void recurse(const std::vector<node> &side, std::int64_t depth) {
        if (depth >= max_depth || side.size() <= options.min_size || side.size() < 2)
            return;
        const Graph h = induced_subgraph(g, side);
        if (h.num_edges() == 0)
            return;
        const Bisection b = bisect(h, next_seed(), options.tolerance);
        for (const Cluster *child : {&b.side_a, &b.side_b}) {
            std::vector<node> global;
            global.reserve(child->members.size());
            for (node x : child->members)
                global.push_back(side[x]);
            emit(cluster_stats(g, global), depth + 1);
            recurse(global, depth + 1);
        }
    }
};

} // namespace

std::vector<ScoredCluster> metis_mqi_sample(const Graph &g, std::size_t trials, std::uint64_t seed,
                                            const FlowSampleOptions &options, unsigned workers) {
    if (trials == 0)
        throw std::invalid_argument("trials must be positive");
    if (g.num_nodes() < 2 || g.num_edges() == 0)
        return {};
    std::int64_t max_depth = options.max_depth;
    if (max_depth < 0) {
        const double ratio = static_cast<double>(g.num_nodes()) / static_cast<double>(std::max<count>(1, options.min_size));
        max_depth = ratio <= 1 ? 0 : static_cast<std::int64_t>(std::ceil(std::log2(ratio)));
    }
    return parallel_concat<ScoredCluster>(trials, workers, [&](std::size_t t) {
        TrialContext ctx{g, options, max_depth, mix_seed(seed ^ mix_seed(t + 1)), t, 0, {}};
        const Bisection b = bisect(g, ctx.next_seed(), options.tolerance);
        ctx.emit(b.side_a, 0);
        ctx.recurse(b.side_a.members, 0);
        ctx.recurse(b.side_b.members, 0);
        return std::move(ctx.out);
    });
}

} // namespace ncpkit
