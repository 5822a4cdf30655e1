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
#include <numeric>
#include <random>
#include <stdexcept>

#include <ncpkit/linalg.hpp>

namespace ncpkit {

namespace {

using weight = std::int64_t;

constexpr std::size_t kCoarsestSize = 64;

struct WeightedGraph {
    std::vector<std::size_t> offsets{0};
    std::vector<std::uint32_t> targets;
    std::vector<weight> weights;
    std::vector<weight> node_weight; // volume in the input graph

    std::size_t size() const { return node_weight.size(); }
    weight total() const { return std::accumulate(node_weight.begin(), node_weight.end(), weight{0}); }
};

WeightedGraph from_graph(const Graph &g) {
    WeightedGraph w;
    w.offsets.resize(g.num_nodes() + 1);
    for (node u = 0; u < g.num_nodes(); ++u) {
        for (node v : g.neighbors(u)) {
            w.targets.push_back(v);
            w.weights.push_back(1);
        }
        w.offsets[u + 1] = w.targets.size();
        w.node_weight.push_back(static_cast<weight>(g.degree(u)));
    }
    return w;
}

// Heavy-edge matching; returns the coarse graph and the fine-to-coarse map.
std::pair<WeightedGraph, std::vector<std::uint32_t>> coarsen(const WeightedGraph &fine, std::mt19937_64 &rng) {
    const std::size_t n = fine.size();
    std::vector<std::uint32_t> order(n), rank(n);
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint32_t i = 0; i < n; ++i)
        rank[order[i]] = i;
    const weight cap = std::max<weight>(fine.total() / 16, 1);

    constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> mate(n, kNone);
    for (auto u : order) {
        if (mate[u] != kNone)
            continue;
        std::uint32_t best = kNone;
        weight best_w = 0;
        for (std::size_t a = fine.offsets[u]; a < fine.offsets[u + 1]; ++a) {
            const auto v = fine.targets[a];
            if (v == u || mate[v] != kNone || fine.node_weight[u] + fine.node_weight[v] > cap)
                continue;
            const weight w = fine.weights[a];
            if (best == kNone || w > best_w || (w == best_w && rank[v] < rank[best])) {
                best = v;
                best_w = w;
            }
        }
        mate[u] = best == kNone ? u : best;
        if (best != kNone)
            mate[best] = u;
    }

    std::vector<std::uint32_t> map(n, kNone);
    std::uint32_t next = 0;
    for (auto u : order) {
        if (map[u] != kNone)
            continue;
        map[u] = next;
        map[mate[u]] = next;
        ++next;
    }

    WeightedGraph coarse;
    coarse.node_weight.assign(next, 0);
    std::vector<std::vector<std::uint32_t>> members(next);
    for (std::uint32_t u = 0; u < n; ++u) {
        coarse.node_weight[map[u]] += fine.node_weight[u];
        members[map[u]].push_back(u);
    }
    std::vector<std::int64_t> slot(next, -1);
    coarse.offsets.assign(1, 0);
    for (std::uint32_t c = 0; c < next; ++c) {
        const std::size_t begin = coarse.targets.size();
        for (auto u : members[c])
            for (std::size_t a = fine.offsets[u]; a < fine.offsets[u + 1]; ++a) {
                const auto cv = map[fine.targets[a]];
                if (cv == c)
                    continue;
                if (slot[cv] < 0) {
                    slot[cv] = static_cast<std::int64_t>(coarse.targets.size());
                    coarse.targets.push_back(cv);
                    coarse.weights.push_back(0);
                }
                coarse.weights[static_cast<std::size_t>(slot[cv])] += fine.weights[a];
            }
        for (std::size_t a = begin; a < coarse.targets.size(); ++a)
            slot[coarse.targets[a]] = -1;
        coarse.offsets.push_back(coarse.targets.size());
    }
    return {std::move(coarse), std::move(map)};
}

struct Balance {
    weight total;
    double allowed;
    bool ok(weight diff) const { return static_cast<double>(std::llabs(diff)) <= allowed; }
};

// side[u] in {0, 1}; diff = vol(0) - vol(1).
weight volume_difference(const WeightedGraph &w, const std::vector<char> &side) {
    weight diff = 0;
    for (std::size_t u = 0; u < w.size(); ++u)
        diff += side[u] ? -w.node_weight[u] : w.node_weight[u];
    return diff;
}

// Cut weight change when u switches sides (negative is better).
weight move_delta(const WeightedGraph &w, const std::vector<char> &side, std::size_t u) {
    weight same = 0, other = 0;
    for (std::size_t a = w.offsets[u]; a < w.offsets[u + 1]; ++a)
        (side[w.targets[a]] == side[u] ? same : other) += w.weights[a];
    return same - other;
}

weight shifted(const WeightedGraph &w, const std::vector<char> &side, std::size_t u, weight diff) {
    return side[u] ? diff + 2 * w.node_weight[u] : diff - 2 * w.node_weight[u];
}

void rebalance(const WeightedGraph &w, std::vector<char> &side, const Balance &bal, std::mt19937_64 &rng) {
    weight diff = volume_difference(w, side);
    std::vector<std::uint32_t> order(w.size());
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t moves = 0; !bal.ok(diff) && moves < w.size(); ++moves) {
        const char heavy = diff > 0 ? 0 : 1;
        std::int64_t best = -1;
        weight best_delta = 0;
        for (auto u : order) {
            if (side[u] != heavy || w.node_weight[u] == 0)
                continue;
            if (std::llabs(shifted(w, side, u, diff)) >= std::llabs(diff))
                continue;
            const weight delta = move_delta(w, side, u);
            if (best < 0 || delta < best_delta) {
                best = u;
                best_delta = delta;
            }
        }
        if (best < 0)
            break;
        diff = shifted(w, side, static_cast<std::size_t>(best), diff);
        side[static_cast<std::size_t>(best)] ^= 1;
    }
}

void refine(const WeightedGraph &w, std::vector<char> &side, const Balance &bal, std::mt19937_64 &rng) {
    weight diff = volume_difference(w, side);
    std::vector<std::uint32_t> order(w.size());
    std::iota(order.begin(), order.end(), 0u);
    for (int pass = 0; pass < 12; ++pass) {
        std::shuffle(order.begin(), order.end(), rng);
        bool moved = false;
        for (auto u : order) {
            const weight delta = move_delta(w, side, u);
            if (delta >= 0)
                continue;
            const weight after = shifted(w, side, u, diff);
            if (!bal.ok(after) && !(std::llabs(after) <= std::llabs(diff)))
                continue;
            side[u] ^= 1;
            diff = after;
            moved = true;
        }
        if (!moved)
            break;
    }
}

// Fiedler ordering of the coarsest graph, split at the prefix that meets the
// balance with the smallest cut (or, failing that, the most balanced prefix).
std::vector<char> initial_split(const WeightedGraph &w, const Balance &bal, std::mt19937_64 &rng) {
    const std::size_t n = w.size();
    std::vector<char> side(n, 1);
    if (n < 2) {
        side.assign(n, 0);
        return side;
    }
    std::vector<double> mass(n), inv_sqrt(n), wdeg(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        mass[u] = static_cast<double>(std::max<weight>(w.node_weight[u], 1));
        inv_sqrt[u] = 1.0 / std::sqrt(mass[u]);
        for (std::size_t a = w.offsets[u]; a < w.offsets[u + 1]; ++a)
            wdeg[u] += static_cast<double>(w.weights[a]);
    }
    std::vector<double> q(n);
    double qn = 0;
    for (std::size_t u = 0; u < n; ++u) {
        q[u] = std::sqrt(mass[u]);
        qn += mass[u];
    }
    for (auto &v : q)
        v /= std::sqrt(qn);
    auto op = [&](std::span<const double> x, std::span<double> y) {
        for (std::size_t u = 0; u < n; ++u) {
            double acc = wdeg[u] * x[u] * inv_sqrt[u];
            for (std::size_t a = w.offsets[u]; a < w.offsets[u + 1]; ++a)
                acc -= static_cast<double>(w.weights[a]) * x[w.targets[a]] * inv_sqrt[w.targets[a]];
            y[u] = acc * inv_sqrt[u];
        }
    };
    linalg::EigenOptions eo;
    eo.tolerance = 1e-9;
    eo.max_restarts = 300;
    eo.seed = rng();
    std::vector<std::vector<double>> deflate{q};
    const auto pair = linalg::smallest_eigenpair(n, op, deflate, eo);

    std::vector<std::uint32_t> order(n), tiebreak(n);
    std::iota(order.begin(), order.end(), 0u);
    std::iota(tiebreak.begin(), tiebreak.end(), 0u);
    std::shuffle(tiebreak.begin(), tiebreak.end(), rng);
    std::vector<double> key(n);
    for (std::size_t u = 0; u < n; ++u)
        key[u] = pair.vector[u] * inv_sqrt[u];
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        if (key[a] != key[b])
            return key[a] < key[b];
        return tiebreak[a] < tiebreak[b];
    });
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[order[i]] = i;

    weight vol = 0, cut = 0;
    std::size_t best = 0;
    bool best_ok = false;
    weight best_cut = 0, best_diff = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto u = order[i];
        vol += w.node_weight[u];
        weight back = 0;
        for (std::size_t a = w.offsets[u]; a < w.offsets[u + 1]; ++a)
            if (pos[w.targets[a]] < i)
                back += w.weights[a];
        cut += static_cast<weight>(wdeg[u]) - 2 * back;
        const weight diff = 2 * vol - bal.total;
        const bool ok = bal.ok(diff);
        const bool better = i == 0 || (ok && !best_ok) ||
                            (ok == best_ok && (ok ? cut < best_cut : std::llabs(diff) < std::llabs(best_diff)));
        if (better) {
            best = i;
            best_ok = ok;
            best_cut = cut;
            best_diff = diff;
        }
    }
    for (std::size_t i = 0; i <= best; ++i)
        side[order[i]] = 0;
    return side;
}

} // namespace

Bisection bisect(const Graph &g, std::uint64_t seed, double tolerance) {
    if (g.num_nodes() < 2)
        throw std::invalid_argument("bisect needs at least two nodes");
    if (!(tolerance >= 0))
        throw std::invalid_argument("tolerance must be non-negative");
    std::mt19937_64 rng(seed);

    std::vector<WeightedGraph> levels;
    std::vector<std::vector<std::uint32_t>> maps;
    levels.push_back(from_graph(g));
    while (levels.back().size() > kCoarsestSize) {
        auto [coarse, map] = coarsen(levels.back(), rng);
        if (coarse.size() * 20 > levels.back().size() * 19)
            break;
        levels.push_back(std::move(coarse));
        maps.push_back(std::move(map));
    }

    const Balance bal{static_cast<weight>(g.total_volume()), tolerance * static_cast<double>(g.total_volume())};
    std::vector<char> side = initial_split(levels.back(), bal, rng);
    rebalance(levels.back(), side, bal, rng);
    refine(levels.back(), side, bal, rng);
    for (std::size_t level = levels.size() - 1; level-- > 0;) {
        const auto &map = maps[level];
        std::vector<char> fine(levels[level].size());
        for (std::size_t u = 0; u < fine.size(); ++u)
            fine[u] = side[map[u]];
        side = std::move(fine);
        rebalance(levels[level], side, bal, rng);
        refine(levels[level], side, bal, rng);
    }

    std::vector<node> a, b;
    for (node u = 0; u < g.num_nodes(); ++u)
        (side[u] ? b : a).push_back(u);
    if (a.empty() || b.empty()) {
        // Degenerate split (e.g. an edgeless graph); peel off one node.
        auto &big = a.empty() ? b : a;
        auto &small = a.empty() ? a : b;
        small.push_back(big.back());
        big.pop_back();
    }
    Bisection result;
    result.side_a = cluster_stats(g, std::move(a));
    result.side_b = cluster_stats(g, std::move(b));
    const auto &sa = result.side_a.stats, &sb = result.side_b.stats;
    if (sb.volume < sa.volume || (sb.volume == sa.volume && result.side_b.members.front() == 0))
        std::swap(result.side_a, result.side_b);
    result.cut = result.side_a.stats.cut_edges;
    const double total = static_cast<double>(std::max<count>(g.total_volume(), 1));
    result.imbalance =
        std::abs(static_cast<double>(sa.volume) - static_cast<double>(sb.volume)) / total;
    result.within_tolerance = result.imbalance <= tolerance + 1e-12;
    return result;
}

} // namespace ncpkit
