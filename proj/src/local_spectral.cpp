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

#include <ncpkit/local_spectral.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <ncpkit/parallel.hpp>

namespace ncpkit {

double DiffusionVector::support_mass() const {
    double s = 0;
    for (const auto &[u, v] : support)
        s += v;
    return s;
}

double DiffusionVector::residual_mass() const {
    double s = 0;
    for (const auto &[u, v] : residual)
        s += v;
    return s;
}

namespace {

SparseVector to_sorted(const std::unordered_map<node, double> &m) {
    SparseVector out;
    out.reserve(m.size());
    for (const auto &[u, v] : m)
        if (v > 0)
            out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

DiffusionVector ppr_push(const Graph &g, node seed_node, double alpha, double epsilon,
                         const PushObserver &observer) {
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("alpha must lie in (0, 1)");
    if (!(epsilon > 0))
        throw std::invalid_argument("epsilon must be positive");
    if (!g.valid(seed_node))
        throw std::invalid_argument("seed node out of range");

    std::unordered_map<node, double> p, r;
    std::unordered_set<node> queued;
    std::deque<node> queue;
    r[seed_node] = 1.0;

    auto over = [&](node u, double mass) { return mass >= epsilon * static_cast<double>(g.degree(u)); };
    auto mass_of = [](const std::unordered_map<node, double> &m) {
        double s = 0;
        for (const auto &[u, v] : m)
            s += v;
        return s;
    };

    if (over(seed_node, 1.0)) {
        queue.push_back(seed_node);
        queued.insert(seed_node);
    }

    DiffusionVector dv;
    dv.seed_node = seed_node;
    dv.alpha = alpha;
    dv.epsilon = epsilon;
    while (!queue.empty()) {
        const node u = queue.front();
        queue.pop_front();
        queued.erase(u);
        const double ru = r[u];
        if (!over(u, ru) || ru <= 0)
            continue;
        const count d = g.degree(u);
        ++dv.pushes;
        if (d == 0) {
            p[u] += ru;
            r[u] = 0;
        } else {
            p[u] += alpha * ru;
            const double keep = (1.0 - alpha) * ru / 2.0;
            r[u] = keep;
            const double share = keep / static_cast<double>(d);
            for (node v : g.neighbors(u)) {
                double &rv = r[v];
                rv += share;
                if (over(v, rv) && queued.insert(v).second)
                    queue.push_back(v);
            }
            if (over(u, keep) && queued.insert(u).second)
                queue.push_back(u);
        }
        if (observer)
            observer(mass_of(p), mass_of(r));
    }
    dv.support = to_sorted(p);
    dv.residual = to_sorted(r);
    return dv;
}

Cluster SweepResult::prefix_cluster(std::size_t index) const {
    std::vector<node> members(ordering->begin(), ordering->begin() + static_cast<std::ptrdiff_t>(index + 1));
    std::sort(members.begin(), members.end());
    return {std::move(members), prefixes[index].stats};
}

namespace {

double prefix_conductance(const Graph &g, const ClusterStats &s) {
    if (s.size == 0 || s.size >= g.num_nodes() || s.volume == 0 || s.volume >= g.total_volume())
        return std::numeric_limits<double>::quiet_NaN();
    return score_from_stats(g, s, ScoreKind::Conductance);
}

struct UnionFind {
    std::vector<node> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), node{0}); }
    node find(node x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(node a, node b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

} // namespace

SweepResult sweep(const Graph &g, const DiffusionVector &dv) {
    if (dv.support.empty())
        throw std::invalid_argument("sweep over an empty support");
    struct Entry {
        double key;
        node u;
    };
    std::vector<Entry> entries;
    entries.reserve(dv.support.size());
    for (const auto &[u, p] : dv.support) {
        const count d = g.degree(u);
        entries.push_back({d == 0 ? std::numeric_limits<double>::infinity() : p / static_cast<double>(d), u});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
        if (a.key != b.key)
            return a.key > b.key;
        return a.u < b.u;
    });

    auto ordering = std::make_shared<std::vector<node>>();
    ordering->reserve(entries.size());
    for (const auto &e : entries)
        ordering->push_back(e.u);

    // Positions in the ordering; local union-find over them.
    std::unordered_map<node, std::uint32_t> position;
    position.reserve(entries.size() * 2);
    for (std::uint32_t i = 0; i < ordering->size(); ++i)
        position.emplace((*ordering)[i], i);

    SweepResult result;
    result.prefixes.reserve(ordering->size());
    UnionFind uf(ordering->size());
    ClusterStats s;
    std::size_t components = 0;
    double best = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (std::uint32_t i = 0; i < ordering->size(); ++i) {
        const node u = (*ordering)[i];
        count inside = 0;
        ++components;
        for (node v : g.neighbors(u)) {
            auto it = position.find(v);
            if (it != position.end() && it->second < i) {
                ++inside;
                components -= uf.unite(i, it->second);
            }
        }
        s.size += 1;
        s.internal_edges += inside;
        s.volume += g.degree(u);
        s.cut_edges = s.cut_edges + g.degree(u) - 2 * inside;
        SweepPrefix prefix{s.size, s, prefix_conductance(g, s), components == 1};
        if (prefix.connected && !std::isnan(prefix.conductance) && prefix.conductance < best) {
            best = prefix.conductance;
            result.best_index = i;
            have_best = true;
        }
        result.prefixes.push_back(prefix);
    }
    if (!have_best)
        result.best_index = 0;
    result.ordering = std::move(ordering);
    return result;
}

LocalSpectralParams LocalSpectralParams::defaults(const Graph &g) {
    LocalSpectralParams params;
    params.alphas = {0.01, 0.05, 0.1, 0.2, 0.5};
    const double half = static_cast<double>(g.total_volume()) / 2.0;
    if (half <= 0) {
        params.epsilons = {1.0};
        return params;
    }
    for (double t = 10; t < half; t *= 10)
        params.epsilons.push_back(1.0 / (10.0 * t));
    params.epsilons.push_back(1.0 / (10.0 * half));
    return params;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-independent fingerprint of a node set, maintained incrementally.
struct SetKey {
    count size, volume, cut;
    std::uint64_t h1, h2;
    bool operator==(const SetKey &) const = default;
};

struct SetKeyHash {
    std::size_t operator()(const SetKey &k) const { return static_cast<std::size_t>(k.h1 ^ mix(k.h2 + k.size)); }
};

} // namespace

std::vector<ScoredCluster> local_cluster(const Graph &g, node seed_node, const LocalSpectralParams &params) {
    std::vector<ScoredCluster> out;
    std::unordered_set<SetKey, SetKeyHash> seen;
    for (double alpha : params.alphas) {
        for (double epsilon : params.epsilons) {
            const DiffusionVector dv = ppr_push(g, seed_node, alpha, epsilon);
            if (dv.support.empty())
                continue;
            const SweepResult sr = sweep(g, dv);
            std::uint64_t h1 = 0, h2 = 0;
            for (std::size_t i = 0; i < sr.prefixes.size(); ++i) {
                const node u = (*sr.ordering)[i];
                h1 += mix(u);
                h2 += mix(static_cast<std::uint64_t>(u) ^ 0x5bd1e995ULL);
                const SweepPrefix &pre = sr.prefixes[i];
                if (!pre.connected || (pre.k >= g.num_nodes() && g.num_nodes() > 1))
                    continue;
                if (!seen.insert({pre.k, pre.stats.volume, pre.stats.cut_edges, h1, h2}).second)
                    continue;
                ScoredCluster c;
                c.nodes = NodeSet(sr.ordering, i + 1);
                c.stats = pre.stats;
                c.connected = true;
                c.provenance.generator = Generator::LocalSpectral;
                c.provenance.seed_node = seed_node;
                c.provenance.alpha = alpha;
                c.provenance.epsilon = epsilon;
                c.scores[static_cast<std::size_t>(ScoreKind::Conductance)] = pre.conductance;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

std::vector<node> select_seeds(const Graph &g, count sample, std::uint64_t seed) {
    const count n = g.num_nodes();
    std::vector<node> all(n);
    std::iota(all.begin(), all.end(), node{0});
    if (sample == 0 || sample >= n)
        return all;
    std::mt19937_64 rng(seed);
    std::vector<node> chosen;
    chosen.reserve(sample);
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), static_cast<std::ptrdiff_t>(sample), rng);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::vector<ScoredCluster> local_spectral_sample(const Graph &g, const std::vector<node> &seeds,
                                                 const LocalSpectralParams &params, unsigned workers) {
    return parallel_concat<ScoredCluster>(seeds.size(), workers,
                                          [&](std::size_t i) { return local_cluster(g, seeds[i], params); });
}

} // namespace ncpkit
