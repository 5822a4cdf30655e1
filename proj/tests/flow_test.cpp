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


#include <gtest/gtest.h>

#include <ncpkit/flow.hpp>

#include "oracles.hpp"

namespace ncpkit {
namespace {

TEST(FlowGTest, testMaxFlowMatchesBruteMinCut) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> cap(0, 9);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 8;
        FlowNetwork net(n, 0, n - 1);
        std::vector<std::vector<capacity>> c(n, std::vector<capacity>(n, 0));
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (rng() % 2) {
                    const capacity a = cap(rng), b = cap(rng);
                    net.add_arc(u, v, a, b);
                    c[u][v] += a;
                    c[v][u] += b;
                }
        capacity best = std::numeric_limits<capacity>::max();
        for (std::uint32_t mask = 0; mask < (1u << (n - 2)); ++mask) {
            std::vector<bool> side(n);
            side[0] = true;
            for (std::size_t i = 0; i + 2 < n; ++i)
                side[i + 1] = (mask >> i) & 1;
            capacity cut = 0;
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    if (side[u] && !side[v])
                        cut += c[u][v];
            best = std::min(best, cut);
        }
        const MaxFlowResult r = max_flow(net);
        EXPECT_EQ(r.flow, best);
        EXPECT_EQ(cut_capacity(net, r.source_side), r.flow);
        EXPECT_TRUE(std::is_sorted(r.source_side.begin(), r.source_side.end()));
        EXPECT_EQ(r.source_side.front(), 0u);
    }
}

TEST(FlowGTest, testMqiAttainsBruteMinimum) {
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 30) {
        const int n = 12;
        const auto e = oracle::no_isolated(n, oracle::erdos_renyi(n, 0.35, rng), rng);
        const oracle::Plain p(n, e);
        const Graph g = oracle::graph_of(n, e);
        std::vector<node> a;
        long vol = 0;
        std::vector<node> order(n);
        std::iota(order.begin(), order.end(), node{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (node u : order)
            if (2 * (vol + p.degree(static_cast<int>(u))) <= p.volume()) {
                a.push_back(u);
                vol += p.degree(static_cast<int>(u));
            }
        std::sort(a.begin(), a.end());
        const Cluster ca = cluster_stats(g, a);
        const Cluster improved = mqi(g, ca);
        std::vector<int> ai(a.begin(), a.end());
        const double brute = oracle::brute_min_quotient_inside(p, ai);
        const double got = static_cast<double>(improved.stats.cut_edges) / static_cast<double>(improved.stats.volume);
        EXPECT_NEAR(got, brute, 1e-12);
        EXPECT_TRUE(std::includes(a.begin(), a.end(), improved.members.begin(), improved.members.end()));
        EXPECT_LE(score(g, improved, ScoreKind::Conductance).value, score(g, ca, ScoreKind::Conductance).value);
        ++checked;
    }
}

TEST(FlowGTest, testMqiBarbell) {
    const Graph g = load_edge_list(oracle::data_path("barbell.txt"));
    const Cluster a = cluster_stats(g, {0, 1, 2, 3, 4, 5});
    const Cluster out = mqi(g, a);
    EXPECT_EQ(out.members, (std::vector<node>{0, 1, 2, 3, 4}));
    EXPECT_THROW(mqi(g, cluster_stats(g, {})), ClusterError);
}

TEST(FlowGTest, testBisectPartitions) {
    for (const char *file : {"karate.txt", "dolphins.txt", "football.txt"}) {
        const Graph g = load_edge_list(oracle::data_path(file));
        const auto p = oracle::plain_of(g);
        const Bisection b = bisect(g, 3);
        EXPECT_EQ(b.side_a.size() + b.side_b.size(), g.num_nodes());
        EXPECT_LE(b.side_a.stats.volume, b.side_b.stats.volume);
        const auto in = oracle::members_to_set(p.n, b.side_a.members);
        EXPECT_EQ(static_cast<long>(b.cut), oracle::stats_of(p, in).cut);
        const double imbalance = std::abs(static_cast<double>(b.side_a.stats.volume) -
                                          static_cast<double>(b.side_b.stats.volume)) /
                                 static_cast<double>(g.total_volume());
        EXPECT_NEAR(b.imbalance, imbalance, 1e-15);
        EXPECT_EQ(b.within_tolerance, imbalance <= 0.02 + 1e-15);
        EXPECT_LT(b.imbalance, 0.1) << file;
    }
}

TEST(FlowGTest, testBisectBarbellCutsBridge) {
    const Graph g = load_edge_list(oracle::data_path("barbell.txt"));
    const Bisection b = bisect(g, 1);
    EXPECT_EQ(b.cut, 1u);
    EXPECT_EQ(b.side_a.members, (std::vector<node>{0, 1, 2, 3, 4}));
}

TEST(FlowGTest, testSampleDeterministicAcrossWorkers) {
    const Graph g = load_edge_list(oracle::data_path("football.txt"));
    FlowSampleOptions opts;
    opts.min_size = 10;
    const auto a = metis_mqi_sample(g, 6, 42, opts, 1);
    const auto b = metis_mqi_sample(g, 6, 42, opts, 4);
    ASSERT_EQ(a.size(), b.size());
    ASSERT_FALSE(a.empty());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].nodes.sorted(), b[i].nodes.sorted());
        EXPECT_EQ(a[i].provenance.generator, Generator::Mqi);
        EXPECT_GE(a[i].provenance.trial, 0);
        EXPECT_GE(a[i].provenance.depth, 0);
    }
}

} // namespace
} // namespace ncpkit
