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

#include <sstream>

#include <ncpkit/graph.hpp>

#include "oracles.hpp"

namespace ncpkit {
namespace {

Graph parse(const std::string &text, LoadOptions options = {}) {
    std::istringstream in(text);
    return load_edge_list(in, options);
}

TEST(GraphGTest, testLoadTriangle) {
    const Graph g = parse("0 1\n1 2\n2 0\n");
    EXPECT_EQ(g.num_nodes(), 3u);
    EXPECT_EQ(g.num_edges(), 3u);
    EXPECT_EQ(g.total_volume(), 6u);
    EXPECT_TRUE(is_connected(g));
}

TEST(GraphGTest, testLoadDropsSelfLoopsAndDuplicates) {
    const Graph g = parse("# comment\n5 7\n7 5\n5 5\n7 9\n");
    EXPECT_EQ(g.num_nodes(), 3u);
    EXPECT_EQ(g.num_edges(), 2u);
    EXPECT_EQ(g.original(0), 5);
    EXPECT_EQ(g.original(2), 9);
    EXPECT_EQ(g.find_original(7), std::optional<node>(1));
    EXPECT_FALSE(g.find_original(6).has_value());
}

TEST(GraphGTest, testLoadErrorsCarryLine) {
    try {
        parse("0 1\n1 x\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("# only a comment\n"), ParseError);
}

TEST(GraphGTest, testKarateCounts) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    EXPECT_EQ(g.num_nodes(), 34u);
    EXPECT_EQ(g.num_edges(), 78u);
    const Graph d = load_edge_list(oracle::data_path("dolphins.txt"));
    EXPECT_EQ(d.num_nodes(), 62u);
    EXPECT_EQ(d.num_edges(), 159u);
    const Graph f = load_edge_list(oracle::data_path("football.txt"));
    EXPECT_EQ(f.num_nodes(), 115u);
    EXPECT_EQ(f.num_edges(), 613u);
}

TEST(GraphGTest, testCanonicalEdgeIds) {
    const Graph g = parse("3 1\n0 2\n1 0\n2 3\n");
    for (edge_id e = 0; e + 1 < g.num_edges(); ++e)
        EXPECT_LT(g.edge(e), g.edge(e + 1));
    for (node u = 0; u < g.num_nodes(); ++u) {
        const auto nb = g.neighbors(u);
        const auto ids = g.incident_edges(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            const auto [a, b] = g.edge(ids[i]);
            EXPECT_EQ(std::min(u, nb[i]), a);
            EXPECT_EQ(std::max(u, nb[i]), b);
        }
    }
}

TEST(GraphGTest, testComponentsAndLargest) {
    const Graph g = parse("10 11\n11 12\n20 21\n30 31\n31 32\n32 30\n");
    const auto comps = connected_components(g);
    ASSERT_EQ(comps.size(), 3u);
    EXPECT_EQ(comps[0].front(), 0u);
    EXPECT_FALSE(is_connected(g));
    const Graph lcc = largest_connected_component(g);
    EXPECT_EQ(lcc.num_nodes(), 3u);
    EXPECT_EQ(lcc.original(0), 10);
    const Graph kept = parse("10 11\n11 12\n20 21\n30 31\n31 32\n32 30\n", LoadOptions{true});
    EXPECT_EQ(kept.num_nodes(), 3u);
}

TEST(GraphGTest, testInducedSubgraph) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const std::vector<node> members{0, 1, 2, 3, 7, 13};
    const Graph h = induced_subgraph(g, members);
    EXPECT_EQ(h.num_nodes(), members.size());
    count edges = 0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            edges += g.has_edge(members[i], members[j]);
    EXPECT_EQ(h.num_edges(), edges);
    EXPECT_EQ(h.original(4), g.original(7));
}

TEST(GraphGTest, testClusterStatsMatchOracle) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto e = oracle::erdos_renyi(12, 0.3, rng);
        const oracle::Plain p(12, e);
        const Graph g = oracle::graph_of(12, e);
        std::vector<node> members;
        for (node u = 0; u < 12; ++u)
            if (rng() & 1)
                members.push_back(u);
        const Cluster c = cluster_stats(g, members);
        const auto s = oracle::stats_of(p, oracle::members_to_set(12, members));
        EXPECT_EQ(static_cast<long>(c.stats.size), s.size);
        EXPECT_EQ(static_cast<long>(c.stats.internal_edges), s.internal);
        EXPECT_EQ(static_cast<long>(c.stats.cut_edges), s.cut);
        EXPECT_EQ(static_cast<long>(c.stats.volume), s.volume);
    }
}

TEST(GraphGTest, testClusterErrors) {
    const Graph g = parse("0 1\n1 2\n");
    EXPECT_THROW(cluster_stats(g, {0, 0}), ClusterError);
    EXPECT_THROW(cluster_stats(g, {5}), ClusterError);
    EXPECT_EQ(complement(g, std::vector<node>{1}), (std::vector<node>{0, 2}));
}

TEST(GraphGTest, testSaveRoundTrip) {
    const Graph g = parse("4 8\n8 15\n15 4\n16 23\n");
    std::ostringstream out;
    save_edge_list(out, g);
    const Graph h = parse(out.str());
    EXPECT_EQ(h.edges(), g.edges());
    EXPECT_EQ(h.original_ids(), g.original_ids());
}

} // namespace
} // namespace ncpkit
