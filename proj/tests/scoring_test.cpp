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

#include <ncpkit/scoring.hpp>

#include "oracles.hpp"

namespace ncpkit {
namespace {

double value(const Graph &g, std::vector<node> members, ScoreKind kind) {
    return score(g, cluster_stats(g, std::move(members)), kind).value;
}

std::vector<node> range(node a, node b) {
    std::vector<node> out;
    for (node u = a; u < b; ++u)
        out.push_back(u);
    return out;
}

TEST(ScoringGTest, testBarbellK5) {
    const Graph g = load_edge_list(oracle::data_path("barbell.txt"));
    const auto k5 = range(0, 5);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::Conductance), 1.0 / 21.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::Expansion), 1.0 / 5.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::CutRatio), 1.0 / 25.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::MaxODF), 1.0 / 5.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::AvgODF), 1.0 / 25.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::FlakeODF), 0.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::InternalDensity), 0.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::Volume), 21.0);
    EXPECT_DOUBLE_EQ(value(g, k5, ScoreKind::EdgesCut), 1.0);
}

TEST(ScoringGTest, testToySets) {
    const Graph g = load_edge_list(oracle::data_path("toy.txt"));
    std::vector<node> a, b;
    for (original_id id : {5, 6, 7, 8})
        a.push_back(*g.find_original(id));
    for (original_id id : {1, 2, 3, 4})
        b.push_back(*g.find_original(id));
    EXPECT_DOUBLE_EQ(value(g, a, ScoreKind::Conductance), 2.0 / 14.0);
    EXPECT_DOUBLE_EQ(value(g, b, ScoreKind::Conductance), 1.0 / 11.0);
}

TEST(ScoringGTest, testSingleNode) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    for (node u : {node{0}, node{11}, node{33}}) {
        const double d = static_cast<double>(g.degree(u));
        EXPECT_DOUBLE_EQ(value(g, {u}, ScoreKind::Conductance), 1.0);
        EXPECT_DOUBLE_EQ(value(g, {u}, ScoreKind::Expansion), d);
        EXPECT_DOUBLE_EQ(value(g, {u}, ScoreKind::EdgesCut), d);
        EXPECT_DOUBLE_EQ(value(g, {u}, ScoreKind::InternalDensity), 1.0);
    }
}

TEST(ScoringGTest, testWholeGraph) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const Cluster all = whole_graph(g);
    EXPECT_NEAR(score(g, all, ScoreKind::Modularity).value, 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(score(g, all, ScoreKind::ModularityRatio).value, 1.0);
    EXPECT_DOUBLE_EQ(score(g, all, ScoreKind::Volume).value, 156.0);
    EXPECT_DOUBLE_EQ(score(g, all, ScoreKind::EdgesCut).value, 0.0);
    EXPECT_THROW(score(g, all, ScoreKind::Conductance), ScoreError);
    EXPECT_THROW(score(g, all, ScoreKind::CutRatio), ScoreError);
    EXPECT_THROW(score(g, all, ScoreKind::NormalizedCut), ScoreError);
    EXPECT_THROW(score(g, cluster_stats(g, {}), ScoreKind::Conductance), ScoreError);
}

TEST(ScoringGTest, testNormalizedCutK4) {
    const Graph g = load_edge_list(oracle::data_path("k4.txt"));
    EXPECT_DOUBLE_EQ(value(g, {0, 1}, ScoreKind::NormalizedCut), 4.0 / 6.0 + 4.0 / 6.0);
}

TEST(ScoringGTest, testRandomAgainstDirectFormulas) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 13;
        const auto e = oracle::no_isolated(n, oracle::erdos_renyi(n, 0.3, rng), rng);
        const oracle::Plain p(n, e);
        const Graph g = oracle::graph_of(n, e);
        std::vector<node> members;
        for (node u = 0; u < static_cast<node>(n); ++u)
            if (rng() % 3 == 0)
                members.push_back(u);
        if (members.size() < 2)
            members = {0, 1};
        const auto in = oracle::members_to_set(n, members);
        const auto s = oracle::stats_of(p, in);
        const double m = static_cast<double>(p.edges.size());
        const double ns = static_cast<double>(s.size), cs = static_cast<double>(s.cut);
        const double vol = static_cast<double>(s.volume), ms = static_cast<double>(s.internal);
        EXPECT_NEAR(value(g, members, ScoreKind::Conductance), oracle::conductance(p, in), 1e-14);
        EXPECT_NEAR(value(g, members, ScoreKind::Expansion), cs / ns, 1e-14);
        EXPECT_NEAR(value(g, members, ScoreKind::InternalDensity), 1 - ms / (ns * (ns - 1) / 2), 1e-14);
        EXPECT_NEAR(value(g, members, ScoreKind::CutRatio), cs / (ns * (n - ns)), 1e-14);
        EXPECT_NEAR(value(g, members, ScoreKind::NormalizedCut), cs / vol + cs / (2 * m - vol), 1e-14);
        EXPECT_NEAR(value(g, members, ScoreKind::Modularity), (ms - vol * vol / (4 * m)) / (4 * m), 1e-14);
        if (vol > 0)
            EXPECT_NEAR(value(g, members, ScoreKind::ModularityRatio), ms / (vol * vol / (4 * m)), 1e-12);
        double max_odf = 0, sum_odf = 0;
        int flake = 0;
        for (auto u : members) {
            int out = 0;
            for (int v : p.adj[u])
                out += !in[v];
            const double f = static_cast<double>(out) / p.degree(static_cast<int>(u));
            max_odf = std::max(max_odf, f);
            sum_odf += f;
            flake += (p.degree(static_cast<int>(u)) - out) * 2 < p.degree(static_cast<int>(u));
        }
        EXPECT_NEAR(value(g, members, ScoreKind::MaxODF), max_odf, 1e-14);
        EXPECT_NEAR(value(g, members, ScoreKind::AvgODF), sum_odf / ns, 1e-14);
        EXPECT_NEAR(value(g, members, ScoreKind::FlakeODF), flake / ns, 1e-14);
    }
}

TEST(ScoringGTest, testScoreAllFlagsInapplicable) {
    const Graph g = load_edge_list(oracle::data_path("triangle.txt"));
    const auto entries = score_all(g, whole_graph(g));
    ASSERT_EQ(entries.size(), kNumScoreKinds);
    for (const auto &e : entries) {
        if (e.kind == ScoreKind::Conductance || e.kind == ScoreKind::CutRatio || e.kind == ScoreKind::NormalizedCut) {
            EXPECT_FALSE(e.value.has_value());
            EXPECT_FALSE(e.reason.empty());
        } else {
            EXPECT_TRUE(e.value.has_value()) << name(e.kind);
        }
    }
}

TEST(ScoringGTest, testNamesRoundTrip) {
    for (ScoreKind k : kAllScoreKinds)
        EXPECT_EQ(parse_score_kind(name(k)), k);
    EXPECT_FALSE(parse_score_kind("nonsense").has_value());
    EXPECT_EQ(orientation(ScoreKind::Modularity), Orientation::HigherIsBetter);
    EXPECT_EQ(orientation(ScoreKind::Conductance), Orientation::LowerIsBetter);
    EXPECT_TRUE(boundary_symmetric(ScoreKind::Conductance));
    EXPECT_FALSE(boundary_symmetric(ScoreKind::InternalDensity));
}

TEST(ScoringGTest, testAvgShortestPath) {
    const Graph g = load_edge_list(oracle::data_path("barbell.txt"));
    EXPECT_DOUBLE_EQ(avg_shortest_path(g, cluster_stats(g, range(0, 5)), 1000, 1), 1.0);
    // Cross pairs: one at distance 1, eight at 2 and sixteen at 3.
    const double cross = (1.0 + 4 * 2 + 4 * 2 + 16 * 3) / 25.0;
    const double expected = (20.0 * 1.0 + 25.0 * cross) / 45.0;
    EXPECT_NEAR(avg_shortest_path(g, whole_graph(g), 1000, 1), expected, 1e-12);
}

} // namespace
} // namespace ncpkit
