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

#include <ncpkit/local_spectral.hpp>

#include "oracles.hpp"

namespace ncpkit {
namespace {

// Dense personalized PageRank of the lazy walk started from the vector s.
Eigen::VectorXd dense_ppr(const oracle::Plain &p, double alpha, const Eigen::VectorXd &s) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p.n, p.n);
    for (int u = 0; u < p.n; ++u) {
        w(u, u) += 0.5;
        for (int v : p.adj[u])
            w(u, v) += 0.5 / p.degree(u);
    }
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p.n, p.n) - (1 - alpha) * w;
    return (alpha * m.transpose().lu().solve(s));
}

TEST(LocalSpectralGTest, testPushMatchesDenseInvariant) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const auto p = oracle::plain_of(g);
    for (double alpha : {0.05, 0.2}) {
        for (double eps : {1e-2, 1e-4}) {
            const DiffusionVector dv = ppr_push(g, 5, alpha, eps);
            Eigen::VectorXd seed = Eigen::VectorXd::Zero(p.n), r = Eigen::VectorXd::Zero(p.n),
                            approx = Eigen::VectorXd::Zero(p.n);
            seed(5) = 1;
            for (auto [u, v] : dv.residual)
                r(u) = v;
            for (auto [u, v] : dv.support)
                approx(u) = v;
            const Eigen::VectorXd exact = dense_ppr(p, alpha, seed);
            const Eigen::VectorXd gap = dense_ppr(p, alpha, r);
            EXPECT_LT((exact - approx - gap).cwiseAbs().maxCoeff(), 1e-12);
            for (int u = 0; u < p.n; ++u)
                EXPECT_LT(r(u), eps * p.degree(u));
        }
    }
}

TEST(LocalSpectralGTest, testPushConservesMass) {
    const Graph g = load_edge_list(oracle::data_path("dolphins.txt"));
    double worst = 0;
    std::size_t calls = 0;
    const DiffusionVector dv = ppr_push(g, 0, 0.1, 1e-4, [&](double pm, double rm) {
        worst = std::max(worst, std::abs(pm + rm - 1.0));
        ++calls;
    });
    EXPECT_EQ(calls, dv.pushes);
    EXPECT_LT(worst, 1e-12);
    EXPECT_NEAR(dv.support_mass() + dv.residual_mass(), 1.0, 1e-12);
}

TEST(LocalSpectralGTest, testPushRejectsBadInput) {
    const Graph g = load_edge_list(oracle::data_path("k4.txt"));
    EXPECT_THROW(ppr_push(g, 0, 0.0, 1e-3), std::invalid_argument);
    EXPECT_THROW(ppr_push(g, 0, 1.0, 1e-3), std::invalid_argument);
    EXPECT_THROW(ppr_push(g, 0, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(ppr_push(g, 9, 0.1, 1e-3), std::invalid_argument);
}

TEST(LocalSpectralGTest, testSweepStatsMatchOracle) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const auto p = oracle::plain_of(g);
    const SweepResult sr = sweep(g, ppr_push(g, 33, 0.05, 1e-5));
    std::vector<bool> in(static_cast<std::size_t>(p.n));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sr.prefixes.size(); ++i) {
        in[(*sr.ordering)[i]] = true;
        const auto s = oracle::stats_of(p, in);
        EXPECT_EQ(static_cast<long>(sr.prefixes[i].stats.cut_edges), s.cut);
        EXPECT_EQ(static_cast<long>(sr.prefixes[i].stats.volume), s.volume);
        EXPECT_EQ(sr.prefixes[i].connected, oracle::induced_connected(p, in));
        const double phi = oracle::conductance(p, in);
        if (sr.prefixes[i].connected && !std::isnan(phi))
            best = std::min(best, phi);
    }
    EXPECT_DOUBLE_EQ(sr.prefixes[sr.best_index].conductance, best);
    EXPECT_THROW(sweep(g, DiffusionVector{}), std::invalid_argument);
}

TEST(LocalSpectralGTest, testSweepOrderTieBreak) {
    const Graph g = load_edge_list(oracle::data_path("k4.txt"));
    DiffusionVector dv;
    dv.support = {{0, 0.1}, {1, 0.3}, {2, 0.3}, {3, 0.05}};
    const SweepResult sr = sweep(g, dv);
    EXPECT_EQ(*sr.ordering, (std::vector<node>{1, 2, 0, 3}));
}

TEST(LocalSpectralGTest, testBarbellFindsClique) {
    const Graph g = load_edge_list(oracle::data_path("barbell.txt"));
    const auto out = local_cluster(g, 0, LocalSpectralParams::defaults(g));
    double best = 1;
    for (const auto &c : out) {
        EXPECT_TRUE(c.connected);
        EXPECT_LT(c.size(), g.num_nodes());
        best = std::min(best, c.cached(ScoreKind::Conductance));
    }
    EXPECT_DOUBLE_EQ(best, 1.0 / 21.0);
}

TEST(LocalSpectralGTest, testCandidatesDistinctPerSeed) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const auto out = local_cluster(g, 0, LocalSpectralParams::defaults(g));
    std::set<std::vector<node>> sets;
    for (const auto &c : out) {
        EXPECT_TRUE(sets.insert(c.nodes.sorted()).second);
        EXPECT_EQ(c.provenance.generator, Generator::LocalSpectral);
        EXPECT_EQ(c.provenance.seed_node, 0);
        EXPECT_FALSE(std::isnan(c.provenance.alpha));
    }
}

TEST(LocalSpectralGTest, testDefaultGrid) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const auto params = LocalSpectralParams::defaults(g);
    EXPECT_EQ(params.alphas.size(), 5u);
    ASSERT_EQ(params.epsilons.size(), 2u);
    EXPECT_DOUBLE_EQ(params.epsilons[0], 1.0 / 100.0);
    EXPECT_DOUBLE_EQ(params.epsilons[1], 1.0 / 780.0);
}

TEST(LocalSpectralGTest, testSeedsAndParallelSample) {
    const Graph g = load_edge_list(oracle::data_path("dolphins.txt"));
    const auto seeds = select_seeds(g, 10, 5);
    EXPECT_EQ(seeds.size(), 10u);
    EXPECT_TRUE(std::is_sorted(seeds.begin(), seeds.end()));
    EXPECT_EQ(seeds, select_seeds(g, 10, 5));
    EXPECT_EQ(select_seeds(g, 0, 5).size(), g.num_nodes());
    const auto params = LocalSpectralParams::defaults(g);
    const auto a = local_spectral_sample(g, seeds, params, 1);
    const auto b = local_spectral_sample(g, seeds, params, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a[i].nodes.sorted(), b[i].nodes.sorted());
}

} // namespace
} // namespace ncpkit
