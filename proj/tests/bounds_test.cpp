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

#include <ncpkit/bounds.hpp>

#include "oracles.hpp"

namespace ncpkit {
namespace {

TEST(BoundsGTest, testSpectralK4) {
    const Graph g = load_edge_list(oracle::data_path("k4.txt"));
    const SpectralCertificate c = spectral_lower_bound(g);
    EXPECT_NEAR(c.lambda, 4.0 / 3.0, 1e-10);
    EXPECT_NEAR(c.bound_any_size, 2.0 / 3.0, 1e-10);
    EXPECT_TRUE(c.converged);
}

TEST(BoundsGTest, testSpectralDisconnected) {
    const Graph g = oracle::graph_of(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    const SpectralCertificate c = spectral_lower_bound(g);
    EXPECT_FALSE(c.connected);
    EXPECT_EQ(c.lambda, 0.0);
    EXPECT_EQ(c.bound_any_size, 0.0);
    EXPECT_LT(c.orthogonality, 1e-12);
    EXPECT_THROW(sdp_lower_bound(g), std::invalid_argument);
}

TEST(BoundsGTest, testSpectralMatchesDense) {
    for (const char *file : {"karate.txt", "dolphins.txt", "football.txt"}) {
        const Graph g = load_edge_list(oracle::data_path(file));
        const auto p = oracle::plain_of(g);
        const SpectralCertificate c = spectral_lower_bound(g);
        EXPECT_TRUE(c.converged);
        EXPECT_NEAR(c.lambda, oracle::dense_lambda2(p), 1e-10) << file;
        EXPECT_LE(c.residual, 1e-8);
        EXPECT_LE(c.orthogonality, 1e-8);
        double xd = 0, nx = 0, nd = 0;
        for (int u = 0; u < p.n; ++u) {
            xd += c.x_hat[u] * p.degree(u);
            nx += c.x_hat[u] * c.x_hat[u];
            nd += p.degree(u) * p.degree(u);
        }
        EXPECT_LE(std::abs(xd), 1e-8 * std::sqrt(nx * nd));
    }
}

TEST(BoundsGTest, testSdpK4ClosedForm) {
    const Graph g = load_edge_list(oracle::data_path("k4.txt"));
    const SdpCertificate c = sdp_lower_bound(g);
    EXPECT_TRUE(c.closed_form);
    EXPECT_NEAR(c.dual_value, 4.0, 1e-10);
    EXPECT_NEAR(c.primal_value, 4.0, 1e-10);
    EXPECT_NEAR(c.bound_at_half_volume, 2.0 / 3.0, 1e-10);
    EXPECT_TRUE(c.certified);
    EXPECT_GE(oracle::dense_dual_min_eig(oracle::plain_of(g), c.u, c.v), -1e-10);
}

TEST(BoundsGTest, testSdpKarateCertificate) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const auto p = oracle::plain_of(g);
    const SdpCertificate c = sdp_lower_bound(g);
    EXPECT_TRUE(c.certified);
    EXPECT_NEAR(c.bound_at_half_volume, 0.127625, 0.01 * 0.127625);
    EXPECT_LE(c.dual_value, c.primal_value + 1e-9);
    EXPECT_NEAR(c.dual_value, std::accumulate(c.u.begin(), c.u.end(), 0.0), 1e-9);
    const double lmin = oracle::dense_dual_min_eig(p, c.u, c.v);
    const double norm_l = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(oracle::laplacian(p)).eigenvalues().maxCoeff();
    EXPECT_NEAR(c.norm_l, norm_l, 1e-9);
    EXPECT_GE(lmin, -1e-8 * norm_l);
    EXPECT_NEAR(c.min_eig_slack, lmin, 1e-8);
    EXPECT_LE(c.row_error, 1e-8);
    EXPECT_LE(c.orthogonality, 1e-8);
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
        double r = 0;
        for (std::size_t j = 0; j < c.rank; ++j)
            r += c.embedding[i * c.rank + j] * c.embedding[i * c.rank + j];
        EXPECT_NEAR(r, 1.0, 1e-8);
    }
}

TEST(BoundsGTest, testCheckerRejectsInfeasible) {
    const Graph g = load_edge_list(oracle::data_path("karate.txt"));
    const auto p = oracle::plain_of(g);
    const SdpCertificate c = sdp_lower_bound(g);
    std::vector<double> u = c.u;
    u[0] += 0.05;
    const DualCheck bad = check_dual_certificate(g, u, c.v);
    EXPECT_FALSE(bad.passed);
    EXPECT_NEAR(bad.min_eigenvalue, oracle::dense_dual_min_eig(p, u, c.v), 1e-8);
    const DualCheck good = check_dual_certificate(g, c.u, c.v, 0);
    EXPECT_TRUE(good.passed);
    EXPECT_LE(good.min_eigenvalue, oracle::dense_dual_min_eig(p, c.u, c.v) + 1e-9);
}

TEST(BoundsGTest, testSoundnessOnSmallGraphs) {
    std::mt19937_64 rng(31);
    int balanced = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 10;
        auto e = trial % 2 ? oracle::planted_two(n, 0.7, 0.1, rng) : oracle::erdos_renyi(n, 0.4, rng);
        e = oracle::no_isolated(n, e, rng);
        const oracle::Plain p(n, e);
        if (!oracle::plain_connected(p))
            continue;
        const Graph g = oracle::graph_of(n, e);
        const double phi_min = oracle::brute_min_conductance(p);
        EXPECT_LE(spectral_lower_bound(g).bound_any_size, phi_min + 1e-12);
        const SdpCertificate c = sdp_lower_bound(g);
        EXPECT_TRUE(c.certified);
        const double bal = oracle::brute_balanced_min_conductance(p);
        if (!std::isinf(bal)) {
            ++balanced;
            EXPECT_LE(c.bound_at_half_volume, bal + 1e-12);
        }
        EXPECT_GE(oracle::dense_dual_min_eig(p, c.u, c.v), -1e-8 * c.norm_l);
    }
    EXPECT_GT(balanced, 0);
}

TEST(BoundsGTest, testRankMonotone) {
    const Graph g = load_edge_list(oracle::data_path("dolphins.txt"));
    SdpOptions low;
    low.rank = 3;
    low.polish_limit = 0;
    const SdpCertificate a = sdp_lower_bound(g, low);
    SdpOptions high = low;
    high.rank = 4;
    high.warm_start = a.embedding;
    high.warm_start_rank = a.rank;
    const SdpCertificate b = sdp_lower_bound(g, high);
    EXPECT_LE(b.primal_value, a.primal_value + 1e-9);
}

TEST(BoundsGTest, testReportCsv) {
    const Graph g = load_edge_list(oracle::data_path("k4.txt"));
    std::vector<BoundsReport> rows{bounds_report(g, "k4", true)};
    EXPECT_NEAR(rows[0].ratio, 1.0, 1e-10);
    std::ostringstream out;
    write_bounds_csv(out, rows);
    EXPECT_EQ(out.str(), "network,spectral_lb,sdp_lb_half_volume,ratio,certified\nk4,0.666667,0.666667,1.000000,yes\n");
}

} // namespace
} // namespace ncpkit
