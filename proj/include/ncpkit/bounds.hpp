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

#ifndef NCPKIT_BOUNDS_HPP_
#define NCPKIT_BOUNDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <ncpkit/graph.hpp>

namespace ncpkit {

struct SpectralOptions {
    double tolerance = 1e-8;    // on ||L x - lambda D x|| / ||D x||
    count dense_check_limit = 200;
    std::uint64_t seed = 1;
};

/**
 * lambda_G = min x'Lx / x'Dx over x orthogonal to d, and lambda_G / 2, a lower
 * bound on the conductance of every cut. On a disconnected graph lambda_G is 0
 * and x_hat separates one component from the rest.
 */
struct SpectralCertificate {
    double lambda = 0;
    std::vector<double> x_hat; // unit norm
    double bound_any_size = 0;
    double residual = 0;           // ||L x - lambda D x|| / ||D x||
    double orthogonality = 0;      // |x'd| / (||x|| ||d||)
    bool connected = true;
    bool converged = true;
    std::optional<double> dense_lambda; // set when n <= dense_check_limit
};

SpectralCertificate spectral_lower_bound(const Graph &g, const SpectralOptions &options = {});

struct SdpOptions {
    std::size_t rank = 0;           // 0: ceil(sqrt(2n)) capped at 32
    std::size_t iterations = 6000;  // primal descent steps in total
    std::uint64_t seed = 1;
    count polish_limit = 600;       // dense dual ascent up to this many nodes
    /// Optional warm start: n x r' row-major embedding (r' <= rank), padded
    /// with zero columns.
    std::vector<double> warm_start;
    std::size_t warm_start_rank = 0;
};

/**
 * Certificate for C_G = min (1/4) L . Y subject to diag(Y) = 1, Y . dd' = 0,
 * Y PSD. The primal value comes from a low-rank embedding and bounds C_G from
 * above; the certified number is the dual value sum(u), valid whenever
 * L/4 - Diag(u) - v dd' is PSD.
 */
struct SdpCertificate {
    double primal_value = 0;
    std::vector<double> embedding; // n x rank, row-major
    std::size_t rank = 0;
    double dual_value = 0;
    std::vector<double> u;
    double v = 0;
    double bound_at_half_volume = 0; // 2 dual_value / Vol(G)
    double min_eig_slack = 0;        // checker's lambda_min of the dual matrix
    double norm_l = 0;               // spectral norm of L
    double row_error = 0;            // max | ||R_i|| - 1 |
    double orthogonality = 0;        // ||R'd|| / ||d||
    bool certified = false;          // checker passed
    bool converged = false;          // primal feasible and gap small
    bool closed_form = false;        // complete graph, solved exactly
};

SdpCertificate sdp_lower_bound(const Graph &g, const SdpOptions &options = {});

struct DualCheck {
    double min_eigenvalue = 0; // lower estimate of lambda_min(L/4 - Diag(u) - v dd')
    double threshold = 0;      // -1e-8 ||L||
    bool passed = false;
};

/// Recomputes lambda_min of the dual matrix with a Lanczos iteration that
/// shares nothing with the solver, plus a dense solve for n <= dense_limit.
DualCheck check_dual_certificate(const Graph &g, std::span<const double> u, double v, count dense_limit = 600);

/// Spectral norm of the Laplacian.
double laplacian_norm(const Graph &g);

struct BoundsReport {
    std::string network;
    SpectralCertificate spectral;
    std::optional<SdpCertificate> sdp;
    double spectral_lb = 0;
    double sdp_lb = 0;   // NaN without an SDP solve
    double ratio = 0;    // NaN without an SDP solve
    bool certified = true;
};

BoundsReport bounds_report(const Graph &g, const std::string &network, bool with_sdp,
                           const SpectralOptions &spectral = {}, const SdpOptions &sdp = {});

/// network,spectral_lb,sdp_lb_half_volume,ratio,certified
void write_bounds_csv(std::ostream &out, std::span<const BoundsReport> rows);

} // namespace ncpkit

#endif // NCPKIT_BOUNDS_HPP_
