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

#ifndef NCPKIT_NCP_HPP_
#define NCPKIT_NCP_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <ncpkit/candidate.hpp>
#include <ncpkit/flow.hpp>
#include <ncpkit/graph.hpp>
#include <ncpkit/local_spectral.hpp>
#include <ncpkit/scoring.hpp>

namespace ncpkit {

/// Connected candidates pass through; a disconnected one is replaced by one
/// split-child per component, rescored from scratch, with provenance.parent
/// set to its index in the input.
std::vector<ScoredCluster> split_disconnected(const Graph &g, const std::vector<ScoredCluster> &candidates);

/// The split children of every disconnected candidate, in input order.
std::vector<ScoredCluster> split_children(const Graph &g, const std::vector<ScoredCluster> &candidates);

struct NcpPoint {
    double value = 0;
    std::size_t witness = 0;  // candidate index
    bool complemented = false; // witness is the complement of the candidate
};

struct NcpProfile {
    ScoreKind kind = ScoreKind::Conductance;
    std::map<count, NcpPoint> envelope; // realized sizes 1..floor(n/2)

    bool empty() const { return envelope.empty(); }
    std::optional<double> at(count k) const;
};

/// True when a is a strictly better value than b for this kind. Descriptive
/// kinds use the lower envelope.
bool better_value(ScoreKind kind, double a, double b);

struct NcpOptions {
    bool skip_disconnected = false; // ignore disconnected candidates and disconnected complements
};

/**
 * Best value per size over the candidates, scoring lazily. Sizes above
 * floor(n/2) enter through the complement for boundary-symmetric kinds and are
 * dropped otherwise. Equal values keep the smaller candidate index.
 */
NcpProfile build_ncp(const Graph &g, std::span<ScoredCluster> candidates, ScoreKind kind,
                     const NcpOptions &options = {});

/// Pointwise best of two profiles; witnesses of b are shifted by b_offset.
NcpProfile merge_profiles(const NcpProfile &a, const NcpProfile &b, std::size_t b_offset);

struct ExactNcp {
    NcpProfile profile;                // witness indexes into witnesses
    std::vector<ScoredCluster> witnesses; // tagged oracle
};

/**
 * Exact profile by enumerating every subset with at most floor(n/2) nodes
 * (connected ones only when connected_only is set). Ties go to the
 * lexicographically smallest member list. Throws std::invalid_argument when
 * n > max_n.
 */
ExactNcp exact_ncp(const Graph &g, ScoreKind kind, count max_n = 18, bool connected_only = false);

/// Minimum conductance over all nonempty proper subsets, by Gray-code
/// enumeration; n <= 24.
double exact_min_conductance(const Graph &g);

struct InternalBudget {
    count exact_limit = 18;
    count seed_sample = 0; // local-spectral seeds inside the cluster; 0 = all
    std::uint64_t seed = 1;
};

/**
 * Lowest conductance of a cut inside the induced subgraph: exact up to
 * exact_limit nodes, otherwise the best of local_cluster from the sampled
 * seeds and one bisect + mqi. Throws ClusterError on a singleton or a
 * disconnected induced subgraph.
 */
double internal_conductance(const Graph &g, const Cluster &s, const InternalBudget &budget = {});

struct BiasRow {
    Generator generator = Generator::Oracle;
    count k = 0;
    double phi_external = 0;
    double phi_internal = 0;
    double ratio = 0;
    double avg_path = 0;
    bool connected = true;
};

struct BiasOptions {
    InternalBudget internal;
    count sample_pairs = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

/**
 * One row per candidate. Singletons get phi_internal = 1 and avg_path = 0.
 * A disconnected candidate takes phi_internal and avg_path from its largest
 * component and keeps connected = false.
 */
std::vector<BiasRow> bias_report(const Graph &g, const std::vector<ScoredCluster> &candidates,
                                 const BiasOptions &options = {});

struct GenerationOptions {
    std::vector<Generator> methods;
    count seed_sample = 0;               // local-spectral seeds; 0: all when n <= 10^4, else 1000
    std::optional<LocalSpectralParams> params; // default grid when unset
    std::size_t flow_trials = 200;
    FlowSampleOptions flow;
    count max_removals = 0;              // 0: default_max_removals
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

/// Runs the requested generators in the order given.
std::vector<ScoredCluster> generate_candidates(const Graph &g, const GenerationOptions &options);

/// kind,k,phi,witness_id,generator
void write_ncp_csv(std::ostream &out, std::span<const NcpProfile> profiles, std::span<const ScoredCluster> candidates);
/// One JSON object per candidate, ids are line indexes.
void write_candidates_jsonl(std::ostream &out, const Graph &g, std::span<const ScoredCluster> candidates);
/// generator,k,phi_external,phi_internal,ratio,avg_path,connected
void write_bias_csv(std::ostream &out, std::span<const BiasRow> rows);

/// Shortest round-trip representation; "nan" for NaN.
std::string format_number(double x);

} // namespace ncpkit

#endif // NCPKIT_NCP_HPP_
