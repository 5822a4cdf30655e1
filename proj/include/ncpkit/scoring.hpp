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

#ifndef NCPKIT_SCORING_HPP_
#define NCPKIT_SCORING_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <ncpkit/graph.hpp>

namespace ncpkit {

/**
 * Community quality objectives. The first eight combine internal and external
 * connectivity; the last four use a single criterion.
 */
enum class ScoreKind : std::uint8_t {
    Conductance,
    Expansion,
    InternalDensity,
    CutRatio,
    NormalizedCut,
    MaxODF,
    AvgODF,
    FlakeODF,
    Modularity,
    ModularityRatio,
    Volume,
    EdgesCut,
};

inline constexpr std::size_t kNumScoreKinds = 12;

inline constexpr std::array<ScoreKind, kNumScoreKinds> kAllScoreKinds = {
    ScoreKind::Conductance,   ScoreKind::Expansion,  ScoreKind::InternalDensity,
    ScoreKind::CutRatio,      ScoreKind::NormalizedCut, ScoreKind::MaxODF,
    ScoreKind::AvgODF,        ScoreKind::FlakeODF,   ScoreKind::Modularity,
    ScoreKind::ModularityRatio, ScoreKind::Volume,   ScoreKind::EdgesCut,
};

enum class Orientation : std::uint8_t { LowerIsBetter, HigherIsBetter, Descriptive };

Orientation orientation(ScoreKind kind);
std::string_view name(ScoreKind kind);
std::optional<ScoreKind> parse_score_kind(std::string_view text);

/// Kinds that need per-member out-degree fractions rather than aggregate stats.
bool needs_members(ScoreKind kind);

/// f(S) == f(V \ S) for every S.
bool boundary_symmetric(ScoreKind kind);

/// A score that is undefined for the given cluster (S empty or S = V for
/// boundary kinds, zero expected edges for the modularity ratio, ...).
class ScoreError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ScoreValue {
    ScoreKind kind;
    double value;
};

/// Exact evaluation. Conductance uses c_S / min(Vol(S), Vol(V \ S)).
ScoreValue score(const Graph &g, const Cluster &s, ScoreKind kind);

/// Stats-only form for every kind except the ODF family.
double score_from_stats(const Graph &g, const ClusterStats &s, ScoreKind kind);

struct ScoreEntry {
    ScoreKind kind;
    std::optional<double> value; // empty when inapplicable
    std::string reason;          // why it is inapplicable
};

/// One entry per kind, in kAllScoreKinds order.
std::vector<ScoreEntry> score_all(const Graph &g, const Cluster &s);

/// Fraction of each member's edges leaving S, in member order.
std::vector<double> out_degree_fractions(const Graph &g, const Cluster &s);

/// Mean BFS distance over sampled distinct unordered pairs in the induced
/// subgraph; exhaustive when the pair count is at most sample_pairs.
double avg_shortest_path(const Graph &g, const Cluster &s, count sample_pairs, std::uint64_t seed);

} // namespace ncpkit

#endif // NCPKIT_SCORING_HPP_
