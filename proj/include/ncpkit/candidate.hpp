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

#ifndef NCPKIT_CANDIDATE_HPP_
#define NCPKIT_CANDIDATE_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <ncpkit/graph.hpp>
#include <ncpkit/scoring.hpp>

namespace ncpkit {

enum class Generator : std::uint8_t {
    LocalSpectral,
    Mqi,
    GlobalSpectral,
    Dendrogram,
    Oracle,
    SplitChild,
};

std::string_view generator_name(Generator g);
std::optional<Generator> parse_generator(std::string_view text);

/// Where a candidate came from. Fields that do not apply stay at their
/// sentinel (-1 / NaN).
struct Provenance {
    Generator generator = Generator::Oracle;
    std::int64_t seed_node = -1; // dense id of the diffusion seed
    std::int64_t run_seed = -1;  // RNG seed of the trial
    std::int64_t trial = -1;
    std::int64_t depth = -1;  // recursion depth for recursive bisection
    std::int64_t parent = -1; // candidate id of the parent for split children
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double epsilon = std::numeric_limits<double>::quiet_NaN();
};

/**
 * A node set held as the first `size` entries of a shared node list. Sweep
 * prefixes share one ordering, so a run that emits every prefix stores its
 * ordering once.
 */
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<node> nodes);
    NodeSet(std::shared_ptr<const std::vector<node>> nodes, std::size_t size);

    std::size_t size() const noexcept { return size_; }
    std::span<const node> view() const { return {nodes_->data(), size_}; }
    std::vector<node> sorted() const;

private:
    std::shared_ptr<const std::vector<node>> nodes_ = std::make_shared<const std::vector<node>>();
    std::size_t size_ = 0;
};

struct ScoredCluster {
    NodeSet nodes;
    ClusterStats stats;
    Provenance provenance;
    bool connected = true;
    /// Cached score values; NaN means not computed or undefined.
    std::array<double, kNumScoreKinds> scores;

    ScoredCluster() { scores.fill(std::numeric_limits<double>::quiet_NaN()); }

    count size() const noexcept { return stats.size; }
    Cluster cluster() const { return {nodes.sorted(), stats}; }

    double cached(ScoreKind kind) const { return scores[static_cast<std::size_t>(kind)]; }
    bool has_score(ScoreKind kind) const { return !std::isnan(cached(kind)); }
};

/// Builds a candidate from a node list, computing stats and connectivity.
ScoredCluster make_candidate(const Graph &g, std::vector<node> members, Provenance provenance);

/// Scores `kinds` for every candidate that lacks them; undefined scores stay NaN.
void ensure_scores(const Graph &g, std::span<ScoredCluster> candidates, std::span<const ScoreKind> kinds);
void ensure_score(const Graph &g, ScoredCluster &candidate, ScoreKind kind);

} // namespace ncpkit

#endif // NCPKIT_CANDIDATE_HPP_
