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

#include <ncpkit/candidate.hpp>

#include <algorithm>
#include <array>

namespace ncpkit {

namespace {

constexpr std::array<std::pair<Generator, std::string_view>, 6> kGenerators = {{
    {Generator::LocalSpectral, "local-spectral"},
    {Generator::Mqi, "mqi"},
    {Generator::GlobalSpectral, "global-spectral"},
    {Generator::Dendrogram, "dendrogram"},
    {Generator::Oracle, "oracle"},
    {Generator::SplitChild, "split-child"},
}};

} // namespace

std::string_view generator_name(Generator g) {
    for (const auto &[k, name] : kGenerators)
        if (k == g)
            return name;
    return "unknown";
}

std::optional<Generator> parse_generator(std::string_view text) {
    for (const auto &[k, name] : kGenerators)
        if (name == text)
            return k;
    return std::nullopt;
}

NodeSet::NodeSet(std::vector<node> nodes)
    : size_(nodes.size()) {
    nodes_ = std::make_shared<const std::vector<node>>(std::move(nodes));
}

NodeSet::NodeSet(std::shared_ptr<const std::vector<node>> nodes, std::size_t size)
    : nodes_(std::move(nodes)), size_(size) {}

std::vector<node> NodeSet::sorted() const {
    std::vector<node> out(view().begin(), view().end());
    std::sort(out.begin(), out.end());
    return out;
}

ScoredCluster make_candidate(const Graph &g, std::vector<node> members, Provenance provenance) {
    Cluster c = cluster_stats(g, std::move(members));
    ScoredCluster sc;
    sc.connected = is_connected(g, c.members);
    sc.stats = c.stats;
    sc.nodes = NodeSet(std::move(c.members));
    sc.provenance = provenance;
    return sc;
}

void ensure_score(const Graph &g, ScoredCluster &candidate, ScoreKind kind) {
    if (candidate.has_score(kind))
        return;
    auto &slot = candidate.scores[static_cast<std::size_t>(kind)];
    try {
        if (needs_members(kind))
            slot = score(g, candidate.cluster(), kind).value;
        else
            slot = score_from_stats(g, candidate.stats, kind);
    } catch (const ScoreError &) {
        // Undefined for this cluster; stays NaN.
    }
}

void ensure_scores(const Graph &g, std::span<ScoredCluster> candidates, std::span<const ScoreKind> kinds) {
    for (auto &c : candidates)
        for (ScoreKind kind : kinds)
            ensure_score(g, c, kind);
}

} // namespace ncpkit
