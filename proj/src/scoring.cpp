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

#include <ncpkit/scoring.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

namespace ncpkit {

namespace {

struct KindInfo {
    ScoreKind kind;
    std::string_view name;
    Orientation orientation;
    bool members;
    bool symmetric;
};

constexpr std::array<KindInfo, kNumScoreKinds> kInfo = {{
    {ScoreKind::Conductance, "Conductance", Orientation::LowerIsBetter, false, true},
    {ScoreKind::Expansion, "Expansion", Orientation::LowerIsBetter, false, false},
    {ScoreKind::InternalDensity, "InternalDensity", Orientation::LowerIsBetter, false, false},
    {ScoreKind::CutRatio, "CutRatio", Orientation::LowerIsBetter, false, true},
    {ScoreKind::NormalizedCut, "NormalizedCut", Orientation::LowerIsBetter, false, true},
    {ScoreKind::MaxODF, "MaxODF", Orientation::LowerIsBetter, true, false},
    {ScoreKind::AvgODF, "AvgODF", Orientation::LowerIsBetter, true, false},
    {ScoreKind::FlakeODF, "FlakeODF", Orientation::LowerIsBetter, true, false},
    {ScoreKind::Modularity, "Modularity", Orientation::HigherIsBetter, false, false},
    {ScoreKind::ModularityRatio, "ModularityRatio", Orientation::HigherIsBetter, false, false},
    {ScoreKind::Volume, "Volume", Orientation::Descriptive, false, false},
    {ScoreKind::EdgesCut, "EdgesCut", Orientation::LowerIsBetter, false, true},
}};

const KindInfo &info(ScoreKind kind) { return kInfo[static_cast<std::size_t>(kind)]; }

std::string_view lower_ascii(std::string_view s, std::string &buf) {
    buf.assign(s);
    for (auto &c : buf)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return buf;
}

void require_proper(const Graph &g, const ClusterStats &s, ScoreKind kind) {
    if (s.size == 0 || s.size >= g.num_nodes())
        throw ScoreError(std::string(name(kind)) + " is undefined for an empty or full cluster");
}

} // namespace

Orientation orientation(ScoreKind kind) { return info(kind).orientation; }
std::string_view name(ScoreKind kind) { return info(kind).name; }
bool needs_members(ScoreKind kind) { return info(kind).members; }
bool boundary_symmetric(ScoreKind kind) { return info(kind).symmetric; }

std::optional<ScoreKind> parse_score_kind(std::string_view text) {
    std::string a, b;
    auto wanted = lower_ascii(text, a);
    for (const auto &k : kInfo)
        if (lower_ascii(k.name, b) == wanted)
            return k.kind;
    return std::nullopt;
}

double score_from_stats(const Graph &g, const ClusterStats &s, ScoreKind kind) {
    const auto n_s = static_cast<double>(s.size);
    const auto m_s = static_cast<double>(s.internal_edges);
    const auto c_s = static_cast<double>(s.cut_edges);
    const auto vol = static_cast<double>(s.volume);
    const auto n = static_cast<double>(g.num_nodes());
    const auto m = static_cast<double>(g.num_edges());
    switch (kind) {
    case ScoreKind::Conductance: {
        require_proper(g, s, kind);
        const double denom = std::min(vol, 2.0 * m - vol);
        if (denom <= 0)
            throw ScoreError("Conductance is undefined for a zero-volume side");
        return c_s / denom;
    }
    case ScoreKind::Expansion:
        if (s.size == 0)
            throw ScoreError("Expansion is undefined for an empty cluster");
        return c_s / n_s;
    case ScoreKind::InternalDensity:
        if (s.size == 0)
            throw ScoreError("InternalDensity is undefined for an empty cluster");
        if (s.size == 1)
            return 1.0;
        return 1.0 - m_s / (n_s * (n_s - 1.0) / 2.0);
    case ScoreKind::CutRatio:
        require_proper(g, s, kind);
        return c_s / (n_s * (n - n_s));
    case ScoreKind::NormalizedCut: {
        require_proper(g, s, kind);
        const double rest = 2.0 * m - vol;
        if (vol <= 0 || rest <= 0)
            throw ScoreError("NormalizedCut is undefined for a zero-volume side");
        return c_s / vol + c_s / rest;
    }
    case ScoreKind::Modularity: {
        if (m <= 0)
            throw ScoreError("Modularity is undefined on an edgeless graph");
        const double expected = vol * vol / (4.0 * m);
        return (m_s - expected) / (4.0 * m);
    }
    case ScoreKind::ModularityRatio: {
        if (m <= 0)
            throw ScoreError("ModularityRatio is undefined on an edgeless graph");
        const double expected = vol * vol / (4.0 * m);
        if (expected <= 0)
            throw ScoreError("ModularityRatio is undefined when no internal edges are expected");
        return m_s / expected;
    }
    case ScoreKind::Volume:
        return vol;
    case ScoreKind::EdgesCut:
        return c_s;
    case ScoreKind::MaxODF:
    case ScoreKind::AvgODF:
    case ScoreKind::FlakeODF:
        break;
    }
    throw std::logic_error(std::string(name(kind)) + " needs cluster members");
}

namespace {

// Edges from each member to V \ S, in member order.
std::vector<count> outside_counts(const Graph &g, const Cluster &s) {
    auto &marker = detail::thread_marker(g.num_nodes());
    for (node u : s.members)
        marker.mark(u);
    std::vector<count> out;
    out.reserve(s.members.size());
    for (node u : s.members) {
        if (g.degree(u) == 0)
            throw ScoreError("out-degree fraction is undefined for isolated node " +
                             std::to_string(g.original(u)));
        count outside = 0;
        for (node v : g.neighbors(u))
            outside += !marker.marked(v);
        out.push_back(outside);
    }
    return out;
}

} // namespace

std::vector<double> out_degree_fractions(const Graph &g, const Cluster &s) {
    const auto outside = outside_counts(g, s);
    std::vector<double> out(outside.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(outside[i]) / static_cast<double>(g.degree(s.members[i]));
    return out;
}

ScoreValue score(const Graph &g, const Cluster &s, ScoreKind kind) {
    if (!needs_members(kind))
        return {kind, score_from_stats(g, s.stats, kind)};
    if (s.members.empty())
        throw ScoreError(std::string(name(kind)) + " is undefined for an empty cluster");
    double value = 0;
    switch (kind) {
    case ScoreKind::MaxODF: {
        const auto odf = out_degree_fractions(g, s);
        value = *std::max_element(odf.begin(), odf.end());
        break;
    }
    case ScoreKind::AvgODF: {
        const auto odf = out_degree_fractions(g, s);
        double sum = 0;
        for (double f : odf)
            sum += f;
        value = sum / static_cast<double>(odf.size());
        break;
    }
    case ScoreKind::FlakeODF: {
        const auto outside = outside_counts(g, s);
        count flagged = 0;
        for (std::size_t i = 0; i < outside.size(); ++i) {
            const count d = g.degree(s.members[i]);
            flagged += 2 * (d - outside[i]) < d;
        }
        value = static_cast<double>(flagged) / static_cast<double>(outside.size());
        break;
    }
    default:
        break;
    }
    return {kind, value};
}

std::vector<ScoreEntry> score_all(const Graph &g, const Cluster &s) {
    std::vector<ScoreEntry> out;
    out.reserve(kNumScoreKinds);
    for (ScoreKind kind : kAllScoreKinds) {
        try {
            out.push_back({kind, score(g, s, kind).value, {}});
        } catch (const ScoreError &e) {
            out.push_back({kind, std::nullopt, e.what()});
        }
    }
    return out;
}

namespace {

std::vector<std::uint32_t> bfs_distances(const Graph &h, node source) {
    constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(h.num_nodes(), kInf);
    std::vector<node> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const node u = queue[head];
        for (node v : h.neighbors(u)) {
            if (dist[v] == kInf) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

// Pair index k enumerates (i, j), i < j, column by column: k = j(j-1)/2 + i.
std::pair<node, node> decode_pair(std::uint64_t k) {
    auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
    while (j * (j - 1) / 2 > k)
        --j;
    while ((j + 1) * j / 2 <= k)
        ++j;
    return {static_cast<node>(k - j * (j - 1) / 2), static_cast<node>(j)};
}

} // namespace

double avg_shortest_path(const Graph &g, const Cluster &s, count sample_pairs, std::uint64_t seed) {
    if (s.size() < 2)
        throw ScoreError("average shortest path needs at least two nodes");
    if (sample_pairs == 0)
        throw ScoreError("sample_pairs must be positive");
    const Graph h = induced_subgraph(g, s.members);
    if (!is_connected(h))
        throw ScoreError("average shortest path requires a connected cluster");

    const count k = h.num_nodes();
    const std::uint64_t total_pairs = k * (k - 1) / 2;
    if (total_pairs <= sample_pairs) {
        double sum = 0;
        for (node u = 0; u < k; ++u) {
            const auto dist = bfs_distances(h, u);
            for (node v = u + 1; v < k; ++v)
                sum += dist[v];
        }
        return sum / static_cast<double>(total_pairs);
    }

    // Floyd's algorithm: uniform sample of distinct pair indices.
    std::mt19937_64 rng(seed);
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = total_pairs - sample_pairs; j < total_pairs; ++j) {
        std::uniform_int_distribution<std::uint64_t> pick(0, j);
        const auto t = pick(rng);
        if (!chosen.insert(t).second)
            chosen.insert(j);
    }
    std::map<node, std::vector<node>> by_source;
    for (auto idx : chosen) {
        auto [i, j] = decode_pair(idx);
        by_source[i].push_back(j);
    }
    double sum = 0;
    for (const auto &[u, targets] : by_source) {
        const auto dist = bfs_distances(h, u);
        for (node v : targets)
            sum += dist[v];
    }
    return sum / static_cast<double>(chosen.size());
}

} // namespace ncpkit
