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

#include <ncpkit/ncp.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include <ncpkit/baselines.hpp>
#include <ncpkit/parallel.hpp>

namespace ncpkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::vector<ScoredCluster> split_children(const Graph &g, const std::vector<ScoredCluster> &candidates) {
    std::vector<ScoredCluster> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto &c = candidates[i];
        if (c.connected)
            continue;
        for (auto &part : connected_components(g, c.nodes.view())) {
            Provenance prov = c.provenance;
            prov.generator = Generator::SplitChild;
            prov.parent = static_cast<std::int64_t>(i);
            out.push_back(make_candidate(g, std::move(part), prov));
        }
    }
    return out;
}

std::vector<ScoredCluster> split_disconnected(const Graph &g, const std::vector<ScoredCluster> &candidates) {
    std::vector<ScoredCluster> out;
    out.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto &c = candidates[i];
        if (c.connected) {
            out.push_back(c);
            continue;
        }
        for (auto &part : connected_components(g, c.nodes.view())) {
            Provenance prov = c.provenance;
            prov.generator = Generator::SplitChild;
            prov.parent = static_cast<std::int64_t>(i);
            out.push_back(make_candidate(g, std::move(part), prov));
        }
    }
    return out;
}

std::optional<double> NcpProfile::at(count k) const {
    auto it = envelope.find(k);
    if (it == envelope.end())
        return std::nullopt;
    return it->second.value;
}

bool better_value(ScoreKind kind, double a, double b) {
    return orientation(kind) == Orientation::HigherIsBetter ? a > b : a < b;
}

NcpProfile build_ncp(const Graph &g, std::span<ScoredCluster> candidates, ScoreKind kind, const NcpOptions &options) {
    NcpProfile profile;
    profile.kind = kind;
    const count n = g.num_nodes();
    const count half = n / 2;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto &c = candidates[i];
        if (options.skip_disconnected && !c.connected)
            continue;
        count k = c.size();
        bool complemented = false;
        if (k > half) {
            if (!boundary_symmetric(kind) || k >= n)
                continue;
            k = n - k;
            complemented = true;
        }
        if (k == 0)
            continue;
        ensure_score(g, c, kind);
        const double value = c.cached(kind);
        if (std::isnan(value))
            continue;
        auto it = profile.envelope.find(k);
        const bool improves = it == profile.envelope.end() || better_value(kind, value, it->second.value);
        if (!improves)
            continue;
        if (complemented && options.skip_disconnected) {
            const auto members = c.nodes.sorted();
            if (!is_connected(g, complement(g, members)))
                continue;
        }
        if (it == profile.envelope.end())
            profile.envelope.emplace(k, NcpPoint{value, i, complemented});
        else
            it->second = NcpPoint{value, i, complemented};
    }
    return profile;
}

NcpProfile merge_profiles(const NcpProfile &a, const NcpProfile &b, std::size_t b_offset) {
    if (a.kind != b.kind)
        throw std::invalid_argument("merging profiles of different kinds");
    NcpProfile out = a;
    for (const auto &[k, p] : b.envelope) {
        NcpPoint shifted{p.value, p.witness + b_offset, p.complemented};
        auto it = out.envelope.find(k);
        if (it == out.envelope.end())
            out.envelope.emplace(k, shifted);
        else if (better_value(a.kind, p.value, it->second.value))
            it->second = shifted;
    }
    return out;
}

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const Graph &g) {
    std::vector<Mask> adj(g.num_nodes(), 0);
    for (node u = 0; u < g.num_nodes(); ++u)
        for (node v : g.neighbors(u))
            adj[u] |= Mask{1} << v;
    return adj;
}

bool mask_connected(const std::vector<Mask> &adj, Mask s) {
    if (s == 0)
        return false;
    Mask seen = s & (~s + 1);
    Mask frontier = seen;
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1)
            next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        next &= s & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen == s;
}

std::vector<node> mask_members(Mask s) {
    std::vector<node> out;
    for (; s; s &= s - 1)
        out.push_back(static_cast<node>(std::countr_zero(s)));
    return out;
}

} // namespace

ExactNcp exact_ncp(const Graph &g, ScoreKind kind, count max_n, bool connected_only) {
    const count n = g.num_nodes();
    if (n > max_n || n > 30)
        throw std::invalid_argument("exact NCP limited to " + std::to_string(std::min<count>(max_n, 30)) + " nodes");
    const auto adj = adjacency_masks(g);
    const count half = n / 2;
    struct Best {
        bool set = false;
        double value = 0;
        Mask mask = 0;
    };
    std::vector<Best> best(half + 1);
    const Mask limit = n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1);
    for (Mask s = 1; s != 0 && s <= limit; ++s) {
        const auto k = static_cast<count>(std::popcount(s));
        if (k > half)
            continue;
        if (connected_only && !mask_connected(adj, s))
            continue;
        double value;
        try {
            if (needs_members(kind)) {
                value = score(g, cluster_stats(g, mask_members(s)), kind).value;
            } else {
                ClusterStats st;
                st.size = k;
                count twice_internal = 0;
                for (Mask f = s; f; f &= f - 1) {
                    const auto u = static_cast<std::size_t>(std::countr_zero(f));
                    st.volume += g.degree(static_cast<node>(u));
                    twice_internal += static_cast<count>(std::popcount(adj[u] & s));
                }
                st.internal_edges = twice_internal / 2;
                st.cut_edges = st.volume - twice_internal;
                value = score_from_stats(g, st, kind);
            }
        } catch (const ScoreError &) {
            continue;
        }
        auto &b = best[k];
        bool take = !b.set || better_value(kind, value, b.value);
        if (!take && value == b.value) {
            // Same size: the smaller list holds the smallest differing element.
            const Mask diff = s ^ b.mask;
            take = (s & diff & (~diff + 1)) != 0;
        }
        if (take)
            b = {true, value, s};
        if (s == limit)
            break;
    }
    ExactNcp out;
    out.profile.kind = kind;
    for (count k = 1; k <= half; ++k) {
        if (!best[k].set)
            continue;
        Provenance prov;
        prov.generator = Generator::Oracle;
        ScoredCluster c = make_candidate(g, mask_members(best[k].mask), prov);
        c.scores[static_cast<std::size_t>(kind)] = best[k].value;
        out.profile.envelope.emplace(k, NcpPoint{best[k].value, out.witnesses.size(), false});
        out.witnesses.push_back(std::move(c));
    }
    return out;
}

double exact_min_conductance(const Graph &g) {
    const count n = g.num_nodes();
    if (n < 2)
        throw std::invalid_argument("minimum conductance needs at least two nodes");
    if (n > 24)
        throw std::invalid_argument("exact minimum conductance limited to 24 nodes");
    const auto adj = adjacency_masks(g);
    const auto total = static_cast<std::int64_t>(g.total_volume());
    // Subsets of the first n-1 nodes cover every cut once (phi is symmetric).
    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    Mask s = 0;
    std::int64_t vol = 0, internal = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 1; i < steps; ++i) {
        const auto u = static_cast<std::size_t>(std::countr_zero(i));
        const Mask bit = Mask{1} << u;
        const auto links = static_cast<std::int64_t>(std::popcount(adj[u] & s));
        if (s & bit) {
            s &= ~bit;
            vol -= static_cast<std::int64_t>(g.degree(static_cast<node>(u)));
            internal -= links;
        } else {
            s |= bit;
            vol += static_cast<std::int64_t>(g.degree(static_cast<node>(u)));
            internal += links;
        }
        const std::int64_t den = std::min(vol, total - vol);
        if (den <= 0)
            continue;
        const double phi = static_cast<double>(vol - 2 * internal) / static_cast<double>(den);
        best = std::min(best, phi);
    }
    return best;
}

double internal_conductance(const Graph &g, const Cluster &s, const InternalBudget &budget) {
    if (s.size() < 2)
        throw ClusterError("internal conductance needs at least two nodes");
    const Graph h = induced_subgraph(g, s.members);
    if (!is_connected(h))
        throw ClusterError("internal conductance needs a connected cluster");
    if (h.num_nodes() <= std::min<count>(budget.exact_limit, 24))
        return exact_min_conductance(h);

    double best = std::numeric_limits<double>::infinity();
    const auto seeds = select_seeds(h, budget.seed_sample, budget.seed);
    for (const auto &c : local_spectral_sample(h, seeds, LocalSpectralParams::defaults(h)))
        if (c.has_score(ScoreKind::Conductance))
            best = std::min(best, c.cached(ScoreKind::Conductance));
    const Bisection b = bisect(h, budget.seed);
    const Cluster improved = mqi(h, b.side_a);
    const ClusterStats &st = improved.stats;
    if (st.size > 0 && st.size < h.num_nodes() && st.volume > 0 && st.volume < h.total_volume())
        best = std::min(best, score_from_stats(h, st, ScoreKind::Conductance));
    return best;
}

std::vector<BiasRow> bias_report(const Graph &g, const std::vector<ScoredCluster> &candidates,
                                 const BiasOptions &options) {
    // Distinct member sets whose internal metrics are needed.
    std::map<std::vector<node>, std::size_t> index;
    std::vector<const std::vector<node> *> targets;
    std::vector<std::size_t> target_of(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto &c = candidates[i];
        std::vector<node> members = c.nodes.sorted();
        if (!c.connected) {
            auto parts = connected_components(g, members);
            auto largest = std::max_element(parts.begin(), parts.end(), [](const auto &a, const auto &b) {
                if (a.size() != b.size())
                    return a.size() < b.size();
                return a.front() > b.front();
            });
            members = std::move(*largest);
        }
        auto [it, fresh] = index.emplace(std::move(members), targets.size());
        if (fresh)
            targets.push_back(&it->first);
        target_of[i] = it->second;
    }

    std::vector<std::pair<double, double>> metrics(targets.size());
    parallel_for(targets.size(), options.workers, [&](std::size_t t) {
        const auto &members = *targets[t];
        if (members.size() == 1) {
            metrics[t] = {1.0, 0.0};
            return;
        }
        const Cluster cl = cluster_stats(g, members);
        metrics[t] = {internal_conductance(g, cl, options.internal),
                      avg_shortest_path(g, cl, options.sample_pairs, options.seed)};
    });

    std::vector<BiasRow> rows;
    rows.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto &c = candidates[i];
        BiasRow row;
        row.generator = c.provenance.generator;
        row.k = c.size();
        double ext = c.cached(ScoreKind::Conductance);
        if (std::isnan(ext)) {
            try {
                ext = score_from_stats(g, c.stats, ScoreKind::Conductance);
            } catch (const ScoreError &) {
                ext = kNaN;
            }
        }
        row.phi_external = ext;
        row.phi_internal = metrics[target_of[i]].first;
        row.avg_path = metrics[target_of[i]].second;
        row.ratio = row.phi_internal > 0 ? row.phi_external / row.phi_internal : kNaN;
        row.connected = c.connected;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScoredCluster> generate_candidates(const Graph &g, const GenerationOptions &options) {
    std::vector<ScoredCluster> out;
    auto append = [&](std::vector<ScoredCluster> part) {
        out.reserve(out.size() + part.size());
        for (auto &c : part)
            out.push_back(std::move(c));
    };
    for (Generator method : options.methods) {
        switch (method) {
        case Generator::LocalSpectral: {
            count sample = options.seed_sample;
            if (sample == 0 && g.num_nodes() > 10000)
                sample = 1000;
            const auto seeds = select_seeds(g, sample, options.seed);
            const auto params = options.params ? *options.params : LocalSpectralParams::defaults(g);
            append(local_spectral_sample(g, seeds, params, options.workers));
            break;
        }
        case Generator::Mqi:
            append(metis_mqi_sample(g, options.flow_trials, options.seed, options.flow, options.workers));
            break;
        case Generator::GlobalSpectral:
            append(global_spectral_sweep(g));
            break;
        case Generator::Dendrogram: {
            const count removals = options.max_removals ? options.max_removals : default_max_removals(g);
            append(gn_dendrogram(g, removals, options.workers).pieces);
            break;
        }
        default:
            throw std::invalid_argument("not a candidate generator: " + std::string(generator_name(method)));
        }
    }
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x))
        return "nan";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, end);
}

void write_ncp_csv(std::ostream &out, std::span<const NcpProfile> profiles, std::span<const ScoredCluster> candidates) {
    out << "kind,k,phi,witness_id,generator\n";
    for (const auto &p : profiles)
        for (const auto &[k, point] : p.envelope)
            out << name(p.kind) << ',' << k << ',' << format_number(point.value) << ',' << point.witness << ','
                << generator_name(candidates[point.witness].provenance.generator) << '\n';
}

void write_candidates_jsonl(std::ostream &out, const Graph &g, std::span<const ScoredCluster> candidates) {
    auto opt_int = [](std::int64_t v) { return v < 0 ? nlohmann::ordered_json() : nlohmann::ordered_json(v); };
    auto opt_real = [](double v) { return std::isnan(v) ? nlohmann::ordered_json() : nlohmann::ordered_json(v); };
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto &c = candidates[i];
        const auto &p = c.provenance;
        nlohmann::ordered_json j;
        j["id"] = i;
        j["generator"] = generator_name(p.generator);
        j["k"] = c.stats.size;
        j["internal_edges"] = c.stats.internal_edges;
        j["cut_edges"] = c.stats.cut_edges;
        j["volume"] = c.stats.volume;
        j["connected"] = c.connected;
        j["seed_node"] = p.seed_node < 0 ? nlohmann::ordered_json() : nlohmann::ordered_json(g.original(static_cast<node>(p.seed_node)));
        j["alpha"] = opt_real(p.alpha);
        j["epsilon"] = opt_real(p.epsilon);
        j["run_seed"] = opt_int(p.run_seed);
        j["trial"] = opt_int(p.trial);
        j["depth"] = opt_int(p.depth);
        j["parent"] = opt_int(p.parent);
        nlohmann::ordered_json scores = nlohmann::ordered_json::object();
        for (ScoreKind kind : kAllScoreKinds)
            if (c.has_score(kind))
                scores[std::string(name(kind))] = c.cached(kind);
        j["scores"] = std::move(scores);
        std::vector<original_id> members;
        for (node u : c.nodes.sorted())
            members.push_back(g.original(u));
        j["members"] = std::move(members);
        out << j.dump() << '\n';
    }
}

void write_bias_csv(std::ostream &out, std::span<const BiasRow> rows) {
    out << "generator,k,phi_external,phi_internal,ratio,avg_path,connected\n";
    for (const auto &r : rows)
        out << generator_name(r.generator) << ',' << r.k << ',' << format_number(r.phi_external) << ','
            << format_number(r.phi_internal) << ',' << format_number(r.ratio) << ',' << format_number(r.avg_path)
            << ',' << (r.connected ? "true" : "false") << '\n';
}

} // namespace ncpkit
