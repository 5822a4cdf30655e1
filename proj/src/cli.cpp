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

#include <ncpkit/cli.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <ncpkit/baselines.hpp>
#include <ncpkit/bounds.hpp>
#include <ncpkit/ncp.hpp>

namespace ncpkit {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const fs::path &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + path.string());
    return f;
}

Graph load_graph(const std::string &path, bool keep_lcc) {
    if (path.empty())
        throw UsageError("--graph is required");
    return load_edge_list(fs::path(path), LoadOptions{keep_lcc});
}

std::vector<node> read_cluster_file(const Graph &g, const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open cluster file " + path);
    std::vector<node> members;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#')
            continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(b, e - b + 1);
        original_id id = 0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
        if (ec != std::errc() || end != token.data() + token.size())
            throw UsageError(path + ":" + std::to_string(number) + ": expected one node id");
        auto u = g.find_original(id);
        if (!u)
            throw UsageError(path + ":" + std::to_string(number) + ": node " + token + " is not in the graph");
        members.push_back(*u);
    }
    return members;
}

int cmd_stats(const std::string &graph, bool keep_lcc, std::ostream &out) {
    const Graph g = load_graph(graph, keep_lcc);
    const auto components = connected_components(g);
    count min_deg = g.num_nodes() ? g.degree(0) : 0;
    for (node u = 0; u < g.num_nodes(); ++u)
        min_deg = std::min(min_deg, g.degree(u));
    out << "n=" << g.num_nodes() << " m=" << g.num_edges() << " components=" << components.size() << '\n';
    out << "min_degree=" << min_deg << " max_degree=" << g.max_degree() << " mean_degree="
        << format_number(static_cast<double>(g.total_volume()) / static_cast<double>(g.num_nodes())) << '\n';
    std::size_t largest = 0;
    for (const auto &c : components)
        largest = std::max(largest, c.size());
    out << "largest_component=" << largest << '\n';
    return kExitOk;
}

int cmd_score(const std::string &graph, bool keep_lcc, const std::vector<std::string> &clusters,
              const std::vector<std::string> &score_names, bool all, const std::string &out_path, std::ostream &out) {
    const Graph g = load_graph(graph, keep_lcc);
    if (clusters.empty())
        throw UsageError("--cluster is required");
    RunConfig c;
    c.scores = all || score_names.empty() ? std::vector<std::string>{"all"} : score_names;
    const auto kinds = c.score_list();
    std::ostringstream rows;
    rows << "cluster_id,k,kind,value\n";
    for (std::size_t id = 0; id < clusters.size(); ++id) {
        Cluster s;
        try {
            s = cluster_stats(g, read_cluster_file(g, clusters[id]));
        } catch (const ClusterError &e) {
            throw UsageError(clusters[id] + ": " + e.what());
        }
        for (ScoreKind kind : kinds) {
            double value = std::numeric_limits<double>::quiet_NaN();
            try {
                value = score(g, s, kind).value;
            } catch (const ScoreError &) {
            }
            rows << id << ',' << s.size() << ',' << name(kind) << ',' << format_number(value) << '\n';
        }
    }
    if (out_path.empty()) {
        out << rows.str();
    } else {
        auto f = open_output(out_path);
        f << rows.str();
    }
    return kExitOk;
}

struct BoundsArgs {
    std::string graph;
    bool keep_lcc = false;
    bool sdp = false;
    bool allow_disconnected = false;
    std::string out;
    std::string name;
    std::size_t rank = 0;
    std::size_t iterations = 6000;
    std::uint64_t seed = 1;
};

int cmd_bounds(const BoundsArgs &a, std::ostream &out, std::ostream &err) {
    const Graph g = load_graph(a.graph, a.keep_lcc);
    const bool connected = is_connected(g);
    if (!connected && !a.allow_disconnected)
        throw UsageError("graph is disconnected; pass --keep-lcc or --allow-disconnected");
    std::string network = a.name.empty() ? fs::path(a.graph).stem().string() : a.name;
    SdpOptions sdp;
    sdp.rank = a.rank;
    sdp.iterations = a.iterations;
    sdp.seed = a.seed;
    SpectralOptions spectral;
    spectral.seed = a.seed;
    const bool with_sdp = a.sdp && connected;
    if (a.sdp && !connected)
        err << "warning: the SDP bound needs a connected graph; skipped\n";
    std::vector<BoundsReport> rows{bounds_report(g, network, with_sdp, spectral, sdp)};
    std::ostringstream csv;
    write_bounds_csv(csv, rows);
    out << csv.str();
    if (!a.out.empty()) {
        fs::create_directories(a.out);
        auto f = open_output(fs::path(a.out) / "bounds.csv");
        f << csv.str();
    }
    if (!rows.front().certified) {
        err << "warning: bound flagged (eigen residual or dual certificate check failed)\n";
        return kExitFlagged;
    }
    return kExitOk;
}

void write_exact_csv(std::ostream &out, const Graph &g, std::span<const ExactNcp> exact) {
    out << "kind,k,phi,members\n";
    for (const auto &e : exact)
        for (const auto &[k, p] : e.profile.envelope) {
            out << name(e.profile.kind) << ',' << k << ',' << format_number(p.value) << ',';
            const auto members = e.witnesses[p.witness].nodes.sorted();
            for (std::size_t i = 0; i < members.size(); ++i)
                out << (i ? " " : "") << g.original(members[i]);
            out << '\n';
        }
}

} // namespace

int run_ncp(const RunConfig &config, std::ostream &out, std::ostream &) {
    const auto methods = config.method_list();
    const auto kinds = config.score_list();
    const Graph g = load_graph(config.graph, config.keep_lcc);
    if (config.exact && g.num_nodes() > config.exact_limit)
        throw UsageError("--exact needs n <= " + std::to_string(config.exact_limit) + " (graph has " +
                         std::to_string(g.num_nodes()) + " nodes)");
    const bool connected = is_connected(g);

    GenerationOptions gen;
    gen.seed_sample = config.samples;
    gen.flow_trials = config.trials;
    gen.max_removals = config.removals;
    gen.seed = config.seed;
    gen.workers = config.workers;

    std::vector<ScoredCluster> raw;
    std::optional<Dendrogram> tree;
    for (Generator m : methods) {
        std::vector<ScoredCluster> part;
        if (m == Generator::GlobalSpectral && !connected)
            throw UsageError("global-spectral needs a connected graph; pass --keep-lcc");
        if (m == Generator::Dendrogram) {
            auto result = gn_dendrogram(g, config.removals ? config.removals : default_max_removals(g), config.workers);
            tree = std::move(result.tree);
            part = std::move(result.pieces);
        } else {
            gen.methods = {m};
            part = generate_candidates(g, gen);
        }
        for (auto &c : part)
            raw.push_back(std::move(c));
    }

    std::vector<ScoredCluster> pool = raw;
    for (auto &c : split_children(g, raw))
        pool.push_back(std::move(c));

    std::vector<NcpProfile> profiles;
    for (ScoreKind kind : kinds)
        profiles.push_back(build_ncp(g, pool, kind, NcpOptions{true}));
    ensure_scores(g, pool, kinds);

    BiasOptions bias_opts;
    bias_opts.workers = config.workers;
    bias_opts.seed = config.seed;
    bias_opts.internal.seed = config.seed;
    std::vector<ScoredCluster> raw_scored(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(raw.size()));
    const auto bias = bias_report(g, raw_scored, bias_opts);

    const fs::path dir(config.out);
    fs::create_directories(dir);
    {
        auto f = open_output(dir / "ncp.csv");
        write_ncp_csv(f, profiles, pool);
    }
    {
        auto f = open_output(dir / "candidates.jsonl");
        write_candidates_jsonl(f, g, pool);
    }
    {
        auto f = open_output(dir / "bias.csv");
        write_bias_csv(f, bias);
    }
    {
        auto f = open_output(dir / "run.conf");
        write_run_config(f, config);
    }
    if (tree) {
        auto f = open_output(dir / "dendrogram.txt");
        f << serialize_dendrogram(g, *tree) << '\n';
    }
    if (config.exact) {
        std::vector<ExactNcp> exact;
        for (ScoreKind kind : kinds)
            exact.push_back(exact_ncp(g, kind, config.exact_limit, config.connected_only));
        auto f = open_output(dir / "ncp_exact.csv");
        write_exact_csv(f, g, exact);
    }
    const auto disconnected = std::count_if(raw.begin(), raw.end(), [](const auto &c) { return !c.connected; });
    out << "n=" << g.num_nodes() << " m=" << g.num_edges() << " candidates=" << raw.size()
        << " disconnected=" << disconnected << " split_children=" << pool.size() - raw.size() << '\n';
    return kExitOk;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"ncpkit: network community profiles, community scores and conductance lower bounds", "ncpkit"};
    app.require_subcommand(1);

    std::string graph;
    bool keep_lcc = false;

    auto *stats = app.add_subcommand("stats", "Print node, edge, degree and component counts");
    stats->add_option("--graph", graph, "Edge list file")->required();
    stats->add_flag("--keep-lcc", keep_lcc, "Keep only the largest connected component");

    RunConfig cfg;
    std::string config_path;
    std::string methods_arg, scores_arg;
    auto *ncp = app.add_subcommand("ncp", "Generate candidates and write NCP, candidate and bias files");
    ncp->add_option("--config", config_path, "File of key = value lines; flags override it");
    ncp->add_option("--graph", cfg.graph, "Edge list file");
    ncp->add_option("--methods", methods_arg, "Comma list of local-spectral, mqi, global-spectral, dendrogram, all");
    ncp->add_option("--samples", cfg.samples, "Local-spectral seed sample size (0 = every node)");
    ncp->add_option("--trials", cfg.trials, "Bisection + MQI trials");
    ncp->add_option("--removals", cfg.removals, "Dendrogram edge removals (0 = default)");
    ncp->add_option("--seed", cfg.seed, "Global seed");
    ncp->add_option("--scores", scores_arg, "Comma list of score kinds, or all");
    ncp->add_option("--out", cfg.out, "Output directory");
    ncp->add_flag("--exact", cfg.exact, "Also write the exact profile (small graphs)");
    ncp->add_option("--exact-limit", cfg.exact_limit, "Largest n for --exact");
    ncp->add_flag("--connected-only", cfg.connected_only, "Exact profile over connected subsets only");
    ncp->add_flag("--keep-lcc", cfg.keep_lcc, "Keep only the largest connected component");
    ncp->add_option("--workers", cfg.workers, "Worker threads");

    BoundsArgs bargs;
    auto *bounds = app.add_subcommand("bounds", "Spectral and SDP conductance lower bounds");
    bounds->add_option("--graph", bargs.graph, "Edge list file")->required();
    bounds->add_flag("--sdp", bargs.sdp, "Also compute the certified SDP bound");
    bounds->add_flag("--keep-lcc", bargs.keep_lcc, "Keep only the largest connected component");
    bounds->add_flag("--allow-disconnected", bargs.allow_disconnected, "Report a zero spectral bound instead of failing");
    bounds->add_option("--out", bargs.out, "Directory for bounds.csv");
    bounds->add_option("--name", bargs.name, "Network name in the output row");
    bounds->add_option("--rank", bargs.rank, "Embedding rank (0 = automatic)");
    bounds->add_option("--iterations", bargs.iterations, "Primal descent steps");
    bounds->add_option("--seed", bargs.seed, "Seed");

    std::vector<std::string> cluster_files, score_names;
    bool all_scores = false;
    std::string score_out;
    auto *score_cmd = app.add_subcommand("score", "Score node sets read from cluster files");
    score_cmd->add_option("--graph", graph, "Edge list file")->required();
    score_cmd->add_option("--cluster", cluster_files, "Cluster file (one original node id per line)")->required();
    score_cmd->add_option("--scores", score_names, "Score kinds")->delimiter(',');
    score_cmd->add_flag("--all", all_scores, "All twelve scores");
    score_cmd->add_flag("--keep-lcc", keep_lcc, "Keep only the largest connected component");
    score_cmd->add_option("--out", score_out, "Write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (stats->parsed())
            return cmd_stats(graph, keep_lcc, out);
        if (score_cmd->parsed())
            return cmd_score(graph, keep_lcc, cluster_files, score_names, all_scores, score_out, out);
        if (bounds->parsed())
            return cmd_bounds(bargs, out, err);
        if (ncp->parsed()) {
            RunConfig resolved;
            if (!config_path.empty()) {
                std::ifstream f(config_path);
                if (!f)
                    throw UsageError("cannot open config " + config_path);
                resolved = parse_run_config(f);
            }
            auto given = [&](const char *flag) { return ncp->count(flag) > 0; };
            if (given("--graph"))
                resolved.graph = cfg.graph;
            if (given("--methods"))
                set_config_value(resolved, "methods", methods_arg);
            if (given("--samples"))
                resolved.samples = cfg.samples;
            if (given("--trials"))
                resolved.trials = cfg.trials;
            if (given("--removals"))
                resolved.removals = cfg.removals;
            if (given("--seed"))
                resolved.seed = cfg.seed;
            if (given("--scores"))
                set_config_value(resolved, "scores", scores_arg);
            if (given("--out"))
                resolved.out = cfg.out;
            if (given("--exact"))
                resolved.exact = true;
            if (given("--exact-limit"))
                resolved.exact_limit = cfg.exact_limit;
            if (given("--connected-only"))
                resolved.connected_only = true;
            if (given("--keep-lcc"))
                resolved.keep_lcc = true;
            if (given("--workers"))
                resolved.workers = cfg.workers;
            return run_ncp(resolved, out, err);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ClusterError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::system_error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace ncpkit
