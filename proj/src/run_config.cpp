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

#include <ncpkit/run_config.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace ncpkit {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (auto t = trim(item); !t.empty())
            out.push_back(t);
    return out;
}

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? "," : "") + items[i];
    return out;
}

template <typename T>
T parse_integer(const std::string &key, const std::string &value) {
    T out{};
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || end != value.data() + value.size())
        throw ConfigError("invalid value for " + key + ": '" + value + "'");
    return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw ConfigError("invalid value for " + key + ": '" + value + "'");
}

} // namespace

std::vector<Generator> RunConfig::method_list() const {
    std::vector<Generator> out;
    for (const auto &m : methods) {
        if (m == "all") {
            for (Generator g : {Generator::LocalSpectral, Generator::Mqi, Generator::GlobalSpectral,
                                Generator::Dendrogram})
                if (std::find(out.begin(), out.end(), g) == out.end())
                    out.push_back(g);
            continue;
        }
        auto g = parse_generator(m);
        if (!g || *g == Generator::Oracle || *g == Generator::SplitChild)
            throw ConfigError("unknown method '" + m + "'");
        if (std::find(out.begin(), out.end(), *g) == out.end())
            out.push_back(*g);
    }
    if (out.empty())
        throw ConfigError("no methods given");
    return out;
}

std::vector<ScoreKind> RunConfig::score_list() const {
    std::vector<ScoreKind> out;
    for (const auto &s : scores) {
        if (s == "all") {
            for (ScoreKind k : kAllScoreKinds)
                if (std::find(out.begin(), out.end(), k) == out.end())
                    out.push_back(k);
            continue;
        }
        auto k = parse_score_kind(s);
        if (!k)
            throw ConfigError("unknown score '" + s + "'");
        if (std::find(out.begin(), out.end(), *k) == out.end())
            out.push_back(*k);
    }
    if (out.empty())
        throw ConfigError("no scores given");
    return out;
}

void set_config_value(RunConfig &c, const std::string &key, const std::string &value) {
    if (key == "graph")
        c.graph = value;
    else if (key == "methods")
        c.methods = split_list(value);
    else if (key == "samples")
        c.samples = parse_integer<count>(key, value);
    else if (key == "trials")
        c.trials = parse_integer<std::size_t>(key, value);
    else if (key == "removals")
        c.removals = parse_integer<count>(key, value);
    else if (key == "scores")
        c.scores = split_list(value);
    else if (key == "seed")
        c.seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "out")
        c.out = value;
    else if (key == "exact")
        c.exact = parse_bool(key, value);
    else if (key == "exact_limit")
        c.exact_limit = parse_integer<count>(key, value);
    else if (key == "connected_only")
        c.connected_only = parse_bool(key, value);
    else if (key == "keep_lcc")
        c.keep_lcc = parse_bool(key, value);
    else if (key == "workers")
        c.workers = parse_integer<unsigned>(key, value);
    else
        throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_run_config(std::istream &in) {
    RunConfig config;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        set_config_value(config, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return config;
}

void write_run_config(std::ostream &out, const RunConfig &c) {
    out << "graph = " << c.graph << '\n'
        << "methods = " << join(c.methods) << '\n'
        << "samples = " << c.samples << '\n'
        << "trials = " << c.trials << '\n'
        << "removals = " << c.removals << '\n'
        << "scores = " << join(c.scores) << '\n'
        << "seed = " << c.seed << '\n'
        << "out = " << c.out << '\n'
        << "exact = " << (c.exact ? "true" : "false") << '\n'
        << "exact_limit = " << c.exact_limit << '\n'
        << "connected_only = " << (c.connected_only ? "true" : "false") << '\n'
        << "keep_lcc = " << (c.keep_lcc ? "true" : "false") << '\n'
        << "workers = " << c.workers << '\n';
}

} // namespace ncpkit
