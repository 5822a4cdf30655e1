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

#ifndef NCPKIT_RUN_CONFIG_HPP_
#define NCPKIT_RUN_CONFIG_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <ncpkit/candidate.hpp>
#include <ncpkit/graph.hpp>
#include <ncpkit/scoring.hpp>

namespace ncpkit {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything that determines the outputs of an ncp run.
struct RunConfig {
    std::string graph;
    std::vector<std::string> methods{"local-spectral", "mqi", "global-spectral", "dendrogram"};
    count samples = 0;          // local-spectral seeds; 0 = every node up to 10^4 nodes
    std::size_t trials = 200;   // flow-family trials
    count removals = 0;         // dendrogram edge removals; 0 = default
    std::vector<std::string> scores{"all"};
    std::uint64_t seed = 42;
    std::string out = ".";
    bool exact = false;
    count exact_limit = 18;
    bool connected_only = false; // exact oracle over connected subsets only
    bool keep_lcc = false;
    unsigned workers = 1;

    std::vector<Generator> method_list() const;  // throws ConfigError
    std::vector<ScoreKind> score_list() const;   // throws ConfigError
};

/// Reads "key = value" lines; '#' starts a comment. Unknown keys and
/// malformed values raise ConfigError.
RunConfig parse_run_config(std::istream &in);

/// Applies one key/value pair; shared by the file reader and tests.
void set_config_value(RunConfig &config, const std::string &key, const std::string &value);

/// Writes every field, in a form parse_run_config reads back.
void write_run_config(std::ostream &out, const RunConfig &config);

} // namespace ncpkit

#endif // NCPKIT_RUN_CONFIG_HPP_
