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

#ifndef NCPKIT_CLI_HPP_
#define NCPKIT_CLI_HPP_

#include <iosfwd>

#include <ncpkit/run_config.hpp>

namespace ncpkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFlagged = 3;

/// Entry point of the ncpkit tool: subcommands stats, ncp, bounds and score.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// The ncp subcommand on a resolved configuration; writes ncp.csv,
/// candidates.jsonl, bias.csv and run.conf (plus dendrogram.txt and
/// ncp_exact.csv when applicable) into config.out.
int run_ncp(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace ncpkit

#endif // NCPKIT_CLI_HPP_
