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


#include <gtest/gtest.h>

#include <sstream>

#include <ncpkit/run_config.hpp>

namespace ncpkit {
namespace {

TEST(RunConfigGTest, testRoundTrip) {
    RunConfig c;
    c.graph = "data/karate.txt";
    c.methods = {"mqi", "dendrogram"};
    c.samples = 7;
    c.trials = 3;
    c.removals = 9;
    c.scores = {"Conductance", "Modularity"};
    c.seed = 99;
    c.out = "/tmp/x";
    c.exact = true;
    c.exact_limit = 12;
    c.connected_only = true;
    c.keep_lcc = true;
    c.workers = 4;
    std::ostringstream out;
    write_run_config(out, c);
    std::istringstream in(out.str());
    const RunConfig r = parse_run_config(in);
    std::ostringstream again;
    write_run_config(again, r);
    EXPECT_EQ(out.str(), again.str());
    EXPECT_EQ(r.method_list(), (std::vector<Generator>{Generator::Mqi, Generator::Dendrogram}));
    EXPECT_EQ(r.score_list(), (std::vector<ScoreKind>{ScoreKind::Conductance, ScoreKind::Modularity}));
}

TEST(RunConfigGTest, testCommentsAndErrors) {
    std::istringstream ok("# header\n\nseed = 5\n  workers=2  \n");
    const RunConfig c = parse_run_config(ok);
    EXPECT_EQ(c.seed, 5u);
    EXPECT_EQ(c.workers, 2u);
    std::istringstream unknown("colour = red\n");
    EXPECT_THROW(parse_run_config(unknown), ConfigError);
    std::istringstream bad("seed = x\n");
    EXPECT_THROW(parse_run_config(bad), ConfigError);
    std::istringstream missing("seed 5\n");
    try {
        parse_run_config(missing);
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
    }
}

TEST(RunConfigGTest, testMethodAndScoreLists) {
    RunConfig c;
    c.methods = {"all"};
    EXPECT_EQ(c.method_list().size(), 4u);
    c.methods = {"metis"};
    EXPECT_THROW(c.method_list(), ConfigError);
    c.methods = {"oracle"};
    EXPECT_THROW(c.method_list(), ConfigError);
    c.scores = {"all"};
    EXPECT_EQ(c.score_list().size(), kNumScoreKinds);
    c.scores = {"Bogus"};
    EXPECT_THROW(c.score_list(), ConfigError);
}

} // namespace
} // namespace ncpkit
