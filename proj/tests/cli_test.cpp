// Copyright 2026 The Speller Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "fixture.hpp"
#include "speller/cli.hpp"
#include "temp_dir.hpp"

namespace speller {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  CliRun r;
  r.code = cli_main(args, out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int run_binary(const std::string& args) {
  const std::string command = std::string(SPELLER_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string toy_lexicon() {
  std::string text = "# term\tcount\n";
  for (const auto& [term, count] : testing::toy_vocabulary()) {
    text += term + "\t" + std::to_string(count) + "\n";
  }
  return text;
}

TEST(Cli, UnknownSubcommandExitsTwo) {
  const auto r = run({"bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run_binary("bogus"), 2);
  EXPECT_EQ(run_binary("correct --no-such-flag"), 2);
  EXPECT_EQ(run_binary(""), 2);
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("correct --help"), 0);
}

TEST(Cli, MissingRequiredFlagExitsTwo) {
  EXPECT_EQ(run({"correct", "muzeem"}).code, 2);
  EXPECT_EQ(run({"build-index", "--out", "x"}).code, 2);
}

TEST(Cli, RuntimeFailureIsOneLine) {
  testing::TempDir dir;
  const auto r = run({"correct", "--artifacts", (dir / "nothing").string(), "muzeem"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("speller: ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
}

TEST(Cli, CorrectFromArgumentsAndStdin) {
  testing::TempDir dir;
  testing::write_toy_artifact_dir(dir.path());
  auto r = run({"correct", "--artifacts", dir.path().string(), "muzeem"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("muzeem\tmuseum\t", 0), 0u) << r.out;

  r = run({"correct", "--artifacts", dir.path().string()}, "creativecloud\nmuseum\n\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "creativecloud\tcreative cloud\t1.0000\nmuseum\tmuseum\t1.0000\n");

  r = run({"correct", "--artifacts", dir.path().string(), "--locale", "xx", "cat"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, EvalOnHandCountedFixture) {
  testing::TempDir dir;
  const auto data = testing::write_text(dir / "eval.tsv",
                                        "muzeem\tmuseum\tmuseum\n"
                                        ",edal icon\tmedal icon\tmedal icon\n"
                                        "creativecloud\tcreative cloud\tcreative cloud\n"
                                        "glacier natoinal park\tglacier national park\tglacier national park\n"
                                        "atlantik mackerel\tatlantic mackerel\tatlantic mackerel\n"
                                        "burgandy background\tburgundy background\tburgandy background\n"
                                        "pedal\tpedal\tmedal\n"
                                        "cat\tcat\tcat\n"
                                        "river\triver\triver\n"
                                        "night city\tnight city\tnight city\n");
  auto r = run({"eval", "--data", data.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("accuracy   0.8000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("precision  0.8333"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("recall     0.8333"), std::string::npos) << r.out;

  r = run({"eval", "--data", data.string(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"accuracy\":0.8"), std::string::npos) << r.out;

  const auto no_predictions = testing::write_text(dir / "pairs.tsv", "muzeem\tmuseum\n");
  EXPECT_EQ(run({"eval", "--data", no_predictions.string()}).code, 1);
}

TEST(Cli, EvalRunsThePipeline) {
  testing::TempDir dir;
  testing::write_toy_artifact_dir(dir.path());
  const auto data = testing::write_text(dir / "eval.tsv",
                                        "muzeem\tmuseum\ncreativecloud\tcreative cloud\n");
  const auto r = run({"eval", "--data", data.string(), "--artifacts", dir.path().string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("accuracy   1.0000"), std::string::npos) << r.out;
}

TEST(Cli, BuildIndexIsDeterministic) {
  testing::TempDir dir;
  const auto lexicon = testing::write_text(dir / "lexicon.tsv", toy_lexicon());
  const auto vocab = testing::write_text(dir / "vocab.txt", "photoshop\t50\nlightroom\t20\n");
  const auto stats = testing::write_text(dir / "stats.tsv", "museum\t40\t7\n");
  for (const char* out : {"a", "b"}) {
    const auto r = run({"build-index", "--lexicon", lexicon.string(), "--vocab", vocab.string(),
                        "--stats", stats.string(), "--out", (dir / out).string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  for (const char* file : {"dictionary.tsv", "index.json"}) {
    EXPECT_EQ(testing::read_text(dir / "a" / file), testing::read_text(dir / "b" / file)) << file;
  }
  const std::string dict = testing::read_text(dir / "a" / "dictionary.tsv");
  EXPECT_NE(dict.find("lightroom\t20\t"), std::string::npos);
  EXPECT_NE(dict.find("museum\t1000\t40\t7"), std::string::npos) << dict;
}

TEST(Cli, GenDataTrainCorrectEndToEnd) {
  testing::TempDir dir;
  const auto lexicon = testing::write_text(dir / "lexicon.tsv", toy_lexicon());
  std::string queries = "# queries\n";
  for (const auto& [term, count] : testing::toy_vocabulary()) queries += term + "\n";
  for (int i = 0; i < 3; ++i) queries += queries;
  const auto in = testing::write_text(dir / "queries.txt", queries);
  const auto art = (dir / "art").string();
  ASSERT_EQ(run({"build-index", "--lexicon", lexicon.string(), "--out", art}).code, 0);

  for (const char* name : {"train1.tsv", "train2.tsv"}) {
    const auto r = run({"gen-data", "--in", in.string(), "--out", (dir / name).string(),
                        "--seed", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(testing::read_text(dir / "train1.tsv"), testing::read_text(dir / "train2.tsv"));

  for (const char* name : {"m1.json", "m2.json"}) {
    const auto r = run({"train", "--data", (dir / "train1.tsv").string(), "--dict",
                        art + "/dictionary.tsv", "--out", (dir / name).string(), "--seed", "5",
                        "--epochs", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(testing::read_text(dir / "m1.json"), testing::read_text(dir / "m2.json"));

  auto r = run({"train", "--data", (dir / "train1.tsv").string(), "--artifacts", art,
                "--seed", "5", "--epochs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(testing::read_text(std::filesystem::path(art) / "model.json"),
            testing::read_text(dir / "m1.json"));

  r = run({"correct", "--artifacts", art, "photoshop"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "photoshop\tphotoshop\t1.0000\n");
  EXPECT_EQ(run({"train", "--data", (dir / "train1.tsv").string()}).code, 1);
}

TEST(Cli, RefreshRewritesDictionary) {
  testing::TempDir dir;
  testing::write_toy_artifact_dir(dir.path());
  const auto log = testing::write_text(dir / "log.tsv", "blockchain\t1000\nmuseum\t5\n");
  const auto r = run({"refresh", "--artifacts", dir.path().string(), "--log", log.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string dict = testing::read_text(dir / "dictionary.tsv");
  EXPECT_NE(dict.find("blockchain\t1000"), std::string::npos);
  EXPECT_NE(dict.find("museum\t1005"), std::string::npos);
  const auto c = run({"correct", "--artifacts", dir.path().string(), "blockchian"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out.rfind("blockchian\tblockchain\t", 0), 0u) << c.out;
}

}  // namespace
}  // namespace speller
