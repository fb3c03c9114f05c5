// tests/test_cli.cc

// Copyright 2026 The monoalign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "monoalign/cli.h"
#include "monoalign/io.h"

namespace monoalign {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code;
  std::string out, err;
};

Invocation RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("monoalign_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string Put(const std::string& name, const Matrix& m) {
    const fs::path p = dir / name;
    WriteMatrix(m, p, FormatFromExtension(p));
    return p.string();
  }
  std::string Text(const std::string& name, const std::string& body) {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << body;
    return p.string();
  }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

TEST_CASE("loss subcommand") {
  Workspace ws;
  const std::string soft = ws.Put("soft.npy", Matrix(3, 2, 0.5));
  auto r = RunCli({"loss", "--soft", soft});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["forward_sum"].get<double>() == doctest::Approx(1.3862943611198906));
  CHECK(j["bin"].get<double>() == doctest::Approx(2.0794415416798357));
  CHECK(j["total"].get<double>() == doctest::Approx(3.4657359027997265));

  r = RunCli({"loss", "--soft", soft, "--bin-weight", "0", "--hard-out", ws / "hard.npy"});
  REQUIRE(r.code == cli::kExitOk);
  j = json::parse(r.out);
  CHECK(j["total"].get<double>() == j["forward_sum"].get<double>());
  CHECK(ReadMatrix(ws / "hard.npy").matrix == Matrix{{0, 0, 1}});
}

TEST_CASE("prior subcommand") {
  Workspace ws;
  auto r = RunCli({"prior", "--tokens", "4", "--frames", "1", "--omega", "1", "-o", ws / "p.npy"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(ReadMatrix(ws / "p.npy").matrix == Matrix{{0.25, 0.25, 0.25, 0.25}});
  r = RunCli({"prior", "--tokens", "2", "--frames", "2", "-o", ws / "p.tsv"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(ReadMatrix(ws / "p.tsv").matrix(0, 0) == doctest::Approx(2.0 / 3.0));
  r = RunCli({"prior", "--tokens", "2", "--frames", "2", "--omega", "0", "-o", ws / "bad.npy"});
  CHECK(r.code == cli::kExitUsage);
  CHECK_FALSE(fs::exists(ws / "bad.npy"));
}

TEST_CASE("viterbi, grad and posterior subcommands") {
  Workspace ws;
  const std::string lp = ws.Put("lp.tsv", Matrix{{-0.1, -3}, {-0.2, -1.6}, {-2.3, -0.1}});
  auto r = RunCli({"viterbi", "--logprobs", lp, "-o", ws / "path.tsv"});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["path"] == json::array({0, 0, 1}));
  CHECK(j["score"].get<double>() == doctest::Approx(-0.4));
  CHECK(ReadMatrix(ws / "path.tsv").matrix == Matrix{{0, 0, 1}});

  const std::string uniform = ws.Put("u.npy", Matrix(3, 2, std::log(0.5)));
  r = RunCli({"grad", "--logprobs", uniform, "-o", ws / "g.npy"});
  REQUIRE(r.code == cli::kExitOk);
  const Matrix g = ReadMatrix(ws / "g.npy").matrix;
  const Matrix expected_g{{-1, 0}, {-0.5, -0.5}, {0, -1}};
  for (std::size_t k = 0; k < g.size(); ++k)
    CHECK(g.data()[k] == doctest::Approx(expected_g.data()[k]).epsilon(1e-12));
  CHECK(json::parse(r.out)["forward_sum"].get<double>() == doctest::Approx(std::log(4.0)));

  r = RunCli({"posterior", "--logprobs", uniform, "-o", ws / "post.json"});
  REQUIRE(r.code == cli::kExitOk);
  std::ifstream in(ws / "post.json");
  const json post = json::parse(in);
  CHECK(post["shape"] == json::array({3, 2}));
  CHECK(post["data"][1][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(post["data"][2][1].get<double>() == 1.0);

  r = RunCli({"viterbi", "--logprobs", uniform, "--apply-prior", "--omega", "0.5"});
  CHECK(r.code == cli::kExitOk);
}

TEST_CASE("binarize and durations subcommands") {
  Workspace ws;
  const std::string attn =
      ws.Put("attn.npy", Matrix{{0.9, 0.1}, {0.6, 0.4}, {0.3, 0.7}, {0.2, 0.8}});
  auto r = RunCli({"binarize", "--attn", attn, "-o", ws / "bin.npy"});
  REQUIRE(r.code == cli::kExitOk);
  json j = json::parse(r.out);
  CHECK(j["durations"] == json::array({2, 2}));
  CHECK(j["incomplete_coverage"] == false);

  r = RunCli({"durations", "--path", ws / "bin.npy"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["durations"] == json::array({2, 2}));

  r = RunCli({"durations", "--attn", attn, "--hop-length", "256", "--sample-rate", "22050",
              "-o", ws / "d.npy"});
  REQUIRE(r.code == cli::kExitOk);
  j = json::parse(r.out);
  CHECK(j["seconds"][0].get<double>() == doctest::Approx(2 * 256.0 / 22050.0));
  CHECK(ReadMatrix(ws / "d.npy").matrix == Matrix{{2, 2}});

  const std::string lp = ws.Put("lp.npy", Matrix(5, 3, 0.0));
  r = RunCli({"durations", "--logprobs", lp});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["durations"] == json::array({3, 1, 1}));

  const std::string stalled = ws.Put("stall.npy", Matrix{{0.9, 0.1, 0.0}, {0.8, 0.2, 0.0}});
  r = RunCli({"binarize", "--attn", stalled});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["incomplete_coverage"] == true);
  CHECK(r.err.find("warning") != std::string::npos);

  const std::string bad_path = ws.Put("badpath.npy", Matrix{{0, 1, 0}});
  CHECK(RunCli({"durations", "--path", bad_path}).code == cli::kExitData);
  CHECK(RunCli({"durations"}).code == cli::kExitUsage);
  CHECK(RunCli({"durations", "--path", bad_path, "--attn", attn}).code == cli::kExitUsage);
}

TEST_CASE("mcd and durdist subcommands") {
  Workspace ws;
  std::mt19937_64 rng(61);
  std::normal_distribution<double> normal;
  Matrix mel(6, 20);
  for (double& v : mel.data()) v = normal(rng);
  const std::string a = ws.Put("a.npy", mel);
  auto r = RunCli({"mcd", "--ref", a, "--hyp", a});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["mcd"].get<double>() == 0.0);

  const std::string c1 = ws.Put("c1.tsv", Matrix{{0, 0, 0}});
  const std::string c2 = ws.Put("c2.tsv", Matrix{{0, 1, 0}});
  r = RunCli({"mcd", "--ref", c1, "--hyp", c2, "--input", "cepstrum"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["mcd"].get<double>() == doctest::Approx(6.141851463713754));
  CHECK(RunCli({"mcd", "--ref", c1, "--hyp", c2}).code == cli::kExitData);  // 3 mel < 14

  const std::string p = ws.Put("p.npy", Matrix{{3, 0, 1}});
  const std::string t = ws.Put("t.npy", Matrix{{1, 2, 1}});
  r = RunCli({"durdist", "--pred", p, "--truth", t});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)["duration_l1"].get<double>() == doctest::Approx(4.0 / 3.0));
  const std::string short_t = ws.Put("s.npy", Matrix{{1, 2}});
  CHECK(RunCli({"durdist", "--pred", p, "--truth", short_t}).code == cli::kExitData);
}

TEST_CASE("batch manifests") {
  Workspace ws;
  std::string manifest;
  for (int k = 0; k < 6; ++k) {
    Matrix soft(3 + k, 2, 0.5);
    manifest += ws.Put("s" + std::to_string(k) + ".npy", soft) + "\n";
  }
  const std::string list = ws.Text("list.txt", manifest);
  auto r = RunCli({"loss", "--list", list, "--jobs", "3"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 6);
  for (int k = 0; k < 6; ++k) {
    const double frames = 3 + k;
    // Constant 0.5 entries: loss = frames*log 2 - log(frames - 1).
    CHECK(j[k]["forward_sum"].get<double>() ==
          doctest::Approx(frames * std::log(2.0) - std::log(frames - 1)));
  }
  CHECK(RunCli({"loss", "--list", list}).out == r.out);

  const std::string p = ws.Put("p.npy", Matrix{{2, 2}});
  const std::string t = ws.Put("t.npy", Matrix{{1, 3}});
  const std::string pairs = ws.Text("pairs.txt", p + "\t" + t + "\n" + p + "\t" + p + "\n");
  r = RunCli({"durdist", "--list", pairs});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(json::parse(r.out)[0]["duration_l1"].get<double>() == 1.0);
  CHECK(json::parse(r.out)[1]["duration_l1"].get<double>() == 0.0);

  CHECK(RunCli({"durdist", "--list", list}).code == cli::kExitData);
  CHECK(RunCli({"loss", "--list", list, "--soft", p}).code == cli::kExitUsage);
}

TEST_CASE("heatmap subcommand") {
  Workspace ws;
  const std::string eye = ws.Put("eye.tsv", Matrix{{1, 0}, {0, 1}});
  REQUIRE(RunCli({"heatmap", "--matrix", eye, "-o", ws / "eye.pgm"}).code == cli::kExitOk);
  std::ifstream in(ws / "eye.pgm", std::ios::binary);
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  CHECK(bytes == std::string("P5\n2 2\n255\n\xff\x00\x00\xff", 15));
}

TEST_CASE("exit codes and diagnostics") {
  Workspace ws;
  CHECK(RunCli({}).code == cli::kExitUsage);
  CHECK(RunCli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(RunCli({"viterbi", "--logprobs"}).code == cli::kExitUsage);
  CHECK(RunCli({"--help"}).code == cli::kExitOk);

  const std::string wide = ws.Put("wide.npy", Matrix(2, 3, -1.0));
  auto r = RunCli({"viterbi", "--logprobs", wide});
  CHECK(r.code == cli::kExitData);
  CHECK(r.err == "error: no valid monotonic alignment: T < N\n");

  CHECK(RunCli({"viterbi", "--logprobs", ws / "missing.npy"}).code == cli::kExitData);
  const std::string junk = ws.Text("junk.tsv", "1\tfoo\n");
  r = RunCli({"grad", "--logprobs", junk, "-o", ws / "g.npy"});
  CHECK(r.code == cli::kExitData);
  CHECK(r.err.find("line 1") != std::string::npos);
  CHECK_FALSE(fs::exists(ws / "g.npy"));

  Matrix dead(3, 2, 0.0);
  dead(2, 1) = -std::numeric_limits<double>::infinity();
  const std::string dead_file = ws.Put("dead.npy", dead);
  r = RunCli({"grad", "--logprobs", dead_file, "-o", ws / "g.npy"});
  CHECK(r.code == cli::kExitNumeric);
  CHECK_FALSE(fs::exists(ws / "g.npy"));

  const std::string onehot = ws.Put("oh.npy", Matrix{{1, 0}, {1, 0}, {0, 1}});
  // Zero probability on token 1 at frame 1 still leaves [0,0,1]; fine.
  CHECK(RunCli({"loss", "--soft", onehot}).code == cli::kExitOk);
  const std::string stuck = ws.Put("stuck.npy", Matrix{{1, 0}, {1, 0}, {1, 0}});
  CHECK(RunCli({"loss", "--soft", stuck}).code == cli::kExitNumeric);
}

TEST_CASE("identical invocations produce identical files") {
  Workspace ws;
  const std::string lp = ws.Put("lp.npy", Matrix{{-0.3, -1.2}, {-0.7, -0.7}, {-1.5, -0.2}});
  REQUIRE(RunCli({"posterior", "--logprobs", lp, "-o", ws / "a.npy"}).code == 0);
  REQUIRE(RunCli({"posterior", "--logprobs", lp, "-o", ws / "b.npy"}).code == 0);
  std::ifstream a(ws / "a.npy", std::ios::binary), b(ws / "b.npy", std::ios::binary);
  CHECK(std::string{std::istreambuf_iterator<char>(a), {}} ==
        std::string{std::istreambuf_iterator<char>(b), {}});
}

}  // namespace
}  // namespace monoalign
