#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using stoptime::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

std::vector<nlohmann::json> records(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("verify-all quick run passes with one record per module") {
  const Run r = cli({"verify-all", "--seed", "7", "--quick"});
  CHECK(r.code == 0);
  const auto recs = records(r.out);
  REQUIRE(recs.size() == 8);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(recs[i].contains("module"));
    CHECK(recs[i]["ok"] == true);
  }
}

TEST_CASE("color-game emits one record per episode") {
  const Run r = cli({"color-game", "--strategy", "rank", "--k", "4", "--depth", "12",
                     "--episodes", "100", "--seed", "1"});
  CHECK(r.code == 0);
  std::size_t episodes = 0;
  for (const auto& rec : records(r.out)) {
    if (rec.contains("colors_used")) {
      ++episodes;
      CHECK(rec["ok"] == true);
    }
  }
  CHECK(episodes == 100);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(cli({"color-game", "--k", "0"}).code == 2);
  CHECK(cli({"color-game", "--strategy", "nope"}).code == 2);
  CHECK(cli({"alloc-game", "--n", "3"}).code == 2);
  CHECK(cli({"alloc-adversary", "--n", "5"}).code == 2);
  CHECK(cli({"alloc-adversary", "--assigner", fixture("malformed_assigner.txt")}).code == 2);
  CHECK(cli({"convert", "--op", "script-to-machine", "--in",
             fixture("non_prefix_free_script.txt")}).code == 2);
  CHECK(cli({"convert", "--op", "trim", "--in", "missing.txt"}).code == 2);
  CHECK(cli({"beat-game", "--team", "nobody"}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({}).code == 2);
}

TEST_CASE("help exits with 0") { CHECK(cli({"--help"}).code == 0); }

TEST_CASE("invariant violations exit with 1 and flag the record") {
  const Run validate = cli({"convert", "--op", "validate", "--in", fixture("invalid_mode.txt")});
  CHECK(validate.code == 1);
  CHECK(records(validate.out).front()["ok"] == false);
  CHECK(cli({"oracle", "--mode", fixture("invalid_mode.txt"), "--x", "1"}).code == 1);
  const Run over = cli({"alloc-game", "--n", "1", "--stream", fixture("over_budget_stream.txt")});
  CHECK(over.code == 1);
  CHECK(over.out.find("\"over_budget\":true") != std::string::npos);
  CHECK(cli({"beat-game", "--team", "illegal"}).code == 1);
}

TEST_CASE("successful runs of each subcommand") {
  CHECK(cli({"beat-game", "--team", "replicator,sniper"}).code == 0);
  CHECK(cli({"alloc-game", "--n", "2", "--stream", fixture("legal_stream.txt")}).code == 0);
  CHECK(cli({"alloc-game", "--n", "4", "--streams", "5"}).code == 0);
  const Run adv = cli({"alloc-adversary", "--n", "3", "--assigner", "always-serve"});
  CHECK(adv.code == 0);
  CHECK(records(adv.out).back()["pigeonhole_stages"].get<int>() >= 1);
  const Run orc = cli({"oracle", "--mode", fixture("valid_mode.txt"), "--x", "0",
                       "--finite-extensions", "--pair-y", "0"});
  CHECK(orc.code == 0);
  const auto rec = records(orc.out).back();
  CHECK(rec["S"] == 0);
  CHECK(rec["C"] == 0);
  CHECK(rec["inequality"] == true);
}

TEST_CASE("convert operations") {
  const Run trim = cli({"convert", "--op", "trim", "--in", fixture("invalid_mode.txt")});
  CHECK(trim.code == 0);
  CHECK(trim.out == "0\t1\t11\n");
  const Run join = cli({"convert", "--op", "join", "--in", fixture("second_mode.txt"), "--in",
                        fixture("second_mode.txt")});
  CHECK(join.out == "011\t-\t1\n11\t-\t1\n");
  const Run script = cli({"convert", "--op", "script-to-machine", "--in",
                          fixture("prefix_free_script.txt"), "--depth", "4"});
  CHECK(script.code == 0);
  CHECK(script.out == "00\n01\n1\n");
  const Run machine = cli({"convert", "--op", "machine-to-script", "--machine", "reads",
                           "--param", "1", "--depth", "3"});
  CHECK(machine.out == "0\n1\n");
  CHECK(cli({"convert", "--op", "families", "--in", fixture("valid_mode.txt")}).code == 0);
  CHECK(cli({"convert", "--op", "to-length", "--in", fixture("valid_mode.txt")}).code == 0);
  CHECK(cli({"convert", "--op", "closure", "--in", fixture("valid_mode.txt"), "--depth", "3"})
            .code == 0);
}

TEST_CASE("identical configurations give identical traces") {
  const auto args = std::vector<std::string>{"color-game", "--alice", "random", "--seed", "5"};
  CHECK(cli(args).out == cli(args).out);
  CHECK(cli({"verify-all", "--seed", "3"}).out == cli({"verify-all", "--seed", "3"}).out);
}
