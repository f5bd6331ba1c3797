#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace stoptime::cli {

using Json = nlohmann::ordered_json;

/// JSONL writer. Records passed to flag() get "ok": false and mark the run failed.
class Trace {
 public:
  explicit Trace(std::ostream& out) : out_(out) {}
  void emit(const Json& record);
  void flag(Json record);
  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

struct ColorOptions {
  std::string strategy = "rank";
  std::string alice = "climbing";
  std::size_t k = 4;
  std::size_t depth = 12;
  std::size_t episodes = 10;
  std::size_t moves = 64;
  std::uint64_t seed = 0;
};

struct BeatOptions {
  std::string team;
  std::size_t depth = 0;  // 0: the depth the builder needs
  std::size_t max_rounds = 1000;
  std::uint64_t seed = 0;
};

struct AllocOptions {
  std::size_t n = 4;
  std::size_t depth = 16;
  std::string stream = "random";
  std::size_t streams = 1;
  std::size_t spread = 0;    // 0: k + 3, capped by depth
  std::size_t attempts = 0;  // 0: 6n + 6
  std::uint64_t seed = 0;
};

struct AdversaryOptions {
  std::size_t n = 2;
  std::size_t c = 6;
  std::string assigner = "greedy";
  std::uint64_t seed = 0;
};

struct ConvertOptions {
  std::string op;
  std::vector<std::string> inputs;
  std::optional<std::size_t> depth;
  std::string machine = "hashed";
  std::uint64_t param = 0;
  std::size_t fuel = 64;
};

struct OracleOptions {
  std::string mode;
  std::string x;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> horizon;
  bool finite_extensions = false;
  std::optional<std::string> pair_y;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  bool quick = false;
};

void run_color_game(const ColorOptions& o, Trace& trace);
void run_beat_game(const BeatOptions& o, Trace& trace);
void run_alloc_game(const AllocOptions& o, Trace& trace);
void run_alloc_adversary(const AdversaryOptions& o, Trace& trace);
void run_convert(const ConvertOptions& o, std::ostream& out, Trace& trace);
void run_oracle(const OracleOptions& o, Trace& trace);
void run_verify_all(const VerifyOptions& o, Trace& trace);

}  // namespace stoptime::cli
