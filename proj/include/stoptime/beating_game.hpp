#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stoptime/bitstring.hpp"
#include "stoptime/random.hpp"

namespace stoptime {

/// Partial map vertex -> label.
using Labeling = std::map<BitString, BitString>;

/// g(x) = y iff f(u) = y for some prefix u of x, over all |x| <= depth.
/// Throws ConfigError if the domain of f is not prefix-free.
Labeling prefix_stable_extension(const Labeling& f, std::size_t depth);

/// Compatible labeled vertices carry equal labels.
bool is_prefix_stable(const Labeling& labels);

/// Roots 1^j 0 of the subtrees reserved for the teams of size j.
std::vector<BitString> split_subtrees(std::size_t depth);

inline constexpr int kBuilder = -1;

/// One accepted or rejected placement.
struct Move {
  std::size_t round = 0;
  int actor = kBuilder;  // opponent index, or kBuilder
  BitString vertex;
  BitString label;
  std::string note;  // builder: start/climb/recurse; opponent: place/illegal
};

/// Public state of a game: every move so far plus each opponent's accepted labels.
struct Board {
  std::size_t depth = 0;
  std::vector<Move> transcript;
  Labeling builder;
  std::vector<Labeling> opponents;
  std::vector<bool> disqualified;

  /// Whether opponent `who` may place at `v` without breaking prefix-freeness.
  bool legal_for(std::size_t who, const BitString& v) const;
};

struct Emission {
  BitString vertex;
  BitString label;
};

/// A prefix-free opponent. Polled once per round; at most one emission each time.
class Opponent {
 public:
  virtual ~Opponent() = default;
  virtual std::string name() const = 0;
  virtual std::optional<Emission> act(const Board& board, std::size_t self, Rng& rng) = 0;
  /// False once the opponent has nothing left to react to.
  virtual bool may_act_later(const Board& board) const = 0;
};

std::unique_ptr<Opponent> silent_opponent();
/// Copies every builder placement at the same vertex whenever that is legal.
std::unique_ptr<Opponent> replicator_opponent();
/// Answers every builder placement at the nearest legal proper prefix.
std::unique_ptr<Opponent> sniper_opponent();
/// Random legal placements, `budget` attempts in total.
std::unique_ptr<Opponent> random_opponent(std::size_t budget = 6);
/// Replays fixed emissions, one per round, legal or not.
std::unique_ptr<Opponent> scripted_opponent(std::vector<Emission> emissions);
/// "silent", "replicator", "sniper", "random", or "illegal" (a scripted
/// opponent that places at two comparable vertices).
std::unique_ptr<Opponent> opponent_by_name(const std::string& name);

/// The builder's strategy. Each team prefix of size j gets its own subtree
/// 1^j 0. Inside it the builder climbs a spine while the team replicates its
/// label, and recurses into the sibling of the current target against one
/// opponent fewer when someone places the label at a proper prefix.
class Builder {
 public:
  Builder(std::size_t team_size, std::size_t depth);

  /// The next placement, or nothing to wait. Throws DepthExhausted if a
  /// spine does not fit. Mutates the strategy state.
  std::optional<Move> move(const Board& board);

  /// The current target in the subtree of team size j cannot be beaten anymore.
  bool secured(const Board& board, std::size_t j) const;

  /// The subtree of team size j ran out of depth.
  bool exhausted(std::size_t j) const { return exhausted_[j]; }

  std::size_t team_size() const { return roots_.size() - 1; }
  const BitString& root(std::size_t j) const { return roots_[j]; }

  /// Spine length used against a team of size t.
  static std::size_t spine_length(std::size_t t) { return t + 2; }

  /// Depth that always suffices for a team of size i.
  static std::size_t required_depth(std::size_t i);

 private:
  struct Subgame {
    BitString root;
    std::vector<std::size_t> team;
    std::optional<BitString> label;
    BitString target;
    std::size_t step = 0;
    std::optional<std::size_t> child;
  };

  std::size_t leaf(std::size_t node) const;
  bool node_secured(const Board& board, const Subgame& g) const;
  BitString fresh_label(const Board& board);
  std::optional<Move> advance(const Board& board, std::size_t node);

  std::size_t depth_;
  std::vector<BitString> roots_;
  std::vector<std::size_t> tops_;  // node index per team size
  std::vector<Subgame> nodes_;
  std::vector<bool> exhausted_;
  std::uint64_t counter_ = 0;
};

enum class Verdict { Won, Lost, Undecided, DepthExhausted };
std::string to_string(Verdict v);

struct BeatingResult {
  Board board;
  std::vector<Verdict> verdicts;  // per team prefix size 0..i
  std::size_t rounds = 0;
  bool quiescent = false;
  std::vector<std::size_t> illegal;  // disqualified opponents
  Verdict verdict() const { return verdicts.back(); }
};

/// Plays the builder against the whole team for at most `max_rounds`
/// rounds. Each round the builder moves once, then every opponent is polled
/// in order. An illegal emission is rejected and disqualifies its opponent.
BeatingResult run_beating_game(std::vector<std::unique_ptr<Opponent>> team, std::size_t depth,
                               std::size_t max_rounds, std::uint64_t seed);

/// At most one emission per opponent on every path.
bool opponents_prefix_free(const Board& board);

}  // namespace stoptime
