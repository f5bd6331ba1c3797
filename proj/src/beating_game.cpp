#include "stoptime/beating_game.hpp"

#include <algorithm>

#include "stoptime/config.hpp"
#include "stoptime/errors.hpp"

namespace stoptime {
namespace {

bool has_comparable(const Labeling& labels, const BitString& v) {
  for (const auto& p : path_to_root(v)) {
    if (labels.count(p) != 0) return true;
  }
  auto it = labels.lower_bound(v);
  return it != labels.end() && is_prefix(v, it->first);
}

// Some prefix of `v` (proper if asked) carries `label`.
bool label_on_prefix(const Labeling& labels, const BitString& v, const BitString& label,
                     bool proper) {
  for (const auto& p : path_to_root(v)) {
    if (proper && p == v) continue;
    auto it = labels.find(p);
    if (it != labels.end() && it->second == label) return true;
  }
  return false;
}

std::vector<Emission> builder_placements(const Board& board, std::size_t from) {
  std::vector<Emission> out;
  std::size_t seen = 0;
  for (const auto& m : board.transcript) {
    if (m.actor != kBuilder) continue;
    if (seen++ >= from) out.push_back({m.vertex, m.label});
  }
  return out;
}

std::size_t builder_count(const Board& board) {
  return static_cast<std::size_t>(std::count_if(board.transcript.begin(), board.transcript.end(),
                                                [](const Move& m) { return m.actor == kBuilder; }));
}

class SilentOpponent : public Opponent {
 public:
  std::string name() const override { return "silent"; }
  std::optional<Emission> act(const Board&, std::size_t, Rng&) override { return std::nullopt; }
  bool may_act_later(const Board&) const override { return false; }
};

// Reacts to builder placements in order; subclasses pick the vertex.
class ReactiveOpponent : public Opponent {
 public:
  std::optional<Emission> act(const Board& board, std::size_t self, Rng&) override {
    for (const auto& e : builder_placements(board, cursor_)) {
      ++cursor_;
      if (auto v = answer(board, self, e.vertex)) return Emission{*v, e.label};
    }
    return std::nullopt;
  }
  bool may_act_later(const Board& board) const override { return cursor_ < builder_count(board); }

 protected:
  virtual std::optional<BitString> answer(const Board& board, std::size_t self,
                                          const BitString& v) const = 0;

 private:
  std::size_t cursor_ = 0;
};

class Replicator : public ReactiveOpponent {
 public:
  std::string name() const override { return "replicator"; }

 protected:
  std::optional<BitString> answer(const Board& board, std::size_t self,
                                  const BitString& v) const override {
    if (board.legal_for(self, v)) return v;
    return std::nullopt;
  }
};

class Sniper : public ReactiveOpponent {
 public:
  std::string name() const override { return "sniper"; }

 protected:
  std::optional<BitString> answer(const Board& board, std::size_t self,
                                  const BitString& v) const override {
    for (const auto& p : path_to_root(v)) {
      if (p != v && board.legal_for(self, p)) return p;
    }
    return std::nullopt;
  }
};

class RandomOpponent : public Opponent {
 public:
  explicit RandomOpponent(std::size_t budget) : budget_(budget) {}
  std::string name() const override { return "random"; }

  std::optional<Emission> act(const Board& board, std::size_t self, Rng& rng) override {
    if (budget_ == 0 || !coin(rng, 0.5)) return std::nullopt;
    --budget_;
    const std::size_t len = uniform(rng, 0, board.depth);
    const BitString v = BitString::from_uint(uniform(rng, 0, ~std::uint64_t{0}), len);
    if (!board.legal_for(self, v)) return std::nullopt;
    BitString label = BitString::binary(uniform(rng, 0, 15));
    const auto placed = builder_placements(board, 0);
    if (!placed.empty() && coin(rng, 0.5)) label = placed.back().label;
    return Emission{v, label};
  }
  bool may_act_later(const Board&) const override { return budget_ > 0; }

 private:
  std::size_t budget_;
};

class ScriptedOpponent : public Opponent {
 public:
  explicit ScriptedOpponent(std::vector<Emission> script) : script_(std::move(script)) {}
  std::string name() const override { return "scripted"; }
  std::optional<Emission> act(const Board&, std::size_t, Rng&) override {
    if (pos_ == script_.size()) return std::nullopt;
    return script_[pos_++];
  }
  bool may_act_later(const Board&) const override { return pos_ < script_.size(); }

 private:
  std::vector<Emission> script_;
  std::size_t pos_ = 0;
};

}  // namespace

Labeling prefix_stable_extension(const Labeling& f, std::size_t depth) {
  StringSet domain;
  for (const auto& [u, y] : f) {
    check_vertex(u, depth);
    domain.insert(u);
  }
  if (!check_prefix_free(domain)) throw ConfigError("domain of f is not prefix-free");
  Labeling g;
  for (const auto& [u, y] : f) {
    for (std::size_t len = u.size(); len <= depth; ++len) {
      for (auto& x : extensions_of_length(u, len)) g.emplace(std::move(x), y);
    }
  }
  return g;
}

bool is_prefix_stable(const Labeling& labels) {
  for (const auto& [v, y] : labels) {
    for (const auto& p : path_to_root(v)) {
      auto it = labels.find(p);
      if (it != labels.end() && it->second != y) return false;
    }
  }
  return true;
}

std::vector<BitString> split_subtrees(std::size_t depth) {
  std::vector<BitString> out;
  for (std::size_t j = 0; j + 1 <= depth; ++j) out.push_back(BitString::repeat(true, j).child(false));
  return out;
}

bool Board::legal_for(std::size_t who, const BitString& v) const {
  return v.size() <= depth && !has_comparable(opponents.at(who), v);
}

std::unique_ptr<Opponent> silent_opponent() { return std::make_unique<SilentOpponent>(); }
std::unique_ptr<Opponent> replicator_opponent() { return std::make_unique<Replicator>(); }
std::unique_ptr<Opponent> sniper_opponent() { return std::make_unique<Sniper>(); }
std::unique_ptr<Opponent> random_opponent(std::size_t budget) {
  return std::make_unique<RandomOpponent>(budget);
}
std::unique_ptr<Opponent> scripted_opponent(std::vector<Emission> emissions) {
  return std::make_unique<ScriptedOpponent>(std::move(emissions));
}

std::unique_ptr<Opponent> opponent_by_name(const std::string& name) {
  if (name == "silent") return silent_opponent();
  if (name == "replicator") return replicator_opponent();
  if (name == "sniper") return sniper_opponent();
  if (name == "random") return random_opponent();
  if (name == "illegal") {
    return scripted_opponent({{BitString::parse("1"), BitString::parse("0")},
                              {BitString::parse("11"), BitString::parse("0")}});
  }
  throw ConfigError("unknown opponent: " + name);
}

Builder::Builder(std::size_t team_size, std::size_t depth) : depth_(depth) {
  for (std::size_t j = 0; j <= team_size; ++j) {
    roots_.push_back(BitString::repeat(true, j).child(false));
    Subgame g;
    g.root = roots_.back();
    for (std::size_t o = 0; o < j; ++o) g.team.push_back(o);
    tops_.push_back(nodes_.size());
    nodes_.push_back(std::move(g));
  }
  exhausted_.assign(team_size + 1, false);
}

std::size_t Builder::required_depth(std::size_t i) {
  std::size_t d = i + 1;
  for (std::size_t t = 1; t <= i; ++t) d += spine_length(t);
  return d;
}

std::size_t Builder::leaf(std::size_t node) const {
  while (nodes_[node].child) node = *nodes_[node].child;
  return node;
}

bool Builder::node_secured(const Board& board, const Subgame& g) const {
  if (!g.label) return false;
  return std::all_of(g.team.begin(), g.team.end(), [&](std::size_t o) {
    const Labeling& own = board.opponents[o];
    return has_comparable(own, g.target) && !label_on_prefix(own, g.target, *g.label, false);
  });
}

bool Builder::secured(const Board& board, std::size_t j) const {
  return node_secured(board, nodes_[leaf(tops_[j])]);
}

BitString Builder::fresh_label(const Board& board) {
  auto used = [&](const BitString& y) {
    if (std::any_of(board.builder.begin(), board.builder.end(),
                    [&](const auto& kv) { return kv.second == y; })) {
      return true;
    }
    for (const auto& own : board.opponents) {
      for (const auto& [v, label] : own) {
        if (label == y) return true;
      }
    }
    return false;
  };
  for (;;) {
    BitString y = BitString::binary(counter_++);
    if (!used(y)) return y;
  }
}

std::optional<Move> Builder::advance(const Board& board, std::size_t node) {
  if (!nodes_[node].label) {
    Subgame& g = nodes_[node];
    g.target = g.team.empty() ? g.root
                              : g.root + BitString::repeat(true, spine_length(g.team.size()));
    if (g.target.size() > depth_) {
      throw DepthExhausted("spine vertex at depth " + std::to_string(g.target.size()) +
                           " does not fit depth " + std::to_string(depth_));
    }
    g.label = fresh_label(board);
    return Move{0, kBuilder, g.target, *g.label, "start"};
  }
  if (node_secured(board, nodes_[node])) return std::nullopt;

  const Subgame g = nodes_[node];
  for (std::size_t o : g.team) {
    if (!label_on_prefix(board.opponents[o], g.target, *g.label, true)) continue;
    // That opponent is blocked in the whole subtree of its vertex, which
    // contains the sibling of the target.
    Subgame sub;
    sub.root = g.target.sibling();
    std::copy_if(g.team.begin(), g.team.end(), std::back_inserter(sub.team),
                 [o](std::size_t other) { return other != o; });
    nodes_[node].child = nodes_.size();
    nodes_.push_back(std::move(sub));
    std::optional<Move> m = advance(board, nodes_.size() - 1);
    if (m) m->note = "recurse";
    return m;
  }
  for (std::size_t o : g.team) {
    auto it = board.opponents[o].find(g.target);
    if (it == board.opponents[o].end() || it->second != *g.label) continue;
    if (g.step == g.team.size()) {
      throw InvariantViolation("more replications than opponents on one spine");
    }
    Subgame& live = nodes_[node];
    live.target = live.target.parent();
    ++live.step;
    return Move{0, kBuilder, live.target, *live.label, "climb"};
  }
  return std::nullopt;
}

std::optional<Move> Builder::move(const Board& board) {
  for (std::size_t j = tops_.size(); j-- > 0;) {
    if (exhausted_[j]) continue;
    try {
      if (auto m = advance(board, leaf(tops_[j]))) return m;
    } catch (const DepthExhausted&) {
      exhausted_[j] = true;
    }
  }
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Won:
      return "won";
    case Verdict::Lost:
      return "lost";
    case Verdict::Undecided:
      return "undecided";
    case Verdict::DepthExhausted:
      return "depth-exhausted";
  }
  return "?";
}

namespace {

bool has_unbeaten_label(const Board& board, const BitString& root, std::size_t team) {
  for (const auto& [v, y] : board.builder) {
    if (!is_prefix(root, v)) continue;
    bool beaten = false;
    for (std::size_t o = 0; o < team && !beaten; ++o) {
      beaten = label_on_prefix(board.opponents[o], v, y, false);
    }
    if (!beaten) return true;
  }
  return false;
}

}  // namespace

BeatingResult run_beating_game(std::vector<std::unique_ptr<Opponent>> team, std::size_t depth,
                               std::size_t max_rounds, std::uint64_t seed) {
  check_depth_bound(depth);
  const std::size_t i = team.size();
  BeatingResult result;
  Board& board = result.board;
  board.depth = depth;
  board.opponents.resize(i);
  board.disqualified.assign(i, false);
  std::vector<Rng> rngs;
  for (std::size_t o = 0; o < i; ++o) rngs.emplace_back(derive_seed(seed, o));

  Builder builder(i, depth);
  auto settled = [&] {
    for (std::size_t j = 0; j <= i; ++j) {
      if (!builder.exhausted(j) && !builder.secured(board, j)) return false;
    }
    return true;
  };

  for (std::size_t round = 0; round < max_rounds && !settled(); ++round) {
    result.rounds = round + 1;
    bool acted = false;
    if (auto m = builder.move(board)) {
      m->round = round;
      if (auto it = board.builder.find(m->vertex); it != board.builder.end() && it->second != m->label) {
        throw InvariantViolation("builder relabels \"" + m->vertex.str() + "\"");
      }
      board.builder[m->vertex] = m->label;
      board.transcript.push_back(*m);
      acted = true;
    }
    for (std::size_t o = 0; o < i; ++o) {
      if (board.disqualified[o]) continue;
      auto e = team[o]->act(board, o, rngs[o]);
      if (!e) continue;
      acted = true;
      if (board.legal_for(o, e->vertex)) {
        board.opponents[o].emplace(e->vertex, e->label);
        board.transcript.push_back({round, static_cast<int>(o), e->vertex, e->label, "place"});
      } else {
        board.disqualified[o] = true;
        result.illegal.push_back(o);
        board.transcript.push_back({round, static_cast<int>(o), e->vertex, e->label, "illegal"});
      }
    }
    const bool pending = std::any_of(team.begin(), team.end(), [&](const auto& op) {
      const auto o = static_cast<std::size_t>(&op - team.data());
      return !board.disqualified[o] && op->may_act_later(board);
    });
    if (!acted && !pending) {
      result.quiescent = true;
      break;
    }
  }

  for (std::size_t j = 0; j <= i; ++j) {
    Verdict v = Verdict::Undecided;
    if (builder.exhausted(j)) {
      v = Verdict::DepthExhausted;
    } else if (builder.secured(board, j)) {
      v = Verdict::Won;
    } else if (result.quiescent) {
      v = has_unbeaten_label(board, builder.root(j), j) ? Verdict::Won : Verdict::Lost;
    }
    result.verdicts.push_back(v);
  }
  return result;
}

bool opponents_prefix_free(const Board& board) {
  for (const auto& own : board.opponents) {
    StringSet domain;
    for (const auto& [v, y] : own) domain.insert(v);
    if (!check_prefix_free(domain)) return false;
  }
  return true;
}

}  // namespace stoptime
